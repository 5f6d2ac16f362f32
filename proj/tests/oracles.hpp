#pragma once

// Reference implementations used only by tests. None of them call into the
// solver paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "tauber/hidden_game.hpp"
#include "tauber/stochastic_game.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<long double>>;

// Solves A z = b by Gaussian elimination with partial pivoting; nullopt if singular.
inline std::optional<std::vector<long double>> solve_linear(Matrix a, std::vector<long double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    }
    if (std::fabs(a[piv][c]) < 1e-14L) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<long double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = b[i] / a[i][i];
  return z;
}

struct SupportSolution {
  double value;
  std::vector<double> row;
  std::vector<double> col;
};

// Matrix game value by support enumeration: for each pair of equal-size
// supports, solve the indifference system and keep the first pair whose
// strategies are feasible and mutually optimal.
inline std::optional<SupportSolution> support_enumeration(const std::vector<std::vector<double>>& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  const long double eps = 1e-10L;
  for (std::size_t size = 1; size <= std::min(rows, cols); ++size) {
    for (std::uint32_t rmask = 1; rmask < (1u << rows); ++rmask) {
      if (static_cast<std::size_t>(__builtin_popcount(rmask)) != size) continue;
      for (std::uint32_t cmask = 1; cmask < (1u << cols); ++cmask) {
        if (static_cast<std::size_t>(__builtin_popcount(cmask)) != size) continue;
        std::vector<std::size_t> rs, cs;
        for (std::size_t i = 0; i < rows; ++i) if (rmask & (1u << i)) rs.push_back(i);
        for (std::size_t j = 0; j < cols; ++j) if (cmask & (1u << j)) cs.push_back(j);
        // Unknowns (x_S, v): Σ_i x_i m[i][j] − v = 0 for j ∈ T, Σ x = 1.
        Matrix a(size + 1, std::vector<long double>(size + 1, 0.0L));
        std::vector<long double> b(size + 1, 0.0L);
        for (std::size_t e = 0; e < size; ++e) {
          for (std::size_t u = 0; u < size; ++u) a[e][u] = m[rs[u]][cs[e]];
          a[e][size] = -1.0L;
        }
        for (std::size_t u = 0; u < size; ++u) a[size][u] = 1.0L;
        b[size] = 1.0L;
        auto xs = solve_linear(a, b);
        if (!xs) continue;
        Matrix a2(size + 1, std::vector<long double>(size + 1, 0.0L));
        for (std::size_t e = 0; e < size; ++e) {
          for (std::size_t u = 0; u < size; ++u) a2[e][u] = m[rs[e]][cs[u]];
          a2[e][size] = -1.0L;
        }
        for (std::size_t u = 0; u < size; ++u) a2[size][u] = 1.0L;
        auto ys = solve_linear(a2, b);
        if (!ys) continue;
        std::vector<double> x(rows, 0.0), y(cols, 0.0);
        bool ok = true;
        for (std::size_t u = 0; u < size; ++u) {
          if ((*xs)[u] < -eps || (*ys)[u] < -eps) ok = false;
          x[rs[u]] = static_cast<double>((*xs)[u]);
          y[cs[u]] = static_cast<double>((*ys)[u]);
        }
        if (!ok) continue;
        const long double v = (*xs)[size];
        for (std::size_t j = 0; j < cols && ok; ++j) {
          long double acc = 0;
          for (std::size_t i = 0; i < rows; ++i) acc += x[i] * m[i][j];
          if (acc < v - 1e-9L) ok = false;
        }
        for (std::size_t i = 0; i < rows && ok; ++i) {
          long double acc = 0;
          for (std::size_t j = 0; j < cols; ++j) acc += m[i][j] * y[j];
          if (acc > v + 1e-9L) ok = false;
        }
        if (ok) return SupportSolution{static_cast<double>(v), x, y};
      }
    }
  }
  return std::nullopt;
}

inline double matrix_value(const std::vector<std::vector<double>>& m) {
  auto s = support_enumeration(m);
  if (!s) throw std::runtime_error("support enumeration found no equilibrium");
  return s->value;
}

// g + P g + ... + P^{n-1} g + P^n f via explicit matrix powers.
inline std::vector<double> affine_iterate(const std::vector<double>& g, const std::vector<double>& p,
                                          const std::vector<double>& f, std::size_t n) {
  const std::size_t d = g.size();
  auto matmul = [d](const std::vector<long double>& a, const std::vector<long double>& b) {
    std::vector<long double> c(d * d, 0.0L);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j) c[i * d + j] += a[i * d + k] * b[k * d + j];
    return c;
  };
  std::vector<long double> power(d * d, 0.0L);
  for (std::size_t i = 0; i < d; ++i) power[i * d + i] = 1.0L;
  const std::vector<long double> pl(p.begin(), p.end());
  std::vector<long double> out(d, 0.0L);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out[i] += power[i * d + j] * g[j];
    power = matmul(power, pl);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i] += power[i * d + j] * f[j];
  return {out.begin(), out.end()};
}

// n-stage value of a one-player game (actions2 = 1 everywhere) by expanding
// the full tree of deterministic action sequences with exact expectations.
inline std::vector<double> mdp_n_stage_bruteforce(const tauber::FiniteGame& game, std::size_t n) {
  std::function<double(std::size_t, std::size_t)> best = [&](std::size_t k, std::size_t left) -> double {
    if (left == 0) return 0.0;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < game.actions1[k]; ++i) {
      double total = game.payoff_at(k, i, 0);
      const double* q = game.next_state_law(k, i, 0);
      for (std::size_t l = 0; l < game.num_states; ++l) {
        if (q[l] > 0.0) total += q[l] * best(l, left - 1);
      }
      top = std::max(top, total);
    }
    return top;
  };
  std::vector<double> out(game.num_states);
  for (std::size_t k = 0; k < game.num_states; ++k) out[k] = best(k, n) / static_cast<double>(n);
  return out;
}

// Discounted payoff of fixed stationary mixed strategies: v = (I − (1−λ)Q)⁻¹ λ g.
inline std::vector<double> stationary_payoff(const tauber::FiniteGame& game, double lambda,
                                             const std::vector<std::vector<double>>& x,
                                             const std::vector<std::vector<double>>& y) {
  const std::size_t k_n = game.num_states;
  Matrix a(k_n, std::vector<long double>(k_n, 0.0L));
  std::vector<long double> b(k_n, 0.0L);
  for (std::size_t k = 0; k < k_n; ++k) {
    a[k][k] = 1.0L;
    for (std::size_t i = 0; i < game.actions1[k]; ++i) {
      for (std::size_t j = 0; j < game.actions2[k]; ++j) {
        const long double w = static_cast<long double>(x[k][i]) * y[k][j];
        b[k] += lambda * w * game.payoff_at(k, i, j);
        const double* q = game.next_state_law(k, i, j);
        for (std::size_t l = 0; l < k_n; ++l) a[k][l] -= (1.0L - lambda) * w * q[l];
      }
    }
  }
  auto v = solve_linear(a, b);
  return {v->begin(), v->end()};
}

// Enumerates all pure stationary strategies of one player.
inline void for_each_pure(const std::vector<std::size_t>& counts,
                          const std::function<void(const std::vector<std::vector<double>>&)>& fn) {
  std::vector<std::size_t> pick(counts.size(), 0);
  while (true) {
    std::vector<std::vector<double>> s(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
      s[k].assign(counts[k], 0.0);
      s[k][pick[k]] = 1.0;
    }
    fn(s);
    std::size_t k = 0;
    while (k < counts.size() && ++pick[k] == counts[k]) pick[k++] = 0;
    if (k == counts.size()) return;
  }
}

struct Bracket {
  std::vector<double> lower;  // guaranteed by Player 1's stationary strategy
  std::vector<double> upper;  // guaranteed by Player 2's stationary strategy
};

// Certified bracket on v_λ: value-iterate with the support-enumeration solver,
// read off stationary strategies from the final stage games, and evaluate each
// against every pure stationary reply of the opponent.
inline Bracket stationary_bracket(const tauber::FiniteGame& game, double lambda) {
  const std::size_t k_n = game.num_states;
  std::vector<double> v(k_n, 0.0);
  std::vector<std::vector<double>> x(k_n), y(k_n);
  auto stage = [&](std::size_t k, const std::vector<double>& cont) {
    std::vector<std::vector<double>> m(game.actions1[k], std::vector<double>(game.actions2[k]));
    for (std::size_t i = 0; i < game.actions1[k]; ++i)
      for (std::size_t j = 0; j < game.actions2[k]; ++j) {
        const double* q = game.next_state_law(k, i, j);
        double c = 0.0;
        for (std::size_t l = 0; l < k_n; ++l) c += q[l] * cont[l];
        m[i][j] = lambda * game.payoff_at(k, i, j) + (1.0 - lambda) * c;
      }
    return m;
  };
  for (int it = 0; it < 200000; ++it) {
    std::vector<double> next(k_n);
    double diff = 0.0;
    for (std::size_t k = 0; k < k_n; ++k) {
      next[k] = matrix_value(stage(k, v));
      diff = std::max(diff, std::abs(next[k] - v[k]));
    }
    v = next;
    if (diff * (1.0 - lambda) / lambda < 1e-13) break;
  }
  for (std::size_t k = 0; k < k_n; ++k) {
    auto s = support_enumeration(stage(k, v));
    x[k] = s->row;
    y[k] = s->col;
  }
  Bracket out{std::vector<double>(k_n, std::numeric_limits<double>::infinity()),
              std::vector<double>(k_n, -std::numeric_limits<double>::infinity())};
  for_each_pure(game.actions2, [&](const auto& pure_y) {
    const auto w = stationary_payoff(game, lambda, x, pure_y);
    for (std::size_t k = 0; k < k_n; ++k) out.lower[k] = std::min(out.lower[k], w[k]);
  });
  for_each_pure(game.actions1, [&](const auto& pure_x) {
    const auto w = stationary_payoff(game, lambda, pure_x, y);
    for (std::size_t k = 0; k < k_n; ++k) out.upper[k] = std::max(out.upper[k], w[k]);
  });
  return out;
}

// f_λ(n) straight from the closed form in long double (no log-space tricks).
inline long double f_naive(long long n, long double lambda) {
  const long double num = (1.0L - std::pow(2.0L, -static_cast<long double>(n))) * (1.0L - lambda * lambda);
  const long double den = 1.0L + std::pow(2.0L, static_cast<long double>(n + 1)) * lambda *
                                     std::pow(1.0L - lambda, -static_cast<long double>(n)) - lambda;
  return num / den;
}

inline long long argmax_naive(long double lambda, long long first, long long step, long long limit) {
  long long best = first;
  long double top = f_naive(first, lambda);
  for (long long n = first + step; n <= limit; n += step) {
    const long double v = f_naive(n, lambda);
    if (v > top) {
      top = v;
      best = n;
    }
  }
  return best;
}

// Two-state, one-player, single-signal hidden game: value iteration on
// p = P(state 0) ∈ {0, 1/d, ..., 1} with linear interpolation between
// neighbouring points. Entry m is the value at p = m/d.
inline std::vector<double> blind_mdp_values(const tauber::HiddenGameSpec& s, std::size_t d, double lambda,
                                            double tol) {
  const tauber::FiniteGame g = s.transition_marginal();
  auto interp = [d](const std::vector<double>& f, double p) {
    const double x = std::clamp(p * static_cast<double>(d), 0.0, static_cast<double>(d));
    const auto lo = static_cast<std::size_t>(std::min(std::floor(x), static_cast<double>(d) - 1.0));
    const double t = x - static_cast<double>(lo);
    return (1 - t) * f[lo] + t * f[lo + 1];
  };
  std::vector<double> w(d + 1, 0.0);
  for (int it = 0; it < 10'000'000; ++it) {
    std::vector<double> next(d + 1);
    double diff = 0.0;
    for (std::size_t m = 0; m <= d; ++m) {
      const double p = static_cast<double>(m) / static_cast<double>(d);
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < s.actions1; ++i) {
        const double stage = p * g.payoff_at(0, i, 0) + (1 - p) * g.payoff_at(1, i, 0);
        const double next_p = p * g.next_state_law(0, i, 0)[0] + (1 - p) * g.next_state_law(1, i, 0)[0];
        best = std::max(best, lambda * stage + (1 - lambda) * interp(w, next_p));
      }
      next[m] = best;
      diff = std::max(diff, std::abs(best - w[m]));
    }
    w = next;
    if (diff * (1 - lambda) / lambda <= tol) break;
  }
  return w;
}

}  // namespace oracle
