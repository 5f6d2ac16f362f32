#include "tauber/hidden_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

#include "tauber/errors.hpp"
#include "tauber/matrix_game.hpp"

namespace tauber {

double HiddenGameSpec::payoff_bound() const {
  double m = 0.0;
  for (const auto& stage : payoff) {
    for (double x : stage) m = std::max(m, std::abs(x));
  }
  return m;
}

void HiddenGameSpec::validate(double tol) const {
  if (num_states == 0 || actions1 == 0 || actions2 == 0 || num_signals == 0) {
    throw InputError("hidden game needs states, actions and signals");
  }
  if (payoff.size() != num_states || kernel.size() != num_states) {
    throw InputError("hidden game arrays must have one entry per state");
  }
  const std::size_t pairs = actions1 * actions2;
  const std::size_t block = num_states * num_signals;
  for (std::size_t k = 0; k < num_states; ++k) {
    const std::string where = "state " + std::to_string(k);
    if (payoff[k].size() != pairs) throw InputError(where + ": payoff has wrong size");
    if (kernel[k].size() != pairs * block) throw InputError(where + ": kernel has wrong size");
    for (double x : payoff[k]) {
      if (!std::isfinite(x)) throw InputError(where + ": payoff not finite");
    }
    for (std::size_t p = 0; p < pairs; ++p) {
      double total = 0.0;
      for (std::size_t c = 0; c < block; ++c) {
        const double q = kernel[k][p * block + c];
        if (!(q >= 0.0) || !std::isfinite(q)) {
          throw InputError(where + ": negative or non-finite kernel entry");
        }
        total += q;
      }
      if (std::abs(total - 1.0) > tol) {
        throw InputError(where + ": kernel row sums to " + std::to_string(total));
      }
    }
  }
}

FiniteGame HiddenGameSpec::transition_marginal() const {
  validate();
  FiniteGame game;
  game.num_states = num_states;
  game.actions1.assign(num_states, actions1);
  game.actions2.assign(num_states, actions2);
  game.payoff = payoff;
  game.state_names = state_names;
  for (std::size_t k = 0; k < num_states; ++k) {
    std::vector<double> rows(actions1 * actions2 * num_states, 0.0);
    for (std::size_t i = 0; i < actions1; ++i) {
      for (std::size_t j = 0; j < actions2; ++j) {
        for (std::size_t next = 0; next < num_states; ++next) {
          double q = 0.0;
          for (std::size_t a = 0; a < num_signals; ++a) q += joint(k, i, j, next, a);
          rows[(i * actions2 + j) * num_states + next] = q;
        }
      }
    }
    game.transition.push_back(std::move(rows));
  }
  return game;
}

namespace {

void require_belief(const BeliefPoint& p, std::size_t num_states) {
  if (p.size() != num_states) throw InputError("belief has wrong dimension");
  double total = 0.0;
  for (double x : p) {
    if (!(x >= -1e-12) || !std::isfinite(x)) throw InputError("belief has a negative entry");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("belief does not sum to 1");
}

}  // namespace

BeliefUpdate belief_update(const HiddenGameSpec& spec, const BeliefPoint& prior, std::size_t i,
                           std::size_t j, std::size_t a) {
  require_belief(prior, spec.num_states);
  if (i >= spec.actions1 || j >= spec.actions2 || a >= spec.num_signals) {
    throw InputError("belief_update: action or signal out of range");
  }
  BeliefPoint unnormalized(spec.num_states, 0.0);
  for (std::size_t k = 0; k < spec.num_states; ++k) {
    if (prior[k] <= 0.0) continue;
    for (std::size_t next = 0; next < spec.num_states; ++next) {
      unnormalized[next] += prior[k] * spec.joint(k, i, j, next, a);
    }
  }
  BeliefUpdate out;
  out.signal_probability = std::accumulate(unnormalized.begin(), unnormalized.end(), 0.0);
  if (out.defined()) {
    for (double& x : unnormalized) x /= out.signal_probability;
    out.posterior = std::move(unnormalized);
  }
  return out;
}

BeliefGrid::BeliefGrid(std::size_t num_states, std::size_t resolution)
    : num_states_(num_states), resolution_(resolution) {
  if (num_states_ == 0) throw InputError("belief grid needs at least one state");
  if (resolution_ == 0) throw InputError("belief grid resolution must be positive");

  // Mixed-radix key over the first K−1 counts (the last is implied).
  stride_.assign(num_states_, 0);
  std::size_t key_space = 1;
  for (std::size_t k = 0; k + 1 < num_states_; ++k) {
    stride_[k] = key_space;
    key_space *= resolution_ + 1;
  }
  lookup_.assign(key_space, std::numeric_limits<std::size_t>::max());

  std::vector<int> current(num_states_, 0);
  auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == num_states_) {
      current[pos] = remaining;
      lookup_[encode(current)] = nodes_.size();
      nodes_.push_back(current);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      current[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  recurse(recurse, 0, static_cast<int>(resolution_));
}

std::size_t BeliefGrid::encode(const std::vector<int>& counts) const {
  std::size_t key = 0;
  for (std::size_t k = 0; k + 1 < num_states_; ++k) {
    key += static_cast<std::size_t>(counts[k]) * stride_[k];
  }
  return key;
}

BeliefPoint BeliefGrid::point(std::size_t node) const {
  BeliefPoint p(num_states_);
  for (std::size_t k = 0; k < num_states_; ++k) {
    p[k] = static_cast<double>(nodes_[node][k]) / static_cast<double>(resolution_);
  }
  return p;
}

std::size_t BeliefGrid::index_of(const std::vector<int>& counts) const {
  if (counts.size() != num_states_) throw InputError("grid node has wrong dimension");
  int total = 0;
  for (int c : counts) {
    if (c < 0) throw InputError("grid node has a negative count");
    total += c;
  }
  if (total != static_cast<int>(resolution_)) throw InputError("grid node counts must sum to d");
  return lookup_[encode(counts)];
}

std::size_t BeliefGrid::vertex(std::size_t k) const {
  std::vector<int> counts(num_states_, 0);
  counts.at(k) = static_cast<int>(resolution_);
  return index_of(counts);
}

std::vector<std::pair<std::size_t, double>> BeliefGrid::interpolate(const BeliefPoint& p) const {
  require_belief(p, num_states_);
  const std::size_t dims = num_states_ - 1;
  if (dims == 0) return {{0, 1.0}};

  // Suffix sums x_m = d Σ_{k≥m} p_k, m = 1..K−1, form a nonincreasing vector in
  // [0, d]; the Freudenthal triangulation lives in these coordinates.
  const double d = static_cast<double>(resolution_);
  double total = 0.0;
  for (double x : p) total += std::max(0.0, x);
  std::vector<double> x(dims);
  double suffix = 0.0;
  for (std::size_t m = num_states_ - 1; m >= 1; --m) {
    suffix += std::max(0.0, p[m]) / total;
    double coord = std::clamp(d * suffix, 0.0, d);
    if (std::abs(coord - std::round(coord)) <= 1e-12 * d) coord = std::round(coord);
    x[m - 1] = coord;
  }
  std::vector<int> base(dims);
  std::vector<double> frac(dims);
  for (std::size_t m = 0; m < dims; ++m) {
    const double fl = std::floor(x[m]);
    base[m] = static_cast<int>(fl);
    frac[m] = x[m] - fl;
    if (base[m] == static_cast<int>(resolution_)) {
      frac[m] = 0.0;
    }
  }
  for (std::size_t m = 1; m < dims; ++m) {
    // Rounding can break monotonicity of the floors only when fractions tie; clamp.
    base[m] = std::min(base[m], base[m - 1]);
  }
  std::vector<std::size_t> order(dims);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });

  auto to_counts = [&](const std::vector<int>& cumulative) {
    std::vector<int> counts(num_states_);
    int above = static_cast<int>(resolution_);
    for (std::size_t m = 0; m < dims; ++m) {
      counts[m] = above - cumulative[m];
      above = cumulative[m];
    }
    counts[dims] = above;
    return counts;
  };

  std::vector<std::pair<std::size_t, double>> weights;
  weights.reserve(num_states_);
  std::vector<int> corner = base;
  double previous = 1.0;
  for (std::size_t step = 0; step <= dims; ++step) {
    const double next = step < dims ? frac[order[step]] : 0.0;
    const double w = previous - next;
    if (w > 0.0) weights.emplace_back(index_of(to_counts(corner)), w);
    if (step < dims) {
      previous = next;
      if (next > 0.0) corner[order[step]] += 1;
    }
  }
  return weights;
}

double BeliefGrid::evaluate(const std::vector<double>& values, const BeliefPoint& p) const {
  if (values.size() != size()) throw InputError("grid values have wrong size");
  double acc = 0.0;
  for (const auto& [node, w] : interpolate(p)) acc += w * values[node];
  return acc;
}

namespace {

// One action pair at one node: stage payoff plus a sparse law over grid nodes.
struct NodeAction {
  double stage = 0.0;
  std::vector<std::pair<std::size_t, double>> next;
};

}  // namespace

Operator belief_shapley_operator(const HiddenGameSpec& spec, const BeliefGrid& grid, double tol) {
  spec.validate();
  if (grid.num_states() != spec.num_states) {
    throw InputError("belief grid dimension does not match the game");
  }
  const std::size_t nodes = grid.size();
  const std::size_t pairs = spec.actions1 * spec.actions2;

  auto table = std::make_shared<std::vector<NodeAction>>(nodes * pairs);
  std::vector<double> scratch(nodes, 0.0);
  for (std::size_t node = 0; node < nodes; ++node) {
    const BeliefPoint p = grid.point(node);
    for (std::size_t i = 0; i < spec.actions1; ++i) {
      for (std::size_t j = 0; j < spec.actions2; ++j) {
        NodeAction& entry = (*table)[node * pairs + i * spec.actions2 + j];
        for (std::size_t k = 0; k < spec.num_states; ++k) {
          entry.stage += p[k] * spec.payoff_at(k, i, j);
        }
        std::vector<std::size_t> touched;
        for (std::size_t a = 0; a < spec.num_signals; ++a) {
          const BeliefUpdate update = belief_update(spec, p, i, j, a);
          if (!update.defined()) continue;
          for (const auto& [target, w] : grid.interpolate(update.posterior)) {
            if (scratch[target] == 0.0) touched.push_back(target);
            scratch[target] += update.signal_probability * w;
          }
        }
        std::sort(touched.begin(), touched.end());
        double total = 0.0;
        for (std::size_t target : touched) total += scratch[target];
        for (std::size_t target : touched) {
          entry.next.emplace_back(target, scratch[target] / total);
          scratch[target] = 0.0;
        }
      }
    }
  }

  const std::size_t rows = spec.actions1;
  const std::size_t cols = spec.actions2;
  const double bound = spec.payoff_bound();
  return Operator(
      nodes,
      [table, nodes, pairs, rows, cols, tol](const ValueVector& f) {
        std::vector<double> out(nodes);
        std::vector<double> aux(pairs);
        for (std::size_t node = 0; node < nodes; ++node) {
          for (std::size_t p = 0; p < pairs; ++p) {
            const NodeAction& entry = (*table)[node * pairs + p];
            double acc = entry.stage;
            for (const auto& [target, w] : entry.next) acc += w * f[target];
            aux[p] = acc;
          }
          try {
            out[node] = matrix_game_value(MatrixGame(rows, cols, aux), tol);
          } catch (const SolverError& e) {
            throw SolverError("belief node " + std::to_string(node) + ": " + e.what());
          }
        }
        return ValueVector(std::move(out));
      },
      bound, bound, "belief-shapley");
}

GameValues hidden_values(const HiddenGameSpec& spec, const BeliefGrid& grid, std::size_t n,
                         double lambda, double tol) {
  const Operator op = belief_shapley_operator(spec, grid, tol);
  return GameValues{n_stage_value(op, n), discounted_value(op, lambda, {tol}).value};
}

double lipschitz_check(const BeliefGrid& grid, const std::vector<double>& values) {
  if (values.size() != grid.size()) throw InputError("lipschitz_check: values have wrong size");
  const double step = 2.0 / static_cast<double>(grid.resolution());
  double slope = 0.0;
  std::vector<int> neighbour;
  for (std::size_t node = 0; node < grid.size(); ++node) {
    const std::vector<int>& counts = grid.counts(node);
    for (std::size_t from = 0; from < counts.size(); ++from) {
      if (counts[from] == 0) continue;
      for (std::size_t to = from + 1; to < counts.size(); ++to) {
        neighbour = counts;
        neighbour[from] -= 1;
        neighbour[to] += 1;
        const std::size_t other = grid.index_of(neighbour);
        slope = std::max(slope, std::abs(values[node] - values[other]) / step);
      }
    }
  }
  return slope;
}

}  // namespace tauber
