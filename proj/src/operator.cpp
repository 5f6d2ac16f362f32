#include "tauber/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tauber/errors.hpp"

namespace tauber {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InputError("discount factor must lie in (0, 1], got " + std::to_string(lambda));
  }
}

}  // namespace

Operator::Operator(std::size_t dim, Map map, double assumption_constant, double payoff_bound,
                   std::string name)
    : dim_(dim),
      map_(std::move(map)),
      constant_(assumption_constant),
      payoff_bound_(payoff_bound),
      name_(std::move(name)) {
  if (dim_ == 0) throw InputError("operator dimension must be positive");
  if (!(constant_ >= 0.0) || !(payoff_bound_ >= 0.0)) {
    throw InputError("operator bounds must be nonnegative");
  }
}

ValueVector Operator::operator()(const ValueVector& f) const {
  if (f.size() != dim_) {
    throw InputError(name_ + ": expected vector of size " + std::to_string(dim_) + ", got " +
                     std::to_string(f.size()));
  }
  ValueVector out = map_(f);
  if (out.size() != dim_) throw InputError(name_ + ": map changed the dimension");
  return out;
}

Operator identity_operator(std::size_t dim) {
  return Operator(dim, [](const ValueVector& f) { return f; }, 0.0, 0.0, "identity");
}

Operator constant_shift_operator(std::size_t dim, double c) {
  return Operator(
      dim, [c](const ValueVector& f) { return ValueVector(f).add_constant(c); }, std::abs(c),
      std::abs(c), "constant-shift");
}

Operator affine_operator(std::vector<double> g, std::vector<double> transition) {
  const std::size_t dim = g.size();
  if (transition.size() != dim * dim) throw InputError("affine operator: P must be dim x dim");
  const ValueVector payoff(std::move(g));
  const double bound = payoff.sup_norm();
  return Operator(
      dim,
      [payoff, transition = std::move(transition), dim](const ValueVector& f) {
        ValueVector out = payoff;
        for (std::size_t k = 0; k < dim; ++k) {
          double acc = 0.0;
          for (std::size_t l = 0; l < dim; ++l) acc += transition[k * dim + l] * f[l];
          out[k] += acc;
        }
        return out;
      },
      bound, bound, "affine");
}

ValueVector apply_iterates(const Operator& op, const ValueVector& f, std::size_t n) {
  if (f.size() != op.dim()) throw InputError("apply_iterates: dimension mismatch");
  ValueVector current = f;
  for (std::size_t i = 0; i < n; ++i) current = op(current);
  return current;
}

ValueVector n_stage_value(const Operator& op, std::size_t n) {
  if (n == 0) throw InputError("n_stage_value: n must be positive");
  ValueVector total = apply_iterates(op, ValueVector(op.dim()), n);
  total *= 1.0 / static_cast<double>(n);
  return total;
}

ValueVector discounted_map(const Operator& op, double lambda, const ValueVector& f) {
  require_lambda(lambda);
  ValueVector scaled = f;
  scaled *= (1.0 - lambda) / lambda;
  ValueVector out = op(scaled);
  out *= lambda;
  return out;
}

IterationReport discounted_value(const Operator& op, double lambda, DiscountedOptions options) {
  require_lambda(lambda);
  if (!(options.tol > 0.0)) throw InputError("discounted_value: tol must be positive");
  const double factor = (1.0 - lambda) / lambda;

  ValueVector current(op.dim());
  double residual = 0.0;
  for (std::size_t k = 1; k <= options.max_iterations; ++k) {
    ValueVector next = discounted_map(op, lambda, current);
    residual = factor * sup_distance(next, current);
    current = std::move(next);
    if (residual <= options.tol) {
      return IterationReport{lambda, k, residual, std::move(current)};
    }
  }
  throw NonConvergenceError("discounted_value: no convergence after " +
                                std::to_string(options.max_iterations) + " iterations at lambda=" +
                                std::to_string(lambda),
                            current.data(), residual);
}

ValueVector psi_lambda_t(const Operator& op, double lambda, std::size_t t, const ValueVector& f) {
  require_lambda(lambda);
  if (f.size() != op.dim()) throw InputError("psi_lambda_t: dimension mismatch");
  ValueVector current = f;
  for (std::size_t i = 0; i < t; ++i) current = discounted_map(op, lambda, current);
  return current;
}

Lemma1Check check_lemma1(const Operator& op, const ValueVector& f, const ValueVector& g,
                         std::size_t n, std::size_t t, double lambda, double slack) {
  if (t < 1 || t > n) throw InputError("check_lemma1: need 1 <= t <= n");
  Lemma1Check out;

  out.contraction_lhs =
      sup_distance(psi_lambda_t(op, lambda, t, f), psi_lambda_t(op, lambda, t, g));
  out.contraction_rhs = std::pow(1.0 - lambda, static_cast<double>(t)) * sup_distance(f, g);
  out.contraction_holds = out.contraction_lhs <= out.contraction_rhs + slack;

  const double inv_n = 1.0 / static_cast<double>(n);
  const ValueVector discounted = psi_lambda_t(op, inv_n, t, f);
  ValueVector cesaro = apply_iterates(op, static_cast<double>(n - t) * f, t);
  cesaro *= inv_n;
  out.cesaro_lhs = sup_distance(discounted, cesaro);
  const double bracket = static_cast<double>(t) * inv_n - 1.0 +
                         std::pow(1.0 - inv_n, static_cast<double>(t));
  out.cesaro_rhs = (op.assumption_constant() + f.sup_norm()) * bracket;
  out.cesaro_holds = out.cesaro_lhs <= out.cesaro_rhs + slack;
  return out;
}

ValueVector sample_vector(const Operator& op, Rng& rng) {
  const double range = op.payoff_bound() > 0.0 ? 10.0 * op.payoff_bound() : 10.0;
  std::vector<double> entries(op.dim());
  for (double& x : entries) x = rng.uniform(-range, range);
  return ValueVector(std::move(entries));
}

Assumption1Check check_assumption1(const Operator& op, std::size_t samples, std::uint64_t seed,
                                   double slack) {
  if (samples == 0) throw InputError("check_assumption1: samples must be positive");
  Rng rng(seed);
  Assumption1Check out;
  out.declared_constant = op.assumption_constant();
  constexpr double kMinLambda = 1e-3;
  constexpr double kMinSeparation = 1e-3;
  for (std::size_t s = 0; s < samples; ++s) {
    double lambda = 0.0;
    double lambda_prime = 0.0;
    do {
      lambda = rng.uniform(kMinLambda, 1.0);
      lambda_prime = rng.uniform(kMinLambda, 1.0);
    } while (std::abs(lambda - lambda_prime) < kMinSeparation);
    const ValueVector f = sample_vector(op, rng);

    ValueVector a = op((1.0 / lambda) * f);
    a *= lambda;
    ValueVector b = op((1.0 / lambda_prime) * f);
    b *= lambda_prime;
    out.max_ratio = std::max(out.max_ratio, sup_distance(a, b) / std::abs(lambda - lambda_prime));
  }
  out.passed = out.max_ratio <= out.declared_constant + slack;
  return out;
}

std::vector<GapRow> tauberian_gap(const Operator& op, const std::vector<std::size_t>& n_schedule,
                                  double tol) {
  if (n_schedule.empty()) throw InputError("tauberian_gap: empty schedule");
  for (std::size_t i = 0; i < n_schedule.size(); ++i) {
    if (n_schedule[i] == 0 || (i > 0 && n_schedule[i] <= n_schedule[i - 1])) {
      throw InputError("tauberian_gap: schedule must be positive and strictly increasing");
    }
  }

  std::vector<GapRow> rows;
  rows.reserve(n_schedule.size());
  // Ψⁿ(0) is accumulated along the schedule rather than recomputed per n.
  ValueVector iterate(op.dim());
  std::size_t done = 0;
  for (std::size_t n : n_schedule) {
    iterate = apply_iterates(op, iterate, n - done);
    done = n;
    ValueVector v_n = iterate;
    v_n *= 1.0 / static_cast<double>(n);
    IterationReport disc =
        discounted_value(op, 1.0 / static_cast<double>(n), DiscountedOptions{tol});
    const double gap = sup_distance(v_n, disc.value);
    rows.push_back(GapRow{n, gap, std::move(v_n), std::move(disc.value)});
  }
  return rows;
}

}  // namespace tauber
