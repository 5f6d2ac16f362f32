#include "tauber/property_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tauber {

namespace {

void record(LawCheck& check, double violation, double slack) {
  ++check.draws;
  check.max_violation = std::max(check.max_violation, violation);
  check.passed = check.max_violation <= slack;
}

}  // namespace

LawCheck check_nonexpansive(const Operator& op, Rng& rng, std::size_t draws, double slack) {
  LawCheck check{"nonexpansive"};
  for (std::size_t d = 0; d < draws; ++d) {
    const ValueVector f = sample_vector(op, rng);
    const ValueVector g = sample_vector(op, rng);
    record(check, sup_distance(op(f), op(g)) - sup_distance(f, g), slack);
  }
  return check;
}

LawCheck check_monotone(const Operator& op, Rng& rng, std::size_t draws, double slack) {
  LawCheck check{"monotone"};
  for (std::size_t d = 0; d < draws; ++d) {
    const ValueVector f = sample_vector(op, rng);
    ValueVector g = f;
    const double spread = std::max(1.0, op.payoff_bound());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += rng.uniform(0.0, spread);
    const ValueVector pf = op(f);
    const ValueVector pg = op(g);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pf.size(); ++k) worst = std::max(worst, pf[k] - pg[k]);
    record(check, worst, slack);
  }
  return check;
}

LawCheck check_additive_homogeneity(const Operator& op, Rng& rng, std::size_t draws,
                                    double slack) {
  LawCheck check{"additive-homogeneity"};
  for (std::size_t d = 0; d < draws; ++d) {
    const ValueVector f = sample_vector(op, rng);
    const double c = rng.uniform(-10.0, 10.0) * std::max(1.0, op.payoff_bound());
    ValueVector expected = op(f);
    expected.add_constant(c);
    record(check, sup_distance(op(ValueVector(f).add_constant(c)), expected), slack);
  }
  return check;
}

LawCheck check_discounted_contraction(const Operator& op, Rng& rng, std::size_t draws,
                                      double slack) {
  LawCheck check{"discounted-contraction"};
  for (std::size_t d = 0; d < draws; ++d) {
    const double lambda = rng.uniform(1e-3, 1.0);
    const ValueVector f = sample_vector(op, rng);
    const ValueVector g = sample_vector(op, rng);
    const double lhs =
        sup_distance(discounted_map(op, lambda, f), discounted_map(op, lambda, g));
    record(check, lhs - (1.0 - lambda) * sup_distance(f, g), slack);
  }
  return check;
}

LawCheck check_discounted_lipschitz(const Operator& op, Rng& rng, std::size_t draws, double tol) {
  LawCheck check{"discounted-lipschitz"};
  for (std::size_t d = 0; d < draws; ++d) {
    const double lambda = rng.uniform(0.05, 1.0);
    const double lambda_prime = rng.uniform(0.05, 1.0);
    const ValueVector v = discounted_value(op, lambda, {tol}).value;
    const ValueVector w = discounted_value(op, lambda_prime, {tol}).value;
    const double a = op.assumption_constant() + std::max(v.sup_norm(), w.sup_norm());
    const double rhs = a * std::abs(lambda - lambda_prime) / lambda_prime;
    // Both fixed points carry up to tol of error each.
    record(check, sup_distance(v, w) - rhs, 2.0 * tol + 1e-12);
  }
  return check;
}

}  // namespace tauber
