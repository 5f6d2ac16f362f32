#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tauber/random.hpp"
#include "tauber/value_vector.hpp"

namespace tauber {

/// A nonexpansive self-map Ψ of ℝ^dim (sup-norm), with the declared constant C
/// of the regularity bound ‖λΨ(f/λ) − λ'Ψ(f/λ')‖ ≤ C|λ − λ'| and a bound on ‖Ψ(0)‖.
class Operator {
 public:
  using Map = std::function<ValueVector(const ValueVector&)>;

  Operator(std::size_t dim, Map map, double assumption_constant, double payoff_bound,
           std::string name = "operator");

  /// Evaluates Ψ(f). Throws InputError when f has the wrong dimension.
  ValueVector operator()(const ValueVector& f) const;

  std::size_t dim() const noexcept { return dim_; }
  double assumption_constant() const noexcept { return constant_; }
  double payoff_bound() const noexcept { return payoff_bound_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t dim_;
  Map map_;
  double constant_;
  double payoff_bound_;
  std::string name_;
};

/// f ↦ f.
Operator identity_operator(std::size_t dim);
/// f ↦ f + c·1.
Operator constant_shift_operator(std::size_t dim, double c);
/// f ↦ g + P f for a row-stochastic P (row-major, dim×dim).
Operator affine_operator(std::vector<double> g, std::vector<double> transition);

struct IterationReport {
  /// n for n-stage runs, λ for discounted runs.
  double parameter = 0.0;
  std::size_t iterations_used = 0;
  double residual = 0.0;
  ValueVector value;
};

/// Ψⁿ(f), with Ψ⁰(f) = f.
ValueVector apply_iterates(const Operator& op, const ValueVector& f, std::size_t n);

/// vₙ = n⁻¹Ψⁿ(0). Requires n ≥ 1.
ValueVector n_stage_value(const Operator& op, std::size_t n);

/// λΨ((1−λ)λ⁻¹ f), a (1−λ)-contraction. Requires λ ∈ (0, 1].
ValueVector discounted_map(const Operator& op, double lambda, const ValueVector& f);

struct DiscountedOptions {
  double tol = 1e-9;
  std::size_t max_iterations = 1'000'000;
};

/// Fixed point v_λ of discounted_map, iterated from 0 until the a-posteriori
/// bound ((1−λ)/λ)·‖f_{k+1} − f_k‖∞ ≤ tol. The returned value is within tol
/// of v_λ. Throws NonConvergenceError at the iteration cap.
IterationReport discounted_value(const Operator& op, double lambda, DiscountedOptions options = {});

/// Ψᵗ_λ(f): t nested applications of discounted_map.
ValueVector psi_lambda_t(const Operator& op, double lambda, std::size_t t, const ValueVector& f);

struct Lemma1Check {
  // (i)  ‖Ψᵗ_λ f − Ψᵗ_λ g‖ ≤ (1−λ)ᵗ‖f − g‖
  double contraction_lhs = 0.0;
  double contraction_rhs = 0.0;
  bool contraction_holds = false;
  // (ii) ‖Ψᵗ_{1/n} f − n⁻¹Ψᵗ((n−t) f)‖ ≤ (C + ‖f‖)[t/n − 1 + (1 − 1/n)ᵗ]
  double cesaro_lhs = 0.0;
  double cesaro_rhs = 0.0;
  bool cesaro_holds = false;

  double contraction_slack() const { return contraction_rhs - contraction_lhs; }
  double cesaro_slack() const { return cesaro_rhs - cesaro_lhs; }
};

/// Evaluates both iterate inequalities; violations are reported, never thrown.
/// Requires 1 ≤ t ≤ n.
Lemma1Check check_lemma1(const Operator& op, const ValueVector& f, const ValueVector& g,
                         std::size_t n, std::size_t t, double lambda, double slack = 1e-9);

struct Assumption1Check {
  double max_ratio = 0.0;
  double declared_constant = 0.0;
  bool passed = false;
};

/// Samples (λ, λ', f) and reports max ‖λΨ(f/λ) − λ'Ψ(f/λ')‖∞ / |λ − λ'|.
/// f entries are drawn in ±10·payoff_bound (±10 when the bound is 0).
Assumption1Check check_assumption1(const Operator& op, std::size_t samples, std::uint64_t seed,
                                   double slack = 1e-9);

struct GapRow {
  std::size_t n = 0;
  double gap = 0.0;
  ValueVector v_n;
  ValueVector v_lambda;
};

/// For each n: ‖vₙ − v_{1/n}‖∞. Schedule must be nonempty and strictly increasing.
std::vector<GapRow> tauberian_gap(const Operator& op, const std::vector<std::size_t>& n_schedule,
                                  double tol = 1e-9);

/// Random test vector: entries uniform in ±10·payoff_bound (±10 when the bound is 0).
ValueVector sample_vector(const Operator& op, Rng& rng);

}  // namespace tauber
