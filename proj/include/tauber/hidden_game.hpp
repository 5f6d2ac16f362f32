#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tauber/operator.hpp"
#include "tauber/stochastic_game.hpp"

namespace tauber {

/// Stochastic game with a hidden state and a public signal. Actions are
/// state-independent. kernel[k] holds, for each action pair (i, j) in row-major
/// order, a block of num_states × num_signals joint probabilities of
/// (next state k', signal a), indexed k' * num_signals + a.
struct HiddenGameSpec {
  std::size_t num_states = 0;
  std::size_t actions1 = 0;
  std::size_t actions2 = 0;
  std::size_t num_signals = 0;
  std::vector<std::vector<double>> payoff;
  std::vector<std::vector<double>> kernel;
  std::vector<std::string> state_names;
  std::vector<std::string> signal_names;

  double payoff_at(std::size_t k, std::size_t i, std::size_t j) const {
    return payoff[k][i * actions2 + j];
  }
  double joint(std::size_t k, std::size_t i, std::size_t j, std::size_t next, std::size_t a) const {
    return kernel[k][(i * actions2 + j) * num_states * num_signals + next * num_signals + a];
  }

  double payoff_bound() const;
  void validate(double tol = 1e-12) const;

  /// The fully observed game obtained by marginalizing the signal out.
  FiniteGame transition_marginal() const;
};

using BeliefPoint = std::vector<double>;

struct BeliefUpdate {
  /// Meaningful only when defined(); otherwise empty.
  BeliefPoint posterior;
  double signal_probability = 0.0;

  bool defined() const noexcept { return signal_probability > 1e-15; }
};

/// Bayes posterior on the next state after (i, j) and public signal a.
BeliefUpdate belief_update(const HiddenGameSpec& spec, const BeliefPoint& prior, std::size_t i,
                           std::size_t j, std::size_t a);

/// Rational points of Δ(K) with denominator d, and barycentric interpolation on
/// the Freudenthal (Kuhn) triangulation of the simplex.
class BeliefGrid {
 public:
  BeliefGrid(std::size_t num_states, std::size_t resolution);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Integer counts n with Σn = d; the belief is n / d.
  const std::vector<int>& counts(std::size_t node) const { return nodes_[node]; }
  BeliefPoint point(std::size_t node) const;
  std::size_t index_of(const std::vector<int>& counts) const;
  /// Node at the Dirac belief on state k.
  std::size_t vertex(std::size_t k) const;

  /// Nonnegative weights summing to 1 over at most K grid nodes whose
  /// weighted average is p.
  std::vector<std::pair<std::size_t, double>> interpolate(const BeliefPoint& p) const;

  /// Piecewise-linear interpolant of node values at p.
  double evaluate(const std::vector<double>& values, const BeliefPoint& p) const;

  static constexpr const char* interpolation_rule = "freudenthal-barycentric";

 private:
  std::size_t num_states_;
  std::size_t resolution_;
  std::vector<std::vector<int>> nodes_;
  std::vector<std::size_t> stride_;
  std::vector<std::size_t> lookup_;
  std::size_t encode(const std::vector<int>& counts) const;
};

/// Shapley operator on grid nodes:
/// Ψ(f)(p) = val_{x,y} [Σ_k p(k) g(k,i,j) + Σ_a Pr(a | p,i,j) f̂(posterior)],
/// f̂ the grid interpolant. Zero-probability signals are skipped.
Operator belief_shapley_operator(const HiddenGameSpec& spec, const BeliefGrid& grid,
                                 double tol = 1e-9);

/// vₙ and v_λ on every grid node.
GameValues hidden_values(const HiddenGameSpec& spec, const BeliefGrid& grid, std::size_t n,
                         double lambda, double tol = 1e-9);

/// max over neighbouring nodes p, q (one unit moved between two coordinates)
/// of |f(p) − f(q)| / ‖p − q‖₁.
double lipschitz_check(const BeliefGrid& grid, const std::vector<double>& values);

inline double lipschitz_check(const BeliefGrid& grid, const ValueVector& values) {
  return lipschitz_check(grid, std::vector<double>(values.begin(), values.end()));
}

}  // namespace tauber
