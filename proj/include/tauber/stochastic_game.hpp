#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tauber/operator.hpp"

namespace tauber {

/// Finite zero-sum stochastic game. Action sets may differ by state.
/// payoff[k] is row-major actions1[k] × actions2[k]; transition[k] holds, for
/// each action pair (i, j) in the same order, a block of num_states probabilities.
struct FiniteGame {
  std::size_t num_states = 0;
  std::vector<std::size_t> actions1;
  std::vector<std::size_t> actions2;
  std::vector<std::vector<double>> payoff;
  std::vector<std::vector<double>> transition;
  std::vector<std::string> state_names;

  double payoff_at(std::size_t k, std::size_t i, std::size_t j) const {
    return payoff[k][i * actions2[k] + j];
  }
  const double* next_state_law(std::size_t k, std::size_t i, std::size_t j) const {
    return transition[k].data() + (i * actions2[k] + j) * num_states;
  }

  /// ‖g‖∞.
  double payoff_bound() const;

  /// Throws InputError unless shapes agree, payoffs are finite and every
  /// transition row is a probability vector within tol.
  void validate(double tol = 1e-12) const;

  /// Builds a game with one state and a self-loop: the repeated matrix game.
  static FiniteGame repeated(const std::vector<std::vector<double>>& payoff);
};

/// Deterministic dynamic programming problem: from k, move to any k' ∈ F(k).
struct DPProblem {
  std::size_t num_states = 0;
  std::vector<std::vector<std::size_t>> successors;
  std::vector<double> payoff;

  void validate() const;
};

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t num_states = 3;
  std::size_t actions1 = 2;
  std::size_t actions2 = 2;
  double payoff_min = -1.0;
  double payoff_max = 1.0;
  /// Probability that a transition entry is zeroed (one entry per row always survives).
  double sparsity = 0.0;

  void validate() const;
};

/// Ψ(f)(k) = val_{x,y}[g(k,i,j) + Σ_k' q(k'|k,i,j) f(k')], declared constant C = ‖g‖∞.
/// Solver failures are rethrown as SolverError naming the state.
Operator shapley_operator(const FiniteGame& game, double tol = 1e-9);

/// Ψ(f)(k) = g(k) + max_{k' ∈ F(k)} f(k').
Operator dp_operator(const DPProblem& problem);

/// Deterministic in config.seed; transitions normalized, payoffs in [min, max).
FiniteGame random_game(const GeneratorConfig& config);

struct GameValues {
  ValueVector v_n;
  ValueVector v_lambda;
};

/// vₙ and v_λ through one Shapley operator.
GameValues game_values(const FiniteGame& game, std::size_t n, double lambda, double tol = 1e-9);

}  // namespace tauber
