#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tauber/operator.hpp"
#include "tauber/stochastic_game.hpp"

namespace tauber {

/// Random game with K ∈ [1, max_states] and per-player action counts in [1, max_actions],
/// all drawn from seed.
FiniteGame random_small_game(std::uint64_t seed, std::size_t max_states = 4,
                             std::size_t max_actions = 3);

/// Ψ(f) = 2f: the negative control for the operator laws.
Operator doubling_operator(std::size_t dim);

struct SuiteRow {
  std::size_t trial = 0;
  std::string check;
  double worst = 0.0;
  bool passed = true;
};

struct SuiteReport {
  std::string suite;
  std::string fixture;
  std::vector<SuiteRow> rows;
  std::size_t violations = 0;
  bool passed() const noexcept { return violations == 0; }
};

struct SuiteOptions {
  std::string suite = "operator";   // operator | lemma1 | assumption1 | matrix
  std::string fixture = "shapley";  // shapley | doubling (ignored by matrix)
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  /// Random draws per trial.
  std::size_t draws = 50;
  double slack = 1e-9;
};

/// Runs one randomized property suite. Throws InputError on unknown names.
SuiteReport run_suite(const SuiteOptions& options);

}  // namespace tauber
