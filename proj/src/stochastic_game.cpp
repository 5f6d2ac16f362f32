#include "tauber/stochastic_game.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "tauber/errors.hpp"
#include "tauber/matrix_game.hpp"
#include "tauber/random.hpp"

namespace tauber {

double FiniteGame::payoff_bound() const {
  double m = 0.0;
  for (const auto& stage : payoff) {
    for (double x : stage) m = std::max(m, std::abs(x));
  }
  return m;
}

void FiniteGame::validate(double tol) const {
  if (num_states == 0) throw InputError("game has no states");
  if (actions1.size() != num_states || actions2.size() != num_states ||
      payoff.size() != num_states || transition.size() != num_states) {
    throw InputError("game arrays must have one entry per state");
  }
  if (!state_names.empty() && state_names.size() != num_states) {
    throw InputError("state_names must be empty or have one entry per state");
  }
  for (std::size_t k = 0; k < num_states; ++k) {
    const std::string where = "state " + std::to_string(k);
    if (actions1[k] == 0 || actions2[k] == 0) throw InputError(where + ": empty action set");
    const std::size_t pairs = actions1[k] * actions2[k];
    if (payoff[k].size() != pairs) throw InputError(where + ": payoff has wrong size");
    if (transition[k].size() != pairs * num_states) {
      throw InputError(where + ": transition has wrong size");
    }
    for (double x : payoff[k]) {
      if (!std::isfinite(x)) throw InputError(where + ": payoff not finite");
    }
    for (std::size_t p = 0; p < pairs; ++p) {
      double total = 0.0;
      for (std::size_t l = 0; l < num_states; ++l) {
        const double q = transition[k][p * num_states + l];
        if (!(q >= 0.0) || !std::isfinite(q)) {
          throw InputError(where + ": negative or non-finite transition probability");
        }
        total += q;
      }
      if (std::abs(total - 1.0) > tol) {
        throw InputError(where + ": transition row sums to " + std::to_string(total));
      }
    }
  }
}

FiniteGame FiniteGame::repeated(const std::vector<std::vector<double>>& payoff) {
  const MatrixGame m = MatrixGame::from_rows(payoff);
  FiniteGame game;
  game.num_states = 1;
  game.actions1 = {m.rows()};
  game.actions2 = {m.cols()};
  game.payoff = {m.payoff()};
  game.transition = {std::vector<double>(m.rows() * m.cols(), 1.0)};
  return game;
}

void DPProblem::validate() const {
  if (num_states == 0) throw InputError("DP problem has no states");
  if (successors.size() != num_states || payoff.size() != num_states) {
    throw InputError("DP arrays must have one entry per state");
  }
  for (std::size_t k = 0; k < num_states; ++k) {
    if (successors[k].empty()) throw InputError("F(" + std::to_string(k) + ") is empty");
    for (std::size_t l : successors[k]) {
      if (l >= num_states) throw InputError("successor out of range");
    }
    if (!std::isfinite(payoff[k])) throw InputError("DP payoff not finite");
  }
}

void GeneratorConfig::validate() const {
  if (num_states == 0 || actions1 == 0 || actions2 == 0) {
    throw InputError("generator sizes must be positive");
  }
  if (!(payoff_min < payoff_max)) throw InputError("generator needs payoff_min < payoff_max");
  if (!(sparsity >= 0.0 && sparsity < 1.0)) throw InputError("sparsity must lie in [0, 1)");
}

Operator shapley_operator(const FiniteGame& game, double tol) {
  game.validate();
  auto shared = std::make_shared<const FiniteGame>(game);
  const double bound = shared->payoff_bound();
  return Operator(
      shared->num_states,
      [shared, tol](const ValueVector& f) {
        const FiniteGame& g = *shared;
        std::vector<double> out(g.num_states);
        std::vector<double> aux;
        for (std::size_t k = 0; k < g.num_states; ++k) {
          const std::size_t rows = g.actions1[k];
          const std::size_t cols = g.actions2[k];
          aux.resize(rows * cols);
          for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
              const double* q = g.next_state_law(k, i, j);
              double cont = 0.0;
              for (std::size_t l = 0; l < g.num_states; ++l) cont += q[l] * f[l];
              aux[i * cols + j] = g.payoff_at(k, i, j) + cont;
            }
          }
          try {
            out[k] = matrix_game_value(MatrixGame(rows, cols, aux), tol);
          } catch (const SolverError& e) {
            throw SolverError("state " + std::to_string(k) + ": " + e.what());
          }
        }
        return ValueVector(std::move(out));
      },
      bound, bound, "shapley");
}

Operator dp_operator(const DPProblem& problem) {
  problem.validate();
  double bound = 0.0;
  for (double x : problem.payoff) bound = std::max(bound, std::abs(x));
  return Operator(
      problem.num_states,
      [problem](const ValueVector& f) {
        std::vector<double> out(problem.num_states);
        for (std::size_t k = 0; k < problem.num_states; ++k) {
          double best = f[problem.successors[k].front()];
          for (std::size_t l : problem.successors[k]) best = std::max(best, f[l]);
          out[k] = problem.payoff[k] + best;
        }
        return ValueVector(std::move(out));
      },
      bound, bound, "dynamic-programming");
}

FiniteGame random_game(const GeneratorConfig& config) {
  config.validate();
  Rng rng(config.seed);
  FiniteGame game;
  const std::size_t states = config.num_states;
  game.num_states = states;
  game.actions1.assign(states, config.actions1);
  game.actions2.assign(states, config.actions2);
  const std::size_t pairs = config.actions1 * config.actions2;
  for (std::size_t k = 0; k < states; ++k) {
    std::vector<double> stage(pairs);
    for (double& x : stage) x = rng.uniform(config.payoff_min, config.payoff_max);
    game.payoff.push_back(std::move(stage));

    std::vector<double> rows(pairs * states);
    for (std::size_t p = 0; p < pairs; ++p) {
      double* row = rows.data() + p * states;
      const auto keep = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(states) - 1));
      double total = 0.0;
      for (std::size_t l = 0; l < states; ++l) {
        // 1 − u lies in (0, 1], so surviving weights are strictly positive.
        const double w = 1.0 - rng.uniform(0.0, 1.0);
        const bool zeroed = l != keep && rng.uniform(0.0, 1.0) < config.sparsity;
        row[l] = zeroed ? 0.0 : w;
        total += row[l];
      }
      for (std::size_t l = 0; l < states; ++l) row[l] /= total;
    }
    game.transition.push_back(std::move(rows));
  }
  return game;
}

GameValues game_values(const FiniteGame& game, std::size_t n, double lambda, double tol) {
  const Operator op = shapley_operator(game, tol);
  return GameValues{n_stage_value(op, n), discounted_value(op, lambda, {tol}).value};
}

}  // namespace tauber
