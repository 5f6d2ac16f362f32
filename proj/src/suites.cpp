#include "tauber/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tauber/errors.hpp"
#include "tauber/matrix_game.hpp"
#include "tauber/parallel.hpp"
#include "tauber/property_checks.hpp"
#include "tauber/random.hpp"

namespace tauber {

FiniteGame random_small_game(std::uint64_t seed, std::size_t max_states, std::size_t max_actions) {
  Rng rng(seed);
  GeneratorConfig config;
  config.seed = rng.next();
  config.num_states = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_states)));
  config.actions1 = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_actions)));
  config.actions2 = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_actions)));
  config.sparsity = rng.uniform(0.0, 0.5);
  return random_game(config);
}

Operator doubling_operator(std::size_t dim) {
  return Operator(
      dim, [](const ValueVector& f) { return 2.0 * f; }, 0.0, 1.0, "doubling");
}

namespace {

Operator make_fixture(const SuiteOptions& options, std::size_t trial) {
  const std::uint64_t trial_seed = options.seed * 1'000'003ULL + trial;
  if (options.fixture == "shapley") return shapley_operator(random_small_game(trial_seed));
  if (options.fixture == "doubling") return doubling_operator(1 + trial % 4);
  throw InputError("unknown fixture: " + options.fixture);
}

using Rows = std::vector<SuiteRow>;

void add(Rows& rows, std::size_t trial, std::string check, double worst, bool passed) {
  rows.push_back(SuiteRow{trial, std::move(check), worst, passed});
}

void add(Rows& rows, std::size_t trial, const LawCheck& law) {
  add(rows, trial, law.law, law.max_violation, law.passed);
}

void operator_trial(const SuiteOptions& options, std::size_t trial, Rows& report) {
  const Operator op = make_fixture(options, trial);
  Rng rng(options.seed + 7919 * trial);
  add(report, trial, check_nonexpansive(op, rng, options.draws, options.slack));
  add(report, trial, check_monotone(op, rng, options.draws, options.slack));
  add(report, trial, check_additive_homogeneity(op, rng, options.draws, options.slack));
  add(report, trial, check_discounted_contraction(op, rng, options.draws, options.slack));
}

void lemma1_trial(const SuiteOptions& options, std::size_t trial, Rows& report) {
  const Operator op = make_fixture(options, trial);
  Rng rng(options.seed + 104729 * trial);
  double worst_i = -std::numeric_limits<double>::infinity();
  double worst_ii = -std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < options.draws; ++d) {
    const ValueVector f = sample_vector(op, rng);
    const ValueVector g = sample_vector(op, rng);
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 50));
    const auto t = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(n)));
    const double lambda = rng.uniform(1e-3, 1.0);
    const Lemma1Check c = check_lemma1(op, f, g, n, t, lambda, options.slack);
    worst_i = std::max(worst_i, -c.contraction_slack());
    worst_ii = std::max(worst_ii, -c.cesaro_slack());
  }
  add(report, trial, "lemma1-contraction", worst_i, worst_i <= options.slack);
  add(report, trial, "lemma1-cesaro", worst_ii, worst_ii <= options.slack);
}

void assumption1_trial(const SuiteOptions& options, std::size_t trial, Rows& report) {
  const Operator op = make_fixture(options, trial);
  const Assumption1Check c =
      check_assumption1(op, options.draws, options.seed + 15485863 * trial, options.slack);
  add(report, trial, "assumption1", c.max_ratio - c.declared_constant, c.passed);
}

void matrix_trial(const SuiteOptions& options, std::size_t trial, Rows& report) {
  Rng rng(options.seed * 1'000'003ULL + trial);
  const auto rows = static_cast<std::size_t>(rng.uniform_int(1, 5));
  const auto cols = static_cast<std::size_t>(rng.uniform_int(1, 5));
  std::vector<double> payoff(rows * cols);
  for (double& x : payoff) x = rng.uniform(-1.0, 1.0);
  const MatrixGame game(rows, cols, payoff);
  const GameSolution sol = solve_matrix_game(game);
  add(report, trial, "duality", sol.duality_gap, sol.duality_gap <= options.slack);

  const double shift = rng.uniform(-5.0, 5.0);
  std::vector<double> shifted = payoff;
  for (double& x : shifted) x += shift;
  const MatrixGame shifted_game(rows, cols, shifted);
  GameSolution moved = sol;
  moved.value += shift;
  const double shift_err = std::max(
      std::abs(matrix_game_value(shifted_game) - (sol.value + shift)),
      verify_solution(shifted_game, moved));
  add(report, trial, "shift", shift_err, shift_err <= options.slack);

  const double scale = rng.uniform(0.1, 10.0);
  std::vector<double> scaled = payoff;
  for (double& x : scaled) x *= scale;
  const MatrixGame scaled_game(rows, cols, scaled);
  GameSolution stretched = sol;
  stretched.value *= scale;
  const double scale_err =
      std::max(std::abs(matrix_game_value(scaled_game) - scale * sol.value),
               verify_solution(scaled_game, stretched));
  add(report, trial, "scale", scale_err, scale_err <= options.slack);

  const double swap_err =
      std::abs(matrix_game_value(game.negated_transpose()) + sol.value);
  add(report, trial, "exchange", swap_err, swap_err <= options.slack);
}

}  // namespace

SuiteReport run_suite(const SuiteOptions& options) {
  SuiteReport report;
  report.suite = options.suite;
  report.fixture = options.suite == "matrix" ? "random-matrix" : options.fixture;
  void (*trial_fn)(const SuiteOptions&, std::size_t, Rows&) = nullptr;
  if (options.suite == "operator") {
    trial_fn = operator_trial;
  } else if (options.suite == "lemma1") {
    trial_fn = lemma1_trial;
  } else if (options.suite == "assumption1") {
    trial_fn = assumption1_trial;
  } else if (options.suite == "matrix") {
    trial_fn = matrix_trial;
  } else {
    throw InputError("unknown suite: " + options.suite);
  }
  if (options.suite != "matrix" && options.fixture != "shapley" && options.fixture != "doubling") {
    throw InputError("unknown fixture: " + options.fixture);
  }

  std::vector<Rows> per_trial(options.trials);
  parallel_for(options.trials, [&](std::size_t trial) { trial_fn(options, trial, per_trial[trial]); });
  for (Rows& rows : per_trial) {
    for (SuiteRow& row : rows) {
      if (!row.passed) ++report.violations;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace tauber
