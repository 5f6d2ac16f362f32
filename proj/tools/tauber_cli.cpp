#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tauber/counterexample.hpp"
#include "tauber/errors.hpp"
#include "tauber/game_io.hpp"
#include "tauber/hidden_game.hpp"
#include "tauber/operator.hpp"
#include "tauber/stochastic_game.hpp"
#include "tauber/suites.hpp"

namespace {

using namespace tauber;

enum ExitCode { kOk = 0, kSuiteFailed = 1, kInputError = 2, kNumericalError = 3 };

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

const char* flag(bool b) { return b ? "true" : "false"; }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write to " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct Common {
  std::string out;
  double tol = 1e-9;
};

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw InputError("--lambda must lie in (0, 1]");
}

// solve

struct SolveArgs {
  Common common;
  std::string game;
  std::size_t n = 100;
  double lambda = 0.01;
};

int run_solve(const SolveArgs& a) {
  check_lambda(a.lambda);
  if (a.n == 0) throw InputError("--n must be positive");
  const FiniteGame game = load_game(a.game);
  const GameValues v = game_values(game, a.n, a.lambda, a.common.tol);
  Output out(a.common.out);
  std::ostream& os = out.stream();
  os << "state,v_n,v_lambda\n";
  for (std::size_t k = 0; k < game.num_states; ++k) {
    const std::string name = k < game.state_names.size() ? game.state_names[k] : std::to_string(k);
    os << name << ',' << num(v.v_n[k]) << ',' << num(v.v_lambda[k]) << '\n';
  }
  return kOk;
}

// tauber

struct TauberArgs {
  Common common;
  std::string game;
  bool random = false;
  std::uint64_t seed = 1;
  std::size_t states = 3;
  std::size_t actions = 2;
  std::vector<std::size_t> n_schedule{500, 1000, 2000, 5000};
};

int run_tauber(const TauberArgs& a) {
  FiniteGame game;
  if (a.random == !a.game.empty()) throw InputError("give exactly one of --game and --random");
  if (a.random) {
    game = random_game({.seed = a.seed, .num_states = a.states, .actions1 = a.actions, .actions2 = a.actions});
  } else {
    game = load_game(a.game);
  }
  const std::vector<GapRow> rows = tauberian_gap(shapley_operator(game, a.common.tol), a.n_schedule,
                                                 a.common.tol);
  Output out(a.common.out);
  std::ostream& os = out.stream();
  os << "n,gap\n";
  for (const GapRow& r : rows) os << r.n << ',' << num(r.gap) << '\n';
  const bool trend = rows.back().gap <= rows.front().gap + 1e-3;
  os << "# monotone_trend," << flag(trend) << '\n';
  return kOk;
}

// counterexample

struct CounterexampleArgs {
  Common common;
  counterexample::Params params;
  double lambda_min = 1e-12;
};

int run_counterexample(const CounterexampleArgs& a) {
  namespace ce = counterexample;
  a.params.validate();
  if (!(a.lambda_min > 0.0 && a.lambda_min <= 1e-3)) {
    throw InputError("--lambda-min must lie in (0, 1e-3]");
  }
  const std::vector<double> grid = ce::sweep_grid(a.lambda_min);
  const std::vector<ce::SweepRow> rows = ce::sweep(grid, a.params);
  const std::vector<double> scan_grid = ce::sweep_grid(std::min(a.lambda_min, 1e-10));
  const ce::LimitReport report = ce::oscillation_scan(a.params, scan_grid);
  const ce::DistinctLimitsSummary summary = ce::distinct_limits_report(a.params, scan_grid);

  Output out(a.common.out);
  std::ostream& os = out.stream();
  os << "lambda,value_G,value_G_sym,value_G1,value_G2,value_G3,value_G4,"
        "argmax_rN,argmax_2rN,argmax_r2N1\n";
  for (const ce::SweepRow& r : rows) {
    os << num(r.lambda) << ',' << num(r.g) << ',' << num(r.g_sym) << ',' << num(r.g1) << ','
       << num(r.g2) << ',' << num(r.g3) << ',' << num(r.g4) << ',' << r.argmax_multiples << ','
       << r.argmax_even << ',' << r.argmax_odd << '\n';
  }
  os << "# r," << a.params.r << '\n';
  os << "# x," << num(a.params.x) << '\n';
  os << "# scan_smallest_lambda," << num(scan_grid.back()) << '\n';
  os << "# tail_cutoff," << num(report.tail_cutoff) << '\n';
  os << "# liminf_estimate," << num(report.liminf_estimate) << '\n';
  os << "# limsup_estimate," << num(report.limsup_estimate) << '\n';
  os << "# oscillation_gap," << num(report.gap) << '\n';
  os << "# oscillation_detected," << flag(report.oscillation_detected) << '\n';
  os << "# classes_separated," << flag(report.classes_separated) << '\n';
  os << "# discounted_estimate," << num(summary.discounted_estimate) << '\n';
  os << "# discounted_limit," << num(summary.discounted_limit) << '\n';
  os << "# discounted_deviation_first," << num(summary.first_deviation) << '\n';
  os << "# discounted_deviation_last," << num(summary.last_deviation) << '\n';
  os << "# n_stage_limit," << num(summary.n_stage_limit) << '\n';
  os << "# n_stage_computed," << flag(summary.n_stage_computed) << '\n';
  os << "# n_stage_note," << summary.n_stage_note << '\n';
  return kOk;
}

// hidden

struct HiddenArgs {
  Common common;
  std::string game;
  std::size_t grid = 20;
  std::size_t n = 100;
  double lambda = 0.01;
  bool refine = true;
};

int run_hidden(const HiddenArgs& a) {
  check_lambda(a.lambda);
  if (a.n == 0) throw InputError("--n must be positive");
  const HiddenGameSpec spec = load_hidden_game(a.game);
  const BeliefGrid grid(spec.num_states, a.grid);
  const GameValues v = hidden_values(spec, grid, a.n, a.lambda, a.common.tol);

  Output out(a.common.out);
  std::ostream& os = out.stream();
  os << "node";
  for (std::size_t k = 0; k < spec.num_states; ++k) {
    os << ",p_" << (k < spec.state_names.size() ? spec.state_names[k] : std::to_string(k));
  }
  os << ",v_n,v_lambda\n";
  for (std::size_t node = 0; node < grid.size(); ++node) {
    os << node;
    for (double p : grid.point(node)) os << ',' << num(p);
    os << ',' << num(v.v_n[node]) << ',' << num(v.v_lambda[node]) << '\n';
  }
  os << "# grid," << a.grid << '\n';
  os << "# interpolation," << BeliefGrid::interpolation_rule << '\n';
  os << "# max_slope_v_n," << num(lipschitz_check(grid, v.v_n)) << '\n';
  os << "# max_slope_v_lambda," << num(lipschitz_check(grid, v.v_lambda)) << '\n';
  os << "# payoff_bound," << num(spec.payoff_bound()) << '\n';
  if (a.refine) {
    const BeliefGrid fine(spec.num_states, 2 * a.grid);
    const GameValues w = hidden_values(spec, fine, a.n, a.lambda, a.common.tol);
    double delta_n = 0.0;
    double delta_lambda = 0.0;
    for (std::size_t node = 0; node < grid.size(); ++node) {
      std::vector<int> counts = grid.counts(node);
      for (int& c : counts) c *= 2;
      const std::size_t twin = fine.index_of(counts);
      delta_n = std::max(delta_n, std::abs(v.v_n[node] - w.v_n[twin]));
      delta_lambda = std::max(delta_lambda, std::abs(v.v_lambda[node] - w.v_lambda[twin]));
    }
    os << "# refinement_delta_v_n," << num(delta_n) << '\n';
    os << "# refinement_delta_v_lambda," << num(delta_lambda) << '\n';
  }
  return kOk;
}

// check

struct CheckArgs {
  Common common;
  SuiteOptions suite;
};

int run_check(const CheckArgs& a) {
  const SuiteReport report = run_suite(a.suite);
  Output out(a.common.out);
  std::ostream& os = out.stream();
  os << "trial,check,worst,passed\n";
  for (const SuiteRow& r : report.rows) {
    os << r.trial << ',' << r.check << ',' << num(r.worst) << ',' << flag(r.passed) << '\n';
  }
  os << "# suite," << report.suite << '\n';
  os << "# fixture," << report.fixture << '\n';
  os << "# violations," << report.violations << '\n';
  os << "# result," << (report.passed() ? "pass" : "fail") << '\n';
  return report.passed() ? kOk : kSuiteFailed;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Write output here instead of stdout");
  cmd->add_option("--tol", c.tol, "Solver tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Values of zero-sum stochastic games and Tauberian checks"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "n-stage and discounted values of a game file");
  add_common(solve_cmd, solve.common);
  solve_cmd->add_option("--game", solve.game, "Game JSON file")->required();
  solve_cmd->add_option("--n", solve.n, "Number of stages");
  solve_cmd->add_option("--lambda", solve.lambda, "Discount factor");

  TauberArgs tauber;
  auto* tauber_cmd = app.add_subcommand("tauber", "Gap between v_n and v_{1/n} along a schedule");
  add_common(tauber_cmd, tauber.common);
  tauber_cmd->add_option("--game", tauber.game, "Game JSON file");
  tauber_cmd->add_flag("--random", tauber.random, "Use a seeded random game");
  tauber_cmd->add_option("--seed", tauber.seed, "Seed for --random");
  tauber_cmd->add_option("--states", tauber.states, "States for --random")->check(CLI::PositiveNumber);
  tauber_cmd->add_option("--actions", tauber.actions, "Actions per player for --random")
      ->check(CLI::PositiveNumber);
  tauber_cmd->add_option("--n", tauber.n_schedule, "Increasing list of n")->delimiter(',');

  CounterexampleArgs ce;
  auto* ce_cmd = app.add_subcommand("counterexample", "Closed-form sweep of the one-shot games");
  add_common(ce_cmd, ce.common);
  ce_cmd->add_option("--r", ce.params.r, "Progression step");
  ce_cmd->add_option("--x", ce.params.x, "Quit payoff in (1/2, 1)");
  ce_cmd->add_option("--lambda-min", ce.lambda_min, "Smallest discount factor of the sweep");
  ce_cmd->add_option("--window-slack", ce.params.window_slack, "Argmax search margin in units of r");

  HiddenArgs hidden;
  auto* hidden_cmd = app.add_subcommand("hidden", "Values on a belief grid of a hidden game");
  add_common(hidden_cmd, hidden.common);
  hidden_cmd->add_option("--game", hidden.game, "Hidden game JSON file")->required();
  hidden_cmd->add_option("--grid", hidden.grid, "Grid denominator d")->check(CLI::PositiveNumber);
  hidden_cmd->add_option("--n", hidden.n, "Number of stages");
  hidden_cmd->add_option("--lambda", hidden.lambda, "Discount factor");
  hidden_cmd->add_flag("!--no-refine", hidden.refine, "Skip the 2d refinement delta");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Randomized property suites");
  add_common(check_cmd, check.common);
  check_cmd->add_option("--suite", check.suite.suite, "operator, lemma1, assumption1 or matrix")
      ->check(CLI::IsMember({"operator", "lemma1", "assumption1", "matrix"}));
  check_cmd->add_option("--fixture", check.suite.fixture, "shapley or doubling")
      ->check(CLI::IsMember({"shapley", "doubling"}));
  check_cmd->add_option("--seed", check.suite.seed, "Base seed");
  check_cmd->add_option("--trials", check.suite.trials, "Number of operators")->check(CLI::PositiveNumber);
  check_cmd->add_option("--draws", check.suite.draws, "Draws per operator")->check(CLI::PositiveNumber);
  check_cmd->add_option("--slack", check.suite.slack, "Allowed violation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*tauber_cmd) return run_tauber(tauber);
    if (*ce_cmd) return run_counterexample(ce);
    if (*hidden_cmd) return run_hidden(hidden);
    if (*check_cmd) return run_check(check);
  } catch (const WindowError& e) {
    std::cerr << "error: " << e.what() << " (lambda = " << num(e.lambda()) << ")\n";
    return kNumericalError;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (residual " << num(e.residual()) << ")\n";
    return kNumericalError;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
