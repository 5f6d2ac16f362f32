#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tauber/counterexample.hpp"
#include "tauber/errors.hpp"
#include "tauber/game_io.hpp"
#include "tauber/hidden_game.hpp"
#include "tauber/matrix_game.hpp"
#include "tauber/operator.hpp"
#include "tauber/stochastic_game.hpp"
#include "tauber/suites.hpp"

namespace py = pybind11;
using namespace tauber;

namespace {

std::vector<double> to_list(const ValueVector& v) { return v.data(); }

py::dict values_dict(const GameValues& v) {
  py::dict d;
  d["v_n"] = to_list(v.v_n);
  d["v_lambda"] = to_list(v.v_lambda);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Values of zero-sum stochastic games, Tauberian checks and a closed-form counterexample";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<WindowError>(m, "WindowError", PyExc_RuntimeError);
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  // Matrix games

  py::class_<GameSolution>(m, "GameSolution")
      .def_readonly("value", &GameSolution::value)
      .def_readonly("row_strategy", &GameSolution::row_strategy)
      .def_readonly("col_strategy", &GameSolution::col_strategy)
      .def_readonly("duality_gap", &GameSolution::duality_gap);

  m.def(
      "solve_matrix_game",
      [](const std::vector<std::vector<double>>& rows, double tol) {
        return solve_matrix_game(MatrixGame::from_rows(rows), tol);
      },
      py::arg("payoff"), py::arg("tol") = 1e-9, "Value and optimal strategies; rows maximize.");

  // Operators

  py::class_<Operator>(m, "Operator")
      .def(py::init([](std::size_t dim, std::function<std::vector<double>(std::vector<double>)> fn,
                       double constant, double bound, std::string name) {
             return Operator(
                 dim, [fn](const ValueVector& f) { return ValueVector(fn(f.data())); }, constant, bound,
                 std::move(name));
           }),
           py::arg("dim"), py::arg("map"), py::arg("assumption_constant"), py::arg("payoff_bound"),
           py::arg("name") = "python")
      .def("__call__", [](const Operator& op, std::vector<double> f) { return to_list(op(ValueVector(std::move(f)))); })
      .def_property_readonly("dim", &Operator::dim)
      .def_property_readonly("assumption_constant", &Operator::assumption_constant)
      .def_property_readonly("name", &Operator::name);

  m.def("n_stage_value", [](const Operator& op, std::size_t n) { return to_list(n_stage_value(op, n)); },
        py::arg("op"), py::arg("n"));
  m.def(
      "discounted_value",
      [](const Operator& op, double lambda, double tol, std::size_t max_iterations) {
        const IterationReport r = discounted_value(op, lambda, {.tol = tol, .max_iterations = max_iterations});
        py::dict d;
        d["value"] = to_list(r.value);
        d["iterations"] = r.iterations_used;
        d["residual"] = r.residual;
        return d;
      },
      py::arg("op"), py::arg("lambda_"), py::arg("tol") = 1e-9, py::arg("max_iterations") = 1'000'000);
  m.def(
      "tauberian_gap",
      [](const Operator& op, const std::vector<std::size_t>& schedule, double tol) {
        std::vector<std::pair<std::size_t, double>> rows;
        for (const GapRow& r : tauberian_gap(op, schedule, tol)) rows.emplace_back(r.n, r.gap);
        return rows;
      },
      py::arg("op"), py::arg("schedule"), py::arg("tol") = 1e-9);
  m.def(
      "check_assumption1",
      [](const Operator& op, std::size_t samples, std::uint64_t seed) {
        const Assumption1Check c = check_assumption1(op, samples, seed);
        return py::make_tuple(c.max_ratio, c.passed);
      },
      py::arg("op"), py::arg("samples"), py::arg("seed"));

  // Finite games

  py::class_<FiniteGame>(m, "FiniteGame")
      .def_readonly("num_states", &FiniteGame::num_states)
      .def_readonly("actions1", &FiniteGame::actions1)
      .def_readonly("actions2", &FiniteGame::actions2)
      .def_readonly("state_names", &FiniteGame::state_names)
      .def_static("repeated", &FiniteGame::repeated, py::arg("payoff"))
      .def("to_json", [](const FiniteGame& g) { return game_to_json(g); });

  m.def("load_game", &load_game, py::arg("path"));
  m.def("parse_game", &parse_game, py::arg("text"));
  m.def(
      "random_game",
      [](std::uint64_t seed, std::size_t states, std::size_t actions1, std::size_t actions2, double sparsity) {
        return random_game(
            {.seed = seed, .num_states = states, .actions1 = actions1, .actions2 = actions2, .sparsity = sparsity});
      },
      py::arg("seed"), py::arg("states") = 3, py::arg("actions1") = 2, py::arg("actions2") = 2,
      py::arg("sparsity") = 0.0);
  m.def("shapley_operator", &shapley_operator, py::arg("game"), py::arg("tol") = 1e-9);
  m.def(
      "game_values",
      [](const FiniteGame& g, std::size_t n, double lambda, double tol) {
        return values_dict(game_values(g, n, lambda, tol));
      },
      py::arg("game"), py::arg("n"), py::arg("lambda_"), py::arg("tol") = 1e-9);

  // Hidden games

  py::class_<HiddenGameSpec>(m, "HiddenGame")
      .def_readonly("num_states", &HiddenGameSpec::num_states)
      .def_readonly("num_signals", &HiddenGameSpec::num_signals)
      .def("transition_marginal", &HiddenGameSpec::transition_marginal);
  m.def("load_hidden_game", &load_hidden_game, py::arg("path"));
  m.def("parse_hidden_game", &parse_hidden_game, py::arg("text"));
  m.def(
      "belief_update",
      [](const HiddenGameSpec& s, const BeliefPoint& prior, std::size_t i, std::size_t j, std::size_t a) {
        const BeliefUpdate u = belief_update(s, prior, i, j, a);
        return py::make_tuple(u.posterior, u.signal_probability);
      },
      py::arg("game"), py::arg("prior"), py::arg("i"), py::arg("j"), py::arg("signal"));

  py::class_<BeliefGrid>(m, "BeliefGrid")
      .def(py::init<std::size_t, std::size_t>(), py::arg("num_states"), py::arg("resolution"))
      .def("__len__", &BeliefGrid::size)
      .def("point", &BeliefGrid::point, py::arg("node"))
      .def("vertex", &BeliefGrid::vertex, py::arg("state"))
      .def("interpolate", &BeliefGrid::interpolate, py::arg("belief"))
      .def("evaluate", &BeliefGrid::evaluate, py::arg("values"), py::arg("belief"));
  m.def(
      "hidden_values",
      [](const HiddenGameSpec& s, const BeliefGrid& grid, std::size_t n, double lambda, double tol) {
        return values_dict(hidden_values(s, grid, n, lambda, tol));
      },
      py::arg("game"), py::arg("grid"), py::arg("n"), py::arg("lambda_"), py::arg("tol") = 1e-9);
  m.def("lipschitz_check",
        py::overload_cast<const BeliefGrid&, const std::vector<double>&>(&lipschitz_check), py::arg("grid"),
        py::arg("values"));

  // Closed-form counterexample

  auto ce = m.def_submodule("counterexample");
  namespace cx = tauber::counterexample;
  py::class_<cx::Params>(ce, "Params")
      .def(py::init([](int r, int window_slack, double x) { return cx::Params{r, window_slack, x}; }),
           py::arg("r") = 2, py::arg("window_slack") = 4, py::arg("x") = 0.6)
      .def_readwrite("r", &cx::Params::r)
      .def_readwrite("window_slack", &cx::Params::window_slack)
      .def_readwrite("x", &cx::Params::x);
  ce.def("f_lambda", &cx::f_lambda, py::arg("n"), py::arg("lambda_"));
  ce.def("g_lambda", &cx::g_lambda, py::arg("a"), py::arg("b"), py::arg("lambda_"));
  ce.def("optimum_location", &cx::optimum_location, py::arg("lambda_"));
  ce.def("value_G", &cx::value_G, py::arg("lambda_"), py::arg("params") = cx::Params{});
  ce.def("value_G_sym", &cx::value_G_sym, py::arg("lambda_"), py::arg("params") = cx::Params{});
  ce.def("value_G1", &cx::value_G1, py::arg("lambda_"), py::arg("params") = cx::Params{});
  ce.def("value_G2", &cx::value_G2, py::arg("lambda_"), py::arg("params") = cx::Params{});
  ce.def("value_G3", &cx::value_G3, py::arg("lambda_"), py::arg("params") = cx::Params{});
  ce.def("value_G4", &cx::value_G4, py::arg("lambda_"), py::arg("params") = cx::Params{});
  ce.def("dyadic_grid", &cx::dyadic_grid, py::arg("first"), py::arg("last"));
  ce.def(
      "oscillation_scan",
      [](const cx::Params& p, const std::vector<double>& grid) {
        const cx::LimitReport r = cx::oscillation_scan(p, grid);
        py::dict d;
        d["liminf"] = r.liminf_estimate;
        d["limsup"] = r.limsup_estimate;
        d["gap"] = r.gap;
        d["tail_cutoff"] = r.tail_cutoff;
        d["oscillation_detected"] = r.oscillation_detected;
        d["classes_separated"] = r.classes_separated;
        return d;
      },
      py::arg("params"), py::arg("grid"));

  // Property suites

  m.def(
      "run_suite",
      [](const std::string& suite, const std::string& fixture, std::uint64_t seed, std::size_t trials,
         std::size_t draws) {
        SuiteOptions o;
        o.suite = suite;
        o.fixture = fixture;
        o.seed = seed;
        o.trials = trials;
        o.draws = draws;
        const SuiteReport r = run_suite(o);
        return py::make_tuple(r.passed(), r.violations);
      },
      py::arg("suite") = "operator", py::arg("fixture") = "shapley", py::arg("seed") = 1,
      py::arg("trials") = 100, py::arg("draws") = 50);
}
