import math
import pathlib

import pytest

import tauber
from tauber import counterexample as ce

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_matching_pennies():
    sol = tauber.solve_matrix_game([[1, -1], [-1, 1]])
    assert abs(sol.value) <= 1e-9
    assert sol.row_strategy == pytest.approx([0.5, 0.5])
    assert sol.duality_gap <= 1e-9


def test_game_file_values():
    game = tauber.load_game(str(DATA / "big_match.json"))
    values = tauber.game_values(game, 20, 0.05)
    assert values["v_lambda"][0] == pytest.approx(0.5, abs=1e-8)


def test_python_operator_and_discounted_value():
    op = tauber.Operator(2, lambda f: [x + 0.25 for x in f], 0.25, 0.25)
    assert op([1.0, 2.0]) == [1.25, 2.25]
    result = tauber.discounted_value(op, 0.1, tol=1e-10)
    assert result["value"] == pytest.approx([0.25, 0.25], abs=1e-9)
    assert tauber.n_stage_value(op, 7) == pytest.approx([0.25, 0.25])


def test_tauberian_gap_of_random_game():
    op = tauber.shapley_operator(tauber.random_game(5))
    rows = tauber.tauberian_gap(op, [50, 100, 200])
    assert [n for n, _ in rows] == [50, 100, 200]
    assert all(gap >= 0 for _, gap in rows)


def test_hidden_game_vertices_match_full_information():
    hidden = tauber.load_hidden_game(str(DATA / "revealing_hidden.json"))
    grid = tauber.BeliefGrid(2, 10)
    hv = tauber.hidden_values(hidden, grid, 10, 0.2)
    full = tauber.game_values(hidden.transition_marginal(), 10, 0.2)
    for k in range(2):
        assert hv["v_lambda"][grid.vertex(k)] == pytest.approx(full["v_lambda"][k], abs=2e-9)
    assert tauber.lipschitz_check(grid, hv["v_lambda"]) <= 1.05


def test_counterexample_values():
    assert ce.f_lambda(0, 0.1) == 0.0
    grid = ce.dyadic_grid(2, 40)
    assert min(ce.value_G(lam) for lam in grid) >= 0.5 - 1e-12
    report = ce.oscillation_scan(ce.Params(), grid)
    assert report["gap"] > 0
    assert abs(ce.value_G4(grid[-1]) - 0.5) < 0.01
    assert ce.optimum_location(1e-4) == pytest.approx(-math.log(math.sqrt(2e-4)) / math.log(2))


def test_suites():
    assert tauber.run_suite("matrix", trials=5, draws=5) == (True, 0)
    passed, violations = tauber.run_suite("operator", fixture="doubling", trials=2, draws=5)
    assert not passed and violations > 0


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        tauber.solve_matrix_game([])
    with pytest.raises(ValueError):
        ce.value_G4(0.1, ce.Params(x=0.4))
    with pytest.raises(ValueError):
        tauber.load_game(str(DATA / "missing.json"))
