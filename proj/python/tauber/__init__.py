"""Values of zero-sum stochastic games via Shapley operators."""

from ._core import (
    BeliefGrid,
    FiniteGame,
    GameSolution,
    HiddenGame,
    InputError,
    NonConvergenceError,
    Operator,
    SolverError,
    WindowError,
    belief_update,
    check_assumption1,
    counterexample,
    discounted_value,
    game_values,
    hidden_values,
    lipschitz_check,
    load_game,
    load_hidden_game,
    n_stage_value,
    parse_game,
    parse_hidden_game,
    random_game,
    run_suite,
    shapley_operator,
    solve_matrix_game,
    tauberian_gap,
)

__version__ = "0.1.0"
