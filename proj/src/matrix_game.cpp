#include "tauber/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tauber/errors.hpp"

namespace tauber {

MatrixGame::MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> payoff)
    : rows_(rows), cols_(cols), payoff_(std::move(payoff)) {
  if (rows_ == 0 || cols_ == 0) throw InputError("matrix game needs at least one row and column");
  if (payoff_.size() != rows_ * cols_) throw InputError("matrix game payoff has wrong size");
  for (double x : payoff_) {
    if (!std::isfinite(x)) throw InputError("matrix game payoff must be finite");
  }
}

MatrixGame MatrixGame::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InputError("matrix game is empty");
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw InputError("matrix game rows have different lengths");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MatrixGame(rows.size(), cols, std::move(flat));
}

MatrixGame MatrixGame::negated_transpose() const {
  std::vector<double> out(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = -payoff_[i * cols_ + j];
  }
  return MatrixGame(cols_, rows_, std::move(out));
}

namespace {

GameSolution pure_solution(const MatrixGame& game, std::size_t i, std::size_t j) {
  GameSolution sol;
  sol.value = game(i, j);
  sol.row_strategy.assign(game.rows(), 0.0);
  sol.col_strategy.assign(game.cols(), 0.0);
  sol.row_strategy[i] = 1.0;
  sol.col_strategy[j] = 1.0;
  return sol;
}

// Pure saddle point: max_i min_j M = min_j max_i M.
bool find_saddle(const MatrixGame& game, std::size_t& row, std::size_t& col) {
  double lower = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < game.rows(); ++i) {
    std::size_t arg = 0;
    for (std::size_t j = 1; j < game.cols(); ++j) {
      if (game(i, j) < game(i, arg)) arg = j;
    }
    if (game(i, arg) > lower) {
      lower = game(i, arg);
      row = i;
    }
  }
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < game.cols(); ++j) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < game.rows(); ++i) {
      if (game(i, j) > game(arg, j)) arg = i;
    }
    if (game(arg, j) < upper) {
      upper = game(arg, j);
      col = j;
    }
  }
  return lower == upper;
}

// Solves max Σy s.t. A y ≤ 1, y ≥ 0 for a strictly positive m×n matrix A.
// Returns the primal y and the dual prices x (one per constraint row).
struct LpResult {
  std::vector<double> primal;
  std::vector<double> dual;
  double objective = 0.0;
};

LpResult solve_packing_lp(std::size_t m, std::size_t n, const std::vector<double>& a) {
  const std::size_t width = n + m + 1;  // structural, slack, rhs
  std::vector<double> tableau(m * width, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tableau[i * width + j] = a[i * n + j];
    tableau[i * width + n + i] = 1.0;
    tableau[i * width + n + m] = 1.0;
  }
  // Reduced costs c_j − z_j for maximization; positive means improving.
  std::vector<double> reduced(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) reduced[j] = 1.0;
  double objective = 0.0;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  constexpr double kPivotEps = 1e-12;
  const std::size_t cap = 50 * (m + n) + 1000;
  for (std::size_t iter = 0;; ++iter) {
    if (iter >= cap) {
      throw SolverError("simplex pivot cap reached (" + std::to_string(cap) + " pivots, " +
                        std::to_string(m) + "x" + std::to_string(n) + " game)");
    }
    std::size_t entering = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (reduced[j] > kPivotEps) {
        entering = j;
        break;
      }
    }
    if (entering == n + m) break;

    std::size_t leaving = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double coef = tableau[i * width + entering];
      if (coef <= kPivotEps) continue;
      const double ratio = tableau[i * width + n + m] / coef;
      if (ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && leaving < m && basis[i] < basis[leaving])) {
        best_ratio = ratio;
        leaving = i;
      }
    }
    if (leaving == m) throw SolverError("simplex: unbounded direction in packing LP");

    const double pivot = tableau[leaving * width + entering];
    for (std::size_t c = 0; c < width; ++c) tableau[leaving * width + c] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving) continue;
      const double factor = tableau[i * width + entering];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) {
        tableau[i * width + c] -= factor * tableau[leaving * width + c];
      }
    }
    const double factor = reduced[entering];
    for (std::size_t c = 0; c < n + m; ++c) reduced[c] -= factor * tableau[leaving * width + c];
    objective += factor * tableau[leaving * width + n + m];
    basis[leaving] = entering;
  }

  LpResult out;
  out.primal.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.primal[basis[i]] = tableau[i * width + n + m];
  }
  out.dual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) out.dual[i] = std::max(0.0, -reduced[n + i]);
  out.objective = objective;
  return out;
}

void normalize(std::vector<double>& p) {
  double total = 0.0;
  for (double& x : p) {
    x = std::max(0.0, x);
    total += x;
  }
  for (double& x : p) x /= total;
}

}  // namespace

GameSolution solve_matrix_game(const MatrixGame& game, double tol) {
  if (!(tol > 0.0)) throw InputError("solve_matrix_game: tol must be positive");

  std::size_t row = 0;
  std::size_t col = 0;
  if (find_saddle(game, row, col)) return pure_solution(game, row, col);

  const auto [lo_it, hi_it] = std::minmax_element(game.payoff().begin(), game.payoff().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;  // > 0, otherwise a saddle exists

  // Map payoffs affinely onto [1, 2] so the LP is well scaled and strictly positive.
  std::vector<double> a(game.payoff().size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = 1.0 + (game.payoff()[k] - lo) / range;

  const LpResult lp = solve_packing_lp(game.rows(), game.cols(), a);
  if (!(lp.objective > 0.0)) throw SolverError("simplex: nonpositive packing objective");

  GameSolution sol;
  sol.col_strategy = lp.primal;
  sol.row_strategy = lp.dual;
  normalize(sol.col_strategy);
  normalize(sol.row_strategy);
  sol.value = lo + range * (1.0 / lp.objective - 1.0);
  sol.duality_gap = verify_solution(game, sol);
  if (sol.duality_gap > tol * std::max(1.0, range)) {
    throw SolverError("matrix game certificate gap " + std::to_string(sol.duality_gap) +
                      " exceeds tolerance on " + std::to_string(game.rows()) + "x" +
                      std::to_string(game.cols()) + " game");
  }
  return sol;
}

double matrix_game_value(const MatrixGame& game, double tol) {
  return solve_matrix_game(game, tol).value;
}

double verify_solution(const MatrixGame& game, const GameSolution& solution) {
  if (solution.row_strategy.size() != game.rows() || solution.col_strategy.size() != game.cols()) {
    throw InputError("verify_solution: strategy dimensions do not match the game");
  }
  double violation = 0.0;
  auto simplex_violation = [](const std::vector<double>& p) {
    double total = 0.0;
    double worst = 0.0;
    for (double x : p) {
      total += x;
      worst = std::max(worst, -x);
    }
    return std::max(worst, std::abs(total - 1.0));
  };
  violation = std::max(simplex_violation(solution.row_strategy),
                       simplex_violation(solution.col_strategy));

  double guaranteed_row = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < game.cols(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < game.rows(); ++i) acc += solution.row_strategy[i] * game(i, j);
    guaranteed_row = std::min(guaranteed_row, acc);
  }
  double guaranteed_col = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < game.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < game.cols(); ++j) acc += game(i, j) * solution.col_strategy[j];
    guaranteed_col = std::max(guaranteed_col, acc);
  }
  violation = std::max(violation, solution.value - guaranteed_row);
  violation = std::max(violation, guaranteed_col - solution.value);
  return std::max(0.0, violation);
}

}  // namespace tauber
