#pragma once

#include <cstddef>
#include <vector>

namespace tauber {

/// Finite zero-sum game; the row player maximizes.
class MatrixGame {
 public:
  /// Row-major payoff of size rows × cols. Throws InputError on empty or non-finite data.
  MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> payoff);
  static MatrixGame from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return payoff_[i * cols_ + j]; }
  const std::vector<double>& payoff() const noexcept { return payoff_; }

  /// −Mᵀ: the same game seen from the column player.
  MatrixGame negated_transpose() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> payoff_;
};

struct GameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double duality_gap = 0.0;
};

/// Value and optimal mixed strategies via the shifted-payoff linear program,
/// solved by a dense simplex with least-index (Bland) pivoting.
/// Throws SolverError if the pivot cap is reached or the certificate gap
/// exceeds tol·max(1, payoff range).
GameSolution solve_matrix_game(const MatrixGame& game, double tol = 1e-9);

/// Value only. Same as solve_matrix_game(game, tol).value.
double matrix_game_value(const MatrixGame& game, double tol = 1e-9);

/// Independent certificate: max of value − min_j (xᵀM)_j, max_i (My)_i − value,
/// and any simplex violation of the two strategies. Zero at an exact solution.
double verify_solution(const MatrixGame& game, const GameSolution& solution);

}  // namespace tauber
