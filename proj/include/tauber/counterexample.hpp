#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tauber {

/// One-shot reductions of the hidden game whose discounted and n-stage values
/// converge to different limits. Every value below is closed form in
/// f_λ(n) = (1 − 2⁻ⁿ)(1 − λ²) / (1 + 2ⁿ⁺¹λ(1 − λ)⁻ⁿ − λ).
namespace counterexample {

struct Params {
  /// Action progressions are rℕ, 2rℕ and r(2ℕ+1).
  int r = 2;
  /// Extra search margin (in units of r) beyond ⌈2·t(λ)⌉ for the argmax window.
  int window_slack = 4;
  /// Payoff of the quit option in the final game; must lie in (1/2, 1).
  double x = 0.6;

  void validate() const;
};

enum class ActionSet { MultiplesOfR, EvenMultiplesOfR, OddMultiplesOfR };

std::string to_string(ActionSet kind);

/// f_λ(n) ∈ [0, 1). The 2ⁿ⁺¹λ(1−λ)⁻ⁿ term is handled in log space.
double f_lambda(std::int64_t n, double lambda);

/// 1 − f_λ(n), computed without cancellation.
double f_lambda_complement(std::int64_t n, double lambda);

/// g_λ(a, b) = (1 − f_λ(b)) / (1 − f_λ(a) f_λ(b)) ∈ (0, 1].
double g_lambda(std::int64_t a, std::int64_t b, double lambda);

/// t(λ) = −ln(√(2λ)) / ln 2, the real location of the maximum of f_λ.
double optimum_location(double lambda);

/// Upper end N(λ) = ⌈2·t(λ)⌉ + window_slack·r of the argmax window.
std::int64_t search_window(double lambda, const Params& params);

struct Argmax {
  std::int64_t action = 0;
  double max_value = 0.0;
  /// 1 − max_value, kept separately for accuracy near 1.
  double complement = 1.0;
};

/// Exhaustive maximization of f_λ over the progression ∩ [0, N(λ)], smallest
/// action on ties. Throws WindowError when the maximizer is the last
/// progression element inside the window.
Argmax argmax_f(double lambda, ActionSet kind, const Params& params);

/// Smallest maximizer of f_λ over all integers 0..limit.
std::int64_t unconstrained_argmax(double lambda, std::int64_t limit);

/// One-shot game with actions rℕ (P1) vs 2rℕ (P2).
double value_G(double lambda, const Params& params);
/// Both players on rℕ: [1 + max_{rℕ} f_λ]⁻¹.
double value_G_sym(double lambda, const Params& params);
/// λ/2 + (1 − λ) g_λ(a*, b*), b* over 2rℕ.
double value_G1(double lambda, const Params& params);
/// λ/2 + (1 − λ) g_λ(a*, b*), b* over r(2ℕ+1).
double value_G2(double lambda, const Params& params);
/// λ(2 − λ)/2 + (1 − λ)² [1 + max_{rℕ} f_λ]⁻¹.
double value_G3(double lambda, const Params& params);
/// Player 2 at the root (stage payoff 1/2) either continues into the previous
/// game or quits for x forever: λ/2 + (1 − λ) min(value_G3, x).
double value_G4(double lambda, const Params& params);
/// True when continuing into value_G3 is (weakly) better for Player 2 than quitting.
bool g4_continues(double lambda, const Params& params);

/// Exponents of the documented n-stage subsequences (values 2^exponent).
std::int64_t property3_exponent(int r, std::int64_t m);  // 4rm + 2r + 1
std::int64_t step2_exponent(int r, std::int64_t m);      // 4rm + 1

/// λ = 2^{−j} for j = first..last.
std::vector<double> dyadic_grid(int first, int last);
/// Dyadic grid from 1/4 down to the first 2^{−j} ≤ lambda_min.
std::vector<double> sweep_grid(double lambda_min);

struct SweepRow {
  double lambda = 0.0;
  double g = 0.0;
  double g_sym = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  double g4 = 0.0;
  std::int64_t argmax_multiples = 0;
  std::int64_t argmax_even = 0;
  std::int64_t argmax_odd = 0;
};

SweepRow sweep_row(double lambda, const Params& params);
std::vector<SweepRow> sweep(const std::vector<double>& lambda_grid, const Params& params);

enum class SampleSource { Grid, EvenAligned, OddAligned };

std::string to_string(SampleSource source);

struct LimitSample {
  double lambda = 0.0;
  double value = 0.0;
  SampleSource source = SampleSource::Grid;
  /// Unconstrained integer maximizer of f_λ at this λ.
  std::int64_t maximizer = 0;
};

struct LimitReport {
  std::vector<double> lambda_grid;
  std::vector<LimitSample> samples;
  /// Samples with λ at or below this cutoff form the tail used for the estimates.
  double tail_cutoff = 0.0;
  double liminf_estimate = 0.0;
  double limsup_estimate = 0.0;
  double gap = 0.0;
  bool oscillation_detected = false;
  /// Every odd-aligned tail sample exceeds every even-aligned one.
  bool classes_separated = false;
};

/// value_G on the grid and on λ = 2^{−2m−1} (m ∈ rℕ*), where the maximizer of
/// f_λ is aligned with an even or odd multiple of r. Grid must be in (0, 1],
/// strictly decreasing, and reach 1e−10.
LimitReport oscillation_scan(const Params& params, const std::vector<double>& lambda_grid);

struct DistinctLimitsSummary {
  double smallest_lambda = 0.0;
  double discounted_estimate = 0.0;
  double discounted_limit = 0.5;
  double first_deviation = 0.0;
  double last_deviation = 0.0;
  double envelope_min = 0.0;
  double envelope_max = 0.0;
  bool deviation_decreasing = false;
  double n_stage_limit = 0.0;
  bool n_stage_computed = false;
  std::string n_stage_note;
};

DistinctLimitsSummary distinct_limits_report(const Params& params,
                                             const std::vector<double>& lambda_grid);

}  // namespace counterexample
}  // namespace tauber
