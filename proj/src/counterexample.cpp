#include "tauber/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tauber/errors.hpp"

namespace tauber::counterexample {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InputError("lambda must lie in (0, 1], got " + std::to_string(lambda));
  }
}

struct FValue {
  double value;
  double complement;
};

FValue evaluate_f(std::int64_t n, double lambda) {
  require_lambda(lambda);
  if (n < 0) throw InputError("f_lambda: n must be nonnegative");
  if (n == 0) return {0.0, 1.0};
  if (lambda == 1.0) return {0.0, 1.0};

  const double nd = static_cast<double>(n);
  const double one_minus_sq = (1.0 - lambda) * (1.0 + lambda);
  const double tail = std::exp2(-nd);
  const double numerator = (1.0 - tail) * one_minus_sq;
  const double log_e = (nd + 1.0) * std::log(2.0) + std::log(lambda) - nd * std::log1p(-lambda);

  if (log_e > 700.0) {
    const double inv_e = std::exp(-log_e);
    const double value = numerator * inv_e / (1.0 + (1.0 - lambda) * inv_e);
    return {value, 1.0 - value};
  }
  const double e = std::exp(log_e);
  const double denominator = 1.0 + e - lambda;
  // D − N = E + 2⁻ⁿ(1 − λ²) − λ(1 − λ), and E ≥ 2λ keeps it well conditioned.
  const double gap = e + tail * one_minus_sq - lambda * (1.0 - lambda);
  return {numerator / denominator, gap / denominator};
}

std::int64_t step_of(ActionSet kind, int r) {
  return kind == ActionSet::MultiplesOfR ? r : 2 * static_cast<std::int64_t>(r);
}

std::int64_t first_of(ActionSet kind, int r) { return kind == ActionSet::OddMultiplesOfR ? r : 0; }

double g_from_complements(double fa, double ca, double cb) {
  // (1 − F_b) / ((1 − F_a) + F_a (1 − F_b))
  return cb / (ca + fa * cb);
}

}  // namespace

void Params::validate() const {
  if (r < 2) throw InputError("r must be at least 2");
  if (window_slack < 1) throw InputError("window_slack must be at least 1");
  if (!(x > 0.5 && x < 1.0)) throw InputError("x must lie in (1/2, 1)");
}

std::string to_string(ActionSet kind) {
  switch (kind) {
    case ActionSet::MultiplesOfR:
      return "rN";
    case ActionSet::EvenMultiplesOfR:
      return "2rN";
    case ActionSet::OddMultiplesOfR:
      return "r(2N+1)";
  }
  return "?";
}

double f_lambda(std::int64_t n, double lambda) { return evaluate_f(n, lambda).value; }

double f_lambda_complement(std::int64_t n, double lambda) {
  return evaluate_f(n, lambda).complement;
}

double g_lambda(std::int64_t a, std::int64_t b, double lambda) {
  const FValue fa = evaluate_f(a, lambda);
  const FValue fb = evaluate_f(b, lambda);
  return g_from_complements(fa.value, fa.complement, fb.complement);
}

double optimum_location(double lambda) {
  require_lambda(lambda);
  return -std::log(std::sqrt(2.0 * lambda)) / std::log(2.0);
}

std::int64_t search_window(double lambda, const Params& params) {
  return static_cast<std::int64_t>(std::ceil(2.0 * optimum_location(lambda))) +
         static_cast<std::int64_t>(params.window_slack) * params.r;
}

Argmax argmax_f(double lambda, ActionSet kind, const Params& params) {
  params.validate();
  require_lambda(lambda);
  const std::int64_t limit = search_window(lambda, params);
  const std::int64_t step = step_of(kind, params.r);
  const std::int64_t first = first_of(kind, params.r);
  if (limit < first) {
    throw WindowError("argmax window [0, " + std::to_string(limit) + "] contains no element of " +
                          to_string(kind) + " at lambda=" + std::to_string(lambda),
                      lambda);
  }

  Argmax best;
  best.action = first;
  FValue current = evaluate_f(first, lambda);
  best.max_value = current.value;
  best.complement = current.complement;
  std::int64_t last = first;
  for (std::int64_t a = first + step; a <= limit; a += step) {
    current = evaluate_f(a, lambda);
    if (current.complement < best.complement) {
      best.action = a;
      best.max_value = current.value;
      best.complement = current.complement;
    }
    last = a;
  }
  if (best.action == last && best.complement < 1.0) {
    throw WindowError("maximizer " + std::to_string(best.action) + " over " + to_string(kind) +
                          " sits on the window edge " + std::to_string(limit) +
                          " at lambda=" + std::to_string(lambda) + "; increase window_slack",
                      lambda);
  }
  return best;
}

std::int64_t unconstrained_argmax(double lambda, std::int64_t limit) {
  std::int64_t best = 0;
  double best_complement = evaluate_f(0, lambda).complement;
  for (std::int64_t n = 1; n <= limit; ++n) {
    const double c = evaluate_f(n, lambda).complement;
    if (c < best_complement) {
      best = n;
      best_complement = c;
    }
  }
  return best;
}

namespace {

double value_against(double lambda, ActionSet opponent, const Params& params) {
  const Argmax a = argmax_f(lambda, ActionSet::MultiplesOfR, params);
  const Argmax b = argmax_f(lambda, opponent, params);
  return g_from_complements(a.max_value, a.complement, b.complement);
}

}  // namespace

double value_G(double lambda, const Params& params) {
  return value_against(lambda, ActionSet::EvenMultiplesOfR, params);
}

double value_G_sym(double lambda, const Params& params) {
  const Argmax a = argmax_f(lambda, ActionSet::MultiplesOfR, params);
  return 1.0 / (1.0 + a.max_value);
}

double value_G1(double lambda, const Params& params) {
  return lambda / 2.0 + (1.0 - lambda) * value_G(lambda, params);
}

double value_G2(double lambda, const Params& params) {
  return lambda / 2.0 + (1.0 - lambda) * value_against(lambda, ActionSet::OddMultiplesOfR, params);
}

double value_G3(double lambda, const Params& params) {
  return lambda * (2.0 - lambda) / 2.0 + (1.0 - lambda) * (1.0 - lambda) * value_G_sym(lambda, params);
}

double value_G4(double lambda, const Params& params) {
  params.validate();
  return lambda / 2.0 + (1.0 - lambda) * std::min(value_G3(lambda, params), params.x);
}

bool g4_continues(double lambda, const Params& params) {
  params.validate();
  return value_G3(lambda, params) <= params.x;
}

std::int64_t property3_exponent(int r, std::int64_t m) { return 4 * r * m + 2 * r + 1; }

std::int64_t step2_exponent(int r, std::int64_t m) { return 4 * r * m + 1; }

std::vector<double> dyadic_grid(int first, int last) {
  if (first < 0 || last < first) throw InputError("dyadic_grid: need 0 <= first <= last");
  std::vector<double> grid;
  for (int j = first; j <= last; ++j) grid.push_back(std::ldexp(1.0, -j));
  return grid;
}

std::vector<double> sweep_grid(double lambda_min) {
  if (!(lambda_min > 0.0 && lambda_min <= 0.25)) {
    throw InputError("sweep_grid: lambda_min must lie in (0, 1/4]");
  }
  int last = 2;
  while (std::ldexp(1.0, -last) > lambda_min) ++last;
  return dyadic_grid(2, last);
}

SweepRow sweep_row(double lambda, const Params& params) {
  SweepRow row;
  row.lambda = lambda;
  row.g = value_G(lambda, params);
  row.g_sym = value_G_sym(lambda, params);
  row.g1 = value_G1(lambda, params);
  row.g2 = value_G2(lambda, params);
  row.g3 = value_G3(lambda, params);
  row.g4 = value_G4(lambda, params);
  row.argmax_multiples = argmax_f(lambda, ActionSet::MultiplesOfR, params).action;
  row.argmax_even = argmax_f(lambda, ActionSet::EvenMultiplesOfR, params).action;
  row.argmax_odd = argmax_f(lambda, ActionSet::OddMultiplesOfR, params).action;
  return row;
}

std::vector<SweepRow> sweep(const std::vector<double>& lambda_grid, const Params& params) {
  params.validate();
  std::vector<SweepRow> rows;
  rows.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) rows.push_back(sweep_row(lambda, params));
  return rows;
}

std::string to_string(SampleSource source) {
  switch (source) {
    case SampleSource::Grid:
      return "grid";
    case SampleSource::EvenAligned:
      return "even";
    case SampleSource::OddAligned:
      return "odd";
  }
  return "?";
}

namespace {

void require_scan_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InputError("lambda grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 1.0)) throw InputError("lambda grid must lie in (0, 1]");
    if (i > 0 && !(grid[i] < grid[i - 1])) {
      throw InputError("lambda grid must be strictly decreasing");
    }
  }
  if (grid.back() > 1e-10) throw InputError("lambda grid must reach 1e-10");
}

std::int64_t scan_limit(double lambda) {
  return static_cast<std::int64_t>(std::ceil(4.0 * std::max(0.0, optimum_location(lambda)))) + 16;
}

}  // namespace

LimitReport oscillation_scan(const Params& params, const std::vector<double>& lambda_grid) {
  params.validate();
  require_scan_grid(lambda_grid);

  LimitReport report;
  report.lambda_grid = lambda_grid;
  for (double lambda : lambda_grid) {
    report.samples.push_back(LimitSample{lambda, value_G(lambda, params), SampleSource::Grid,
                                         unconstrained_argmax(lambda, scan_limit(lambda))});
  }

  // λ = 2^{−2m−1} puts the real maximizer t(λ) exactly on m.
  const double smallest = lambda_grid.back();
  for (std::int64_t m = params.r;; m += params.r) {
    const double lambda = std::ldexp(1.0, static_cast<int>(-2 * m - 1));
    if (lambda < smallest) break;
    const std::int64_t maximizer = unconstrained_argmax(lambda, scan_limit(lambda));
    SampleSource source;
    if (maximizer % (2 * params.r) == 0) {
      source = SampleSource::EvenAligned;
    } else if (maximizer % params.r == 0) {
      source = SampleSource::OddAligned;
    } else {
      continue;
    }
    report.samples.push_back(LimitSample{lambda, value_G(lambda, params), source, maximizer});
  }

  std::vector<double> aligned;
  for (const LimitSample& s : report.samples) {
    if (s.source != SampleSource::Grid) aligned.push_back(s.lambda);
  }
  const double largest = aligned.empty() ? lambda_grid.front()
                                         : *std::max_element(aligned.begin(), aligned.end());
  report.tail_cutoff = std::sqrt(largest * smallest);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double max_even = -std::numeric_limits<double>::infinity();
  double min_odd = std::numeric_limits<double>::infinity();
  for (const LimitSample& s : report.samples) {
    if (s.lambda > report.tail_cutoff) continue;
    lo = std::min(lo, s.value);
    hi = std::max(hi, s.value);
    if (s.source == SampleSource::EvenAligned) max_even = std::max(max_even, s.value);
    if (s.source == SampleSource::OddAligned) min_odd = std::min(min_odd, s.value);
  }
  report.liminf_estimate = lo;
  report.limsup_estimate = hi;
  report.gap = hi - lo;
  report.oscillation_detected = report.gap > 0.0;
  report.classes_separated = std::isfinite(max_even) && std::isfinite(min_odd) && min_odd > max_even;
  return report;
}

DistinctLimitsSummary distinct_limits_report(const Params& params,
                                             const std::vector<double>& lambda_grid) {
  params.validate();
  require_scan_grid(lambda_grid);

  DistinctLimitsSummary summary;
  summary.envelope_min = std::numeric_limits<double>::infinity();
  summary.envelope_max = -std::numeric_limits<double>::infinity();
  for (double lambda : lambda_grid) {
    const double v = value_G4(lambda, params);
    summary.envelope_min = std::min(summary.envelope_min, v);
    summary.envelope_max = std::max(summary.envelope_max, v);
  }
  summary.smallest_lambda = lambda_grid.back();
  summary.discounted_estimate = value_G4(summary.smallest_lambda, params);
  summary.first_deviation = std::abs(value_G4(lambda_grid.front(), params) - 0.5);
  summary.last_deviation = std::abs(summary.discounted_estimate - 0.5);
  summary.deviation_decreasing = summary.last_deviation < summary.first_deviation;
  summary.n_stage_limit = params.x;
  summary.n_stage_computed = false;
  summary.n_stage_note =
      "asserted for the full hidden game and not computed here; needs its internal construction";
  return summary;
}

}  // namespace tauber::counterexample
