#pragma once

#include <cstddef>
#include <string>

#include "tauber/operator.hpp"
#include "tauber/random.hpp"

namespace tauber {

/// Worst observed violation (lhs − rhs) of one operator law over random draws.
struct LawCheck {
  std::string law;
  std::size_t draws = 0;
  double max_violation = 0.0;
  bool passed = true;
};

/// ‖Ψf − Ψg‖∞ ≤ ‖f − g‖∞.
LawCheck check_nonexpansive(const Operator& op, Rng& rng, std::size_t draws, double slack = 1e-9);

/// f ≤ g entrywise ⇒ Ψf ≤ Ψg entrywise.
LawCheck check_monotone(const Operator& op, Rng& rng, std::size_t draws, double slack = 1e-9);

/// Ψ(f + c·1) = Ψ(f) + c·1.
LawCheck check_additive_homogeneity(const Operator& op, Rng& rng, std::size_t draws,
                                    double slack = 1e-9);

/// Contraction of the discounted map: ‖T_λ f − T_λ g‖ ≤ (1−λ)‖f − g‖.
LawCheck check_discounted_contraction(const Operator& op, Rng& rng, std::size_t draws,
                                      double slack = 1e-9);

/// ‖v_λ − v_λ'‖∞ ≤ A|λ − λ'|/λ' with A = C + max‖v_λ‖ over the sampled pair.
/// λ, λ' are drawn in [0.05, 1] so each fixed point is cheap.
LawCheck check_discounted_lipschitz(const Operator& op, Rng& rng, std::size_t draws,
                                    double tol = 1e-10);

}  // namespace tauber
