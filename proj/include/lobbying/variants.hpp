#pragma once

// Solvers for the model variants that change the equilibrium structure:
// simultaneous contest moves, non-fungible capital, and the transfer chosen
// by electoral competition. Efficacy and post-win lobbying need no solver of
// their own; they enter through effective_profile.

#include "lobbying/bargaining.hpp"

namespace lobbying {

/// Both sides choose contest spending at once. Requires a homogeneous
/// alpha > 2.
EquilibriumReport solve_simultaneous(const Scenario& scenario);

/// Leftover capital has no outside value. Requires a homogeneous alpha.
EquilibriumReport solve_nonfungible(const Scenario& scenario);

/// Dispatches on scenario.variant.
EquilibriumReport solve(const Scenario& scenario);

struct TransferResult {
  double tau_star = 0.0;
  /// Effective contribution divisor: 2 when alpha > 2, else
  /// alpha + lambda (2 - alpha).
  double chi = 2.0;
  double dug_dtau_closed_form = 0.0;  ///< (1/chi)(alpha - 1 + 1/chi)
  /// Slope of u_G in tau from solving the game on either side of an interior
  /// tau (alpha/2 in the deal regime).
  double dug_dtau_direct = 0.0;
  Scenario base;  ///< input scenario with transfer reset to 0

  double citizen_utility_at(double tau) const;
  double government_utility_at(double tau) const;
};

/// Requires a homogeneous alpha and the baseline variant. The scenario's own
/// transfer is ignored.
TransferResult optimal_transfer(const Scenario& scenario);

}  // namespace lobbying
