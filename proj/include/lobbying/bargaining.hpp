#pragma once

// Stage-1 bargaining: the bounds within which a deal is mutually acceptable,
// the equilibrium deal sets they imply, and the full equilibrium report.

#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "lobbying/contest.hpp"
#include "lobbying/model.hpp"

namespace lobbying {

struct BargainBounds {
  /// Smallest contribution the government accepts. Empty when the government
  /// never deals (non-fungible capital past adequacy).
  std::optional<double> b_min;
  double b_max = 0.0;  ///< largest contribution the group pays
  bool feasible = false;
};

BargainBounds bargain_bounds(const LawProfile& profile, double adequacy,
                             Variant variant = Variant::Sequential);

struct CutoffResult {
  double alpha_bar = kInfinity;
  double dealt_importance = 0.0;
  /// contested importance - (capital + contributions); ~0 at the solution.
  double budget_residual = 0.0;
};

enum class Branch {
  AllDeals,           ///< alpha <= 2: every law is conceded
  NoDeals,            ///< endowment already covers every contest
  DealsToAdequacy,    ///< deals until Z = 1
  HeterogeneousCutoff,
  SimultaneousDeals,
  SimultaneousNoDeals,
};

const char* branch_tag(Branch b) noexcept;

struct GroupUtility {
  double dealt = 0.0;      ///< per dealt law: pi - B
  double contested = 0.0;  ///< per contested law: (1-p) pi - L
};

struct EquilibriumReport {
  Variant variant = Variant::Sequential;
  Branch branch = Branch::NoDeals;
  /// The deal identities (and, for alpha <= 2, the contribution level) are
  /// one member of a set of equilibria.
  bool multiple_equilibria = false;

  Segments effective;  ///< the effective population the solver worked on
  DealBook deals;
  ContestAllocation allocation;

  double adequacy = 0.0;  ///< Z
  double government_utility = 0.0;
  double citizen_loss = 0.0;      ///< alpha * lost importance
  double citizen_utility = 0.0;   ///< -citizen_loss - transfer
  double dealt_importance = 0.0;
  double total_contributions = 0.0;
  double total_contest_spend = 0.0;
  std::vector<GroupUtility> group_utilities;

  std::optional<CutoffResult> cutoff;
  std::string diagnostics;
};

/// Fills the contest stage and every utility from primitives for a settled
/// dealbook. Shared by all equilibrium solvers.
EquilibriumReport assemble_report(const Scenario& scenario, Segments effective, DealBook deals,
                                  Branch branch, std::string diagnostics);

/// Homogeneous-alpha equilibrium of the baseline game. Heterogeneous alpha is
/// forwarded to heterogeneous_cutoff. Requires the sequential variant.
EquilibriumReport solve_equilibrium(const Scenario& scenario);

/// Cutoff equilibrium for heterogeneous harms; every alpha must exceed 2.
std::pair<CutoffResult, EquilibriumReport> heterogeneous_cutoff(const Scenario& scenario);

struct EndowmentRow {
  double government_capital = 0.0;
  double dealt_importance = 0.0;
  double total_contributions = 0.0;
  double total_contest_spend = 0.0;
};

std::vector<EndowmentRow> contribution_totals_vs_endowment(const Scenario& scenario,
                                                           const std::vector<double>& grid);

/// Undominated-demand outcomes of the simultaneous demand game for one law.
struct NashDemandOutcome {
  bool deal = false;
  /// Deal case: common demands d^G = d on [lo, hi].
  double lo = 0.0;
  double hi = 0.0;
  /// No-deal case: sustained by d^G > government_above and d < group_below.
  double government_above = 0.0;
  double group_below = 0.0;  ///< +inf when b_min is undefined

  bool unique_pair() const noexcept { return deal && lo == hi; }
  /// True when the demand pair (d^G, d) is one of the characterised equilibria.
  bool sustains(double government_demand, double group_demand) const noexcept;
};

NashDemandOutcome nash_demand_outcomes(const BargainBounds& bounds);

namespace detail {
struct DealCut {
  std::size_t next = 0;  ///< position in `order` of the first entry not fully dealt
  bool split = false;    ///< that entry is partially dealt
};

/// Deals whole entries in `order` until `target` importance is reached,
/// splitting the marginal entry. Zero-importance entries are skipped. Dealt
/// entries pay rate_per_pi * pi per unit mass.
DealCut deal_in_order(const Segments& effective, const std::vector<std::size_t>& order,
                      double target, double rate_per_pi, DealBook& deals);
}  // namespace detail

}  // namespace lobbying
