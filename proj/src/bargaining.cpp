#include "lobbying/bargaining.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lobbying {

const char* branch_tag(Branch b) noexcept {
  switch (b) {
    case Branch::AllDeals: return "(i)";
    case Branch::NoDeals: return "(ii)";
    case Branch::DealsToAdequacy: return "(iii)";
    case Branch::HeterogeneousCutoff: return "cutoff";
    case Branch::SimultaneousDeals: return "simultaneous-deals";
    case Branch::SimultaneousNoDeals: return "simultaneous-no-deals";
  }
  return "unknown";
}

BargainBounds bargain_bounds(const LawProfile& profile, double adequacy, Variant variant) {
  if (!(adequacy >= 0.0)) throw std::invalid_argument("bargain_bounds: Z must be nonnegative");
  const LawProfile eff = effective_profile(profile);
  const double pi = eff.pi;
  const double alpha = eff.alpha;
  if (!(alpha > 1.0)) throw ValidationError("alpha", "alpha must exceed 1");

  BargainBounds out;
  if (variant == Variant::Simultaneous) {
    const double r = alpha / (alpha + 1.0);
    const double threshold = r * r;
    if (adequacy <= threshold + kThresholdTolerance) {
      const double z = std::min(adequacy, threshold);
      const double root = std::sqrt(z);
      out.b_max = pi * (2.0 * root - z);
      // (p alpha pi - L)/(1 + mu) - K with the simultaneous-stage multiplier.
      out.b_min = pi * z * (root / (1.0 - root) - 1.0 / alpha);
    } else {
      out.b_max = pi * r * (alpha + 2.0) / (alpha + 1.0);
      out.b_min = pi * alpha * (alpha - 1.0) / (alpha + 1.0);
    }
    out.feasible = *out.b_min <= out.b_max;
    return out;
  }

  if (adequacy <= 1.0 + kThresholdTolerance) {
    const double z = std::min(adequacy, 1.0);
    out.b_min = pi * z;
    out.b_max = pi * (2.0 * std::sqrt(z) - z);
    out.feasible = true;
    return out;
  }

  out.b_max = pi;
  if (variant == Variant::NonFungible) {
    out.b_min.reset();  // capital past adequacy is worthless: never deals
    out.feasible = false;
  } else {
    out.b_min = pi * (alpha - 1.0);
    out.feasible = alpha <= 2.0;
  }
  return out;
}

namespace detail {

DealCut deal_in_order(const Segments& effective, const std::vector<std::size_t>& order,
                      double target, double rate_per_pi, DealBook& deals) {
  double scale = 0.0;
  for (const auto& s : effective) scale += s.mass * s.profile.pi;
  const double tol = 1e-12 * std::max(1.0, scale);

  double remaining = target;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    const double weight = effective[i].mass * effective[i].profile.pi;
    if (!(weight > 0.0)) continue;
    if (remaining <= tol) return {pos, false};
    Deal& d = deals.entries[i];
    d.contribution_rate = rate_per_pi * effective[i].profile.pi;
    if (weight <= remaining + tol) {
      d.dealt_fraction = 1.0;
      remaining -= weight;
    } else {
      d.dealt_fraction = remaining / weight;
      return {pos, true};
    }
  }
  return {order.size(), false};
}

}  // namespace detail

EquilibriumReport assemble_report(const Scenario& scenario, Segments effective, DealBook deals,
                                  Branch branch, std::string diagnostics) {
  EquilibriumReport r;
  r.variant = scenario.variant;
  r.branch = branch;
  r.diagnostics = std::move(diagnostics);

  double contributions = 0.0;
  double dealt_importance = 0.0;
  for (std::size_t i = 0; i < effective.size(); ++i) {
    const double dealt_mass = effective[i].mass * deals.entries[i].dealt_fraction;
    contributions += dealt_mass * deals.entries[i].contribution_rate;
    dealt_importance += dealt_mass * effective[i].profile.pi;
  }
  const double total_capital = scenario.government_capital + scenario.transfer + contributions;
  r.allocation = allocate_contests(effective, deals, total_capital, scenario.variant);

  double loss = 0.0;
  r.group_utilities.resize(effective.size());
  for (std::size_t i = 0; i < effective.size(); ++i) {
    const auto& s = effective[i];
    const auto& law = r.allocation.laws[i];
    const double theta = deals.entries[i].dealt_fraction;
    const double harm = s.profile.alpha * s.profile.pi;
    loss += s.mass * (theta * harm + (1.0 - theta) * harm * (1.0 - law.win_probability));
    r.group_utilities[i].dealt = s.profile.pi - deals.entries[i].contribution_rate;
    r.group_utilities[i].contested = (1.0 - law.win_probability) * s.profile.pi - law.lobbying;
  }

  r.government_utility = -loss - r.allocation.total_lobbying;
  if (scenario.variant != Variant::NonFungible) r.government_utility += r.allocation.unspent_capital;
  r.citizen_loss = loss;
  r.citizen_utility = -loss - scenario.transfer;
  r.adequacy = r.allocation.adequacy;
  r.dealt_importance = dealt_importance;
  r.total_contributions = contributions;
  r.total_contest_spend = r.allocation.spent_capital;
  r.effective = std::move(effective);
  r.deals = std::move(deals);
  return r;
}

EquilibriumReport solve_equilibrium(const Scenario& scenario) {
  validate(scenario);
  if (scenario.variant != Variant::Sequential)
    throw UnsupportedCombination(std::string("solve_equilibrium covers the baseline game; got variant ") +
                                 to_string(scenario.variant));

  Segments eff = effective_segments(scenario.population);
  const auto alpha = homogeneous_alpha(eff);
  if (!alpha) return heterogeneous_cutoff(scenario).second;

  const double capital = scenario.government_capital + scenario.transfer;
  double total = 0.0;
  for (const auto& s : eff) total += s.mass * s.profile.pi;

  DealBook deals = DealBook::none(eff.size());
  if (*alpha <= 2.0 + kThresholdTolerance) {
    const double lambda = scenario.bargain_select;
    const double rate = (*alpha - 1.0) + lambda * (2.0 - *alpha);
    for (std::size_t i = 0; i < eff.size(); ++i) {
      if (!(eff[i].mass > 0.0) || !(eff[i].profile.pi > 0.0)) continue;
      deals.entries[i] = {1.0, rate * eff[i].profile.pi};
    }
    auto r = assemble_report(scenario, std::move(eff), std::move(deals), Branch::AllDeals,
                             "alpha <= 2: every law conceded, B = pi*[(alpha-1) + lambda(2-alpha)]");
    r.multiple_equilibria = *alpha < 2.0;
    return r;
  }

  if (capital >= total) {
    return assemble_report(scenario, std::move(eff), std::move(deals), Branch::NoDeals,
                           "alpha > 2 and endowment covers all importance: no deals");
  }

  std::vector<std::size_t> order(eff.size());
  std::iota(order.begin(), order.end(), 0);
  detail::deal_in_order(eff, order, 0.5 * (total - capital), 1.0, deals);
  auto r = assemble_report(scenario, std::move(eff), std::move(deals), Branch::DealsToAdequacy,
                           "alpha > 2, endowment short: deals in list order until Z = 1");
  r.multiple_equilibria = true;
  if (std::abs(r.adequacy - 1.0) > 1e-9) throw InvariantBreach("deal set did not reach Z = 1");
  return r;
}

std::pair<CutoffResult, EquilibriumReport> heterogeneous_cutoff(const Scenario& scenario) {
  validate(scenario);
  if (scenario.variant != Variant::Sequential)
    throw UnsupportedCombination("the heterogeneous-harms cutoff is only characterised for the baseline game");

  Segments eff = effective_segments(scenario.population);
  for (std::size_t i = 0; i < eff.size(); ++i) {
    if (eff[i].mass > 0.0 && eff[i].profile.pi > 0.0 && !(eff[i].profile.alpha > 2.0))
      throw PreconditionError("heterogeneous cutoff requires alpha > 2 for every law (entry " +
                              std::to_string(i) + " has effective alpha " +
                              std::to_string(eff[i].profile.alpha) + ")");
  }

  const double capital = scenario.government_capital + scenario.transfer;
  double total = 0.0;
  for (const auto& s : eff) total += s.mass * s.profile.pi;

  CutoffResult cut;
  DealBook deals = DealBook::none(eff.size());
  if (capital < total) {
    std::vector<std::size_t> order(eff.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return eff[a].profile.alpha < eff[b].profile.alpha;
    });
    const auto where = detail::deal_in_order(eff, order, 0.5 * (total - capital), 1.0, deals);

    auto contributes = [&](std::size_t i) { return eff[i].mass > 0.0 && eff[i].profile.pi > 0.0; };
    if (where.split) {
      cut.alpha_bar = eff[order[where.next]].profile.alpha;
    } else {
      std::optional<double> last_dealt, first_contested;
      for (std::size_t pos = where.next; pos-- > 0;)
        if (contributes(order[pos])) { last_dealt = eff[order[pos]].profile.alpha; break; }
      for (std::size_t pos = where.next; pos < order.size(); ++pos)
        if (contributes(order[pos])) { first_contested = eff[order[pos]].profile.alpha; break; }
      if (last_dealt && first_contested)
        cut.alpha_bar = 0.5 * (*last_dealt + *first_contested);
      else if (first_contested)
        cut.alpha_bar = *first_contested;
      else
        cut.alpha_bar = last_dealt ? *last_dealt : kInfinity;
    }
  }

  auto report = assemble_report(scenario, std::move(eff), std::move(deals),
                                Branch::HeterogeneousCutoff,
                                capital < total ? "heterogeneous harms: least harmful laws conceded up to Z = 1"
                                                : "heterogeneous harms: endowment covers all importance, no deals");
  cut.dealt_importance = report.dealt_importance;
  cut.budget_residual = report.allocation.contestable_importance -
                        (capital + report.total_contributions);
  report.cutoff = cut;
  return {cut, std::move(report)};
}

std::vector<EndowmentRow> contribution_totals_vs_endowment(const Scenario& scenario,
                                                           const std::vector<double>& grid) {
  std::vector<EndowmentRow> rows;
  rows.reserve(grid.size());
  for (double kg : grid) {
    Scenario s = scenario;
    s.government_capital = kg;
    const auto r = solve_equilibrium(s);
    rows.push_back({kg, r.dealt_importance, r.total_contributions, r.total_contest_spend});
  }
  return rows;
}

bool NashDemandOutcome::sustains(double government_demand, double group_demand) const noexcept {
  if (deal)
    return government_demand == group_demand && group_demand >= lo && group_demand <= hi;
  return government_demand > group_demand && government_demand > government_above &&
         group_demand < group_below;
}

NashDemandOutcome nash_demand_outcomes(const BargainBounds& bounds) {
  NashDemandOutcome out;
  if (bounds.feasible && bounds.b_min) {
    out.deal = true;
    out.lo = *bounds.b_min;
    out.hi = bounds.b_max;
  } else {
    out.government_above = bounds.b_max;
    out.group_below = bounds.b_min.value_or(kInfinity);
  }
  return out;
}

}  // namespace lobbying
