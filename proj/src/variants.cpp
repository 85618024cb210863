#include "lobbying/variants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lobbying {

namespace {

double require_homogeneous(const Segments& eff, const char* what) {
  const auto alpha = homogeneous_alpha(eff);
  if (!alpha)
    throw UnsupportedCombination(std::string(what) + " requires a homogeneous alpha across laws");
  return *alpha;
}

double total_importance(const Segments& eff) {
  double total = 0.0;
  for (const auto& s : eff) total += s.mass * s.profile.pi;
  return total;
}

std::vector<std::size_t> list_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

Scenario with_transfer(Scenario s, double tau) {
  s.transfer = tau;
  return s;
}

}  // namespace

EquilibriumReport solve_simultaneous(const Scenario& input) {
  Scenario scenario = input;
  scenario.variant = Variant::Simultaneous;
  validate(scenario);
  Segments eff = effective_segments(scenario.population);
  const double alpha = require_homogeneous(eff, "the simultaneous-move variant");
  if (!(alpha > 2.0))
    throw UnsupportedCombination("the simultaneous-move variant is only characterised for alpha > 2");

  const double capital = scenario.government_capital + scenario.transfer;
  const double total = total_importance(eff);
  const double a1 = alpha + 1.0;
  const double dealt = std::max(0.0, 0.5 * (alpha * total / a1 - a1 * capital / alpha));

  DealBook deals = DealBook::none(eff.size());
  if (dealt > 0.0) {
    detail::deal_in_order(eff, list_order(eff.size()), dealt, alpha * (alpha + 2.0) / (a1 * a1), deals);
    auto r = assemble_report(scenario, std::move(eff), std::move(deals), Branch::SimultaneousDeals,
                             "simultaneous moves: deals until Z = (alpha/(alpha+1))^2 at b_max");
    r.multiple_equilibria = true;
    return r;
  }
  return assemble_report(scenario, std::move(eff), std::move(deals), Branch::SimultaneousNoDeals,
                         "simultaneous moves: endowment large enough that no deal is struck");
}

EquilibriumReport solve_nonfungible(const Scenario& input) {
  Scenario scenario = input;
  scenario.variant = Variant::NonFungible;
  validate(scenario);
  Segments eff = effective_segments(scenario.population);
  require_homogeneous(eff, "the non-fungible-capital variant");

  const double capital = scenario.government_capital + scenario.transfer;
  const double total = total_importance(eff);
  DealBook deals = DealBook::none(eff.size());
  if (capital >= total) {
    return assemble_report(scenario, std::move(eff), std::move(deals), Branch::NoDeals,
                           "non-fungible capital: endowment covers all importance, no deals");
  }
  detail::deal_in_order(eff, list_order(eff.size()), 0.5 * (total - capital), 1.0, deals);
  auto r = assemble_report(scenario, std::move(eff), std::move(deals), Branch::DealsToAdequacy,
                           "non-fungible capital: deals until Z = 1, never beyond");
  r.multiple_equilibria = true;
  if (std::abs(r.adequacy - 1.0) > 1e-9) throw InvariantBreach("deal set did not reach Z = 1");
  return r;
}

EquilibriumReport solve(const Scenario& scenario) {
  switch (scenario.variant) {
    case Variant::Simultaneous: return solve_simultaneous(scenario);
    case Variant::NonFungible: return solve_nonfungible(scenario);
    case Variant::Sequential: break;
  }
  return solve_equilibrium(scenario);
}

double TransferResult::citizen_utility_at(double tau) const {
  return solve_equilibrium(with_transfer(base, tau)).citizen_utility;
}

double TransferResult::government_utility_at(double tau) const {
  return solve_equilibrium(with_transfer(base, tau)).government_utility;
}

TransferResult optimal_transfer(const Scenario& scenario) {
  validate(scenario);
  if (scenario.variant != Variant::Sequential)
    throw UnsupportedCombination("the optimal transfer is only characterised for the baseline variant");
  const Segments eff = effective_segments(scenario.population);
  const double alpha = require_homogeneous(eff, "the optimal transfer");
  const double total = total_importance(eff);

  TransferResult out;
  out.base = with_transfer(scenario, 0.0);
  if (alpha > 2.0) {
    out.tau_star = std::max(0.0, total - scenario.government_capital);
    out.chi = 2.0;
  } else {
    out.tau_star = 0.0;
    out.chi = alpha + scenario.bargain_select * (2.0 - alpha);
  }
  out.dug_dtau_closed_form = (alpha - 1.0 + 1.0 / out.chi) / out.chi;

  // Central difference inside the regime that holds just above tau = 0.
  const double h = 1e-6 * std::max(1.0, total);
  const double at = out.tau_star > 4.0 * h ? 0.5 * out.tau_star : 2.0 * h;
  out.dug_dtau_direct = (out.government_utility_at(at + h) - out.government_utility_at(at - h)) / (2.0 * h);
  return out;
}

}  // namespace lobbying
