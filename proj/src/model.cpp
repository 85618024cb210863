#include "lobbying/model.hpp"

#include <algorithm>
#include <cmath>

namespace lobbying {

const char* to_string(Variant v) noexcept {
  switch (v) {
    case Variant::Sequential: return "baseline";
    case Variant::Simultaneous: return "simultaneous";
    case Variant::NonFungible: return "nonfungible";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "baseline" || name == "sequential") return Variant::Sequential;
  if (name == "simultaneous") return Variant::Simultaneous;
  if (name == "nonfungible" || name == "non-fungible") return Variant::NonFungible;
  throw ValidationError("variant", "unknown variant '" + name +
                                       "' (expected baseline, simultaneous or nonfungible)");
}

void validate_profile(const LawProfile& p, const std::string& path) {
  if (!std::isfinite(p.pi) || p.pi < 0.0)
    throw ValidationError(path + ".pi", "pi must be finite and nonnegative");
  if (!std::isfinite(p.alpha) || !(p.alpha > 1.0))
    throw ValidationError(path + ".alpha", "alpha must exceed 1");
  if (!(p.z >= 0.0 && p.z <= 1.0))
    throw ValidationError(path + ".z", "z must lie in [0, 1]");
  if (!(p.beta >= 0.0 && p.beta < 1.0))
    throw ValidationError(path + ".beta", "beta must lie in [0, 1)");
}

namespace {

void validate_segments(const Segments& segments) {
  if (segments.empty())
    throw ValidationError("population.segments", "population must not be empty");
  double total = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string path = "population.segments[" + std::to_string(i) + "]";
    const Segment& s = segments[i];
    if (!std::isfinite(s.mass) || s.mass < 0.0)
      throw ValidationError(path + ".mass", "mass must be finite and nonnegative");
    validate_profile(s.profile, path + ".profile");
    total += s.mass;
  }
  if (!(total > 0.0))
    throw ValidationError("population.segments", "total population mass must be positive");
}

void validate_roster(const Roster& roster) {
  if (roster.empty())
    throw ValidationError("population.roster", "roster must not be empty");
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const std::string path = "population.roster[" + std::to_string(i) + "]";
    if (roster[i].id != static_cast<int>(i) + 1)
      throw ValidationError(path + ".id", "group ids must be unique and sequential from 1");
    validate_profile(roster[i].profile, path + ".profile");
  }
}

}  // namespace

const Scenario& validate(const Scenario& scenario) {
  if (!std::isfinite(scenario.government_capital) || scenario.government_capital < 0.0)
    throw ValidationError("government_capital", "government capital must be finite and nonnegative");
  if (!(scenario.bargain_select >= 0.0 && scenario.bargain_select <= 1.0))
    throw ValidationError("bargain_select", "bargain_select must lie in [0, 1]");
  if (!std::isfinite(scenario.transfer) || scenario.transfer < 0.0)
    throw ValidationError("transfer", "transfer must be finite and nonnegative");
  std::visit(
      [](const auto& pop) {
        using T = std::decay_t<decltype(pop)>;
        if constexpr (std::is_same_v<T, Segments>)
          validate_segments(pop);
        else
          validate_roster(pop);
      },
      scenario.population);
  return scenario;
}

LawProfile effective_profile(const LawProfile& p) {
  const double pi_weighted = p.z * p.pi;
  LawProfile out;
  out.pi = (1.0 - p.beta) * pi_weighted;
  out.alpha = (p.alpha + p.beta) / (1.0 - p.beta);
  out.z = 1.0;
  out.beta = 0.0;
  return out;
}

Segments effective_segments(const Population& population) {
  Segments out;
  if (const auto* segs = std::get_if<Segments>(&population)) {
    out.reserve(segs->size());
    for (const auto& s : *segs) out.push_back({s.mass, effective_profile(s.profile)});
  } else {
    const auto& roster = std::get<Roster>(population);
    out.reserve(roster.size());
    for (const auto& g : roster) out.push_back({1.0, effective_profile(g.profile)});
  }
  return out;
}

std::size_t population_size(const Population& population) {
  return std::visit([](const auto& pop) { return pop.size(); }, population);
}

bool is_roster(const Population& population) noexcept {
  return std::holds_alternative<Roster>(population);
}

double importance_mass(const Population& population) {
  double total = 0.0;
  for (const auto& s : effective_segments(population)) total += s.mass * s.profile.pi;
  return total;
}

double contestable_importance(const Population& population, const DealBook& deals) {
  const Segments segs = effective_segments(population);
  if (deals.size() != segs.size())
    throw std::invalid_argument("dealbook size does not match the population");
  double total = 0.0;
  for (std::size_t i = 0; i < segs.size(); ++i)
    total += segs[i].mass * (1.0 - deals.entries[i].dealt_fraction) * segs[i].profile.pi;
  return total;
}

double total_contributions(const Population& population, const DealBook& deals) {
  const Segments segs = effective_segments(population);
  if (deals.size() != segs.size())
    throw std::invalid_argument("dealbook size does not match the population");
  double total = 0.0;
  for (std::size_t i = 0; i < segs.size(); ++i)
    total += segs[i].mass * deals.entries[i].dealt_fraction * deals.entries[i].contribution_rate;
  return total;
}

std::optional<double> homogeneous_alpha(const Segments& effective) {
  std::optional<double> common;
  for (const auto& s : effective) {
    if (!(s.mass > 0.0) || !(s.profile.pi > 0.0)) continue;
    if (!common) {
      common = s.profile.alpha;
    } else if (std::abs(s.profile.alpha - *common) > 1e-12 * std::max(1.0, std::abs(*common))) {
      return std::nullopt;
    }
  }
  if (!common && !effective.empty()) common = effective.front().profile.alpha;
  return common;
}

}  // namespace lobbying
