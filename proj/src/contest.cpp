#include "lobbying/contest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "lobbying/rng.hpp"

namespace lobbying {

double contest_probability(double capital, double lobbying, bool dealt) noexcept {
  if (dealt) return 0.0;
  const double total = capital + lobbying;
  if (total > 0.0) return capital / total;
  return 0.5;
}

BestResponse lobby_best_response(double pi_eff, double capital) {
  if (!(pi_eff > 0.0))
    throw DegenerateLaw("lobby_best_response: a zero-importance law has no contest");
  if (capital >= pi_eff) return {0.0, 1.0};
  const double root = std::sqrt(pi_eff * capital);
  return {std::max(0.0, root - capital), std::min(1.0, std::sqrt(capital / pi_eff))};
}

double spending_threshold(Variant variant, double alpha) {
  if (variant == Variant::Simultaneous) {
    const double r = alpha / (alpha + 1.0);
    return r * r;
  }
  return 1.0;
}

ContestAllocation allocate_contests(const Segments& effective, const DealBook& deals,
                                    double total_capital, Variant variant) {
  if (deals.size() != effective.size())
    throw std::invalid_argument("dealbook size does not match the population");

  ContestAllocation out;
  out.laws.resize(effective.size());
  out.total_capital = total_capital;

  double contestable = 0.0;
  for (std::size_t i = 0; i < effective.size(); ++i)
    contestable += effective[i].mass * (1.0 - deals.entries[i].dealt_fraction) *
                   effective[i].profile.pi;
  out.contestable_importance = contestable;

  // Simultaneous moves are only characterised for a common alpha.
  double alpha = 0.0;
  if (variant == Variant::Simultaneous) {
    const auto common = homogeneous_alpha(effective);
    if (!common)
      throw UnsupportedCombination(
          "simultaneous-move contests require a homogeneous alpha across laws");
    alpha = *common;
  }
  const double threshold = spending_threshold(variant, alpha);

  out.adequacy = contestable > 0.0 ? total_capital / contestable : kInfinity;
  out.constrained = out.adequacy <= threshold + kThresholdTolerance;
  // Both branches agree at the boundary, so a Z within tolerance is snapped
  // onto the threshold; this keeps L exactly zero at Z = 1.
  const double z = (std::abs(out.adequacy - threshold) <= kThresholdTolerance)
                       ? threshold
                       : std::min(out.adequacy, threshold);

  LawAllocation unit;  // per unit of importance
  if (variant == Variant::Simultaneous && !out.constrained) {
    const double r = alpha / (alpha + 1.0);
    unit = {r * r, alpha / ((alpha + 1.0) * (alpha + 1.0)), r};
  } else {
    const double root = std::sqrt(z);
    unit = {z, std::max(0.0, root - z), std::min(1.0, root)};
  }

  for (std::size_t i = 0; i < effective.size(); ++i) {
    const double pi = effective[i].profile.pi;
    const double share = 1.0 - deals.entries[i].dealt_fraction;
    LawAllocation& law = out.laws[i];
    if (share <= 0.0) continue;  // fully dealt: K = L = p = 0
    if (!(pi > 0.0)) {
      law.win_probability = 1.0;  // nothing to contest
      continue;
    }
    law.capital = pi * unit.capital;
    law.lobbying = pi * unit.lobbying;
    law.win_probability = unit.win_probability;
    const double weight = effective[i].mass * share;
    out.spent_capital += weight * law.capital;
    out.total_lobbying += weight * law.lobbying;
  }
  out.unspent_capital = total_capital - out.spent_capital;
  if (out.unspent_capital < -1e-9 * std::max(1.0, total_capital))
    throw InvariantBreach("contest stage spent more than the available capital");
  out.unspent_capital = std::max(0.0, out.unspent_capital);  // rounding
  return out;
}

ContestAllocation solve_contest_stage(const Scenario& scenario, const DealBook& deals) {
  const Segments effective = effective_segments(scenario.population);
  const double total_capital = scenario.government_capital + scenario.transfer +
                               total_contributions(scenario.population, deals);
  return allocate_contests(effective, deals, total_capital, scenario.variant);
}

// ---------------------------------------------------------------------------

double sample_gumbel(std::mt19937_64& engine) {
  return -std::log(-std::log(open_unit(engine)));
}

ArbiterDraw sample_arbiter(double capital, double lobbying, std::mt19937_64& engine) {
  ArbiterDraw d;
  d.noise_government = sample_gumbel(engine);
  d.noise_group = sample_gumbel(engine);
  d.evidence_government = capital > 0.0 ? std::log(capital) : -kInfinity;
  d.evidence_group = lobbying > 0.0 ? std::log(lobbying) : -kInfinity;

  if (capital > 0.0 && lobbying > 0.0) {
    d.winner = (d.evidence_government + d.noise_government > d.evidence_group + d.noise_group)
                   ? Winner::Government
                   : Winner::Group;
  } else if (capital > 0.0) {
    d.winner = Winner::Government;
  } else if (lobbying > 0.0) {
    d.winner = Winner::Group;
  } else {
    d.winner = d.noise_government > d.noise_group ? Winner::Government : Winner::Group;
  }
  return d;
}

namespace {
constexpr std::uint64_t kShardSize = 1ULL << 16;
}

WinEstimate estimate_win_probability(double capital, double lobbying, std::uint64_t samples,
                                     std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw std::invalid_argument("estimate_win_probability: samples must be >= 1");
  if (!(capital >= 0.0) || !(lobbying >= 0.0) || !std::isfinite(capital) || !std::isfinite(lobbying))
    throw std::invalid_argument("estimate_win_probability: K and L must be finite and nonnegative");

  const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
  std::vector<std::uint64_t> wins(shards, 0);
  std::atomic<std::uint64_t> next{0};

  auto work = [&] {
    for (std::uint64_t s = next++; s < shards; s = next++) {
      std::mt19937_64 engine(derive_seed(seed, s));
      const std::uint64_t begin = s * kShardSize;
      const std::uint64_t count = std::min(kShardSize, samples - begin);
      std::uint64_t local = 0;
      for (std::uint64_t k = 0; k < count; ++k)
        if (sample_arbiter(capital, lobbying, engine).winner == Winner::Government) ++local;
      wins[s] = local;
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, shards));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  WinEstimate est;
  est.samples = samples;
  for (auto w : wins) est.government_wins += w;
  est.p_hat = static_cast<double>(est.government_wins) / static_cast<double>(samples);
  est.standard_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
  est.analytic = contest_probability(capital, lobbying, false);
  return est;
}

}  // namespace lobbying
