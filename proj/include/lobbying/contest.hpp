#pragma once

// Stage-2 contest machinery: Tullock win probabilities, the interest group's
// best response, the government's budget-constrained allocation across the
// contested laws, and the noisy-arbiter sampler whose choice probabilities
// reproduce the Tullock form.

#include <cstdint>
#include <random>
#include <vector>

#include "lobbying/model.hpp"

namespace lobbying {

struct BestResponse {
  double lobbying = 0.0;         ///< L*
  double win_probability = 0.0;  ///< government's p at (K, L*)
};

/// Per-law values for one population entry (rates per unit mass). For a
/// partially dealt segment they describe its contested share; a fully dealt
/// entry has K = L = p = 0.
struct LawAllocation {
  double capital = 0.0;
  double lobbying = 0.0;
  double win_probability = 0.0;
};

struct ContestAllocation {
  std::vector<LawAllocation> laws;
  double total_capital = 0.0;           ///< K^T = K^G + tau + contributions
  double contestable_importance = 0.0;
  double adequacy = 0.0;                ///< Z; +inf when nothing is contestable
  double spent_capital = 0.0;
  double unspent_capital = 0.0;
  double total_lobbying = 0.0;
  bool constrained = false;             ///< budget binds (Z at or below threshold)
};

/// Tullock contest success function for the government.
double contest_probability(double capital, double lobbying, bool dealt) noexcept;

/// The group's optimal lobbying against capital K. Throws DegenerateLaw when
/// pi_eff is zero.
BestResponse lobby_best_response(double pi_eff, double capital);

/// Z above which the government stops spending: 1 when it moves first,
/// (alpha/(alpha+1))^2 when both sides move simultaneously.
double spending_threshold(Variant variant, double alpha);

/// Optimal allocation of K^T across contested laws for a fixed dealbook.
/// K^T includes K^G, the transfer, and all contributions in `deals`.
ContestAllocation solve_contest_stage(const Scenario& scenario, const DealBook& deals);

/// Same, on already-effective segments with an explicit K^T.
ContestAllocation allocate_contests(const Segments& effective, const DealBook& deals,
                                    double total_capital, Variant variant);

// ---------------------------------------------------------------------------
// Noisy arbiter

enum class Winner { Government, Group };

struct ArbiterDraw {
  double evidence_government = 0.0;  ///< ln K (may be -inf)
  double evidence_group = 0.0;       ///< ln L (may be -inf)
  double noise_government = 0.0;
  double noise_group = 0.0;
  Winner winner = Winner::Government;
};

/// Standard Gumbel variate by inverse CDF.
double sample_gumbel(std::mt19937_64& engine);

/// One arbiter decision. Two Gumbel draws are consumed on every call.
/// A zero-evidence side always loses to a positive one; K = L = 0 compares
/// the noise alone (a fair coin).
ArbiterDraw sample_arbiter(double capital, double lobbying, std::mt19937_64& engine);

struct WinEstimate {
  double p_hat = 0.0;
  double standard_error = 0.0;
  double analytic = 0.0;  ///< K/(K+L), or 0.5 at K = L = 0
  std::uint64_t samples = 0;
  std::uint64_t government_wins = 0;
};

/// Monte-Carlo win frequency of the arbiter. Samples are split into fixed-size
/// shards with seeds derived from `seed`, so the estimate is independent of
/// `workers` (0 picks the hardware concurrency).
WinEstimate estimate_win_probability(double capital, double lobbying, std::uint64_t samples,
                                     std::uint64_t seed, unsigned workers = 0);

}  // namespace lobbying
