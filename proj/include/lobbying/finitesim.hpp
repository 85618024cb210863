#pragma once

// Finite-population sequential deal making. Groups are approached in roster
// order; once the government declines a group it deals with no later one, so
// every deal set is a prefix {1..m}. Accounting uses plain sums:
// K^T = K^G + sum B, Z = K^T / (sum of contested pi).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lobbying/contest.hpp"

namespace lobbying {

enum class ContributionConvention {
  /// Every dealt group pays b_max at the Z the prefix itself ends at.
  EquilibriumState,
  /// Group i pays b_max at the state when it is approached: capital
  /// K^G + sum_{j<i} B_j against contestable set {i..n}.
  MyopicSequential,
  /// Group i pays b_max at the state where it alone fights while all other
  /// prefix deals hold, iterated to a fixed point.
  FixedPointCounterfactual,
};

const char* to_string(ContributionConvention c) noexcept;
ContributionConvention parse_convention(const std::string& name);

struct SimulationConfig {
  std::size_t n = 10;
  double alpha = 3.0;
  /// Absolute endowment. When empty, K^G = capital_per_group * n.
  std::optional<double> government_capital;
  double capital_per_group = 1.0;
  double pi_lo = 1.0;
  double pi_hi = 11.0;
  /// Explicit roster importances; overrides n and the uniform draw.
  std::vector<double> pi;
  std::uint64_t seed = 1;
  std::size_t runs = 1;
  ContributionConvention convention = ContributionConvention::EquilibriumState;
};

void validate(const SimulationConfig& config);
double resolved_capital(const SimulationConfig& config, std::size_t n);

struct PrefixRow {
  std::size_t m = 0;
  double contributions = 0.0;
  double total_capital = 0.0;
  double adequacy = 0.0;  ///< +inf when nothing is contested
  double government_utility = 0.0;
  bool admissible = true;
};

struct PrefixEvaluation {
  double total_capital = 0.0;
  double contested_importance = 0.0;
  double adequacy = 0.0;
  double government_utility = 0.0;
  std::vector<LawAllocation> laws;  ///< dealt laws have K = L = p = 0
};

struct SimulationResult {
  ContributionConvention convention = ContributionConvention::EquilibriumState;
  double alpha = 0.0;
  double government_capital = 0.0;
  std::vector<double> pi;
  std::size_t m = 0;
  std::vector<double> contributions;  ///< B_1..B_m
  double adequacy = 0.0;
  std::vector<LawAllocation> laws;
  double government_utility = 0.0;
  double dealt_share = 0.0;  ///< dealt importance / total importance
  std::vector<PrefixRow> prefixes;
  std::vector<double> contribution_ratios;  ///< B_i / pi_i over dealt laws
  std::vector<double> capital_ratios;       ///< K_i / pi_i over contested laws
};

/// Contributions B_1..B_m the convention assigns when the prefix is {1..m}.
std::vector<double> prefix_contributions(const std::vector<double>& pi, double alpha,
                                         double government_capital, std::size_t m,
                                         ContributionConvention convention);

/// Contest stage and government utility for deals {1..m} paying `contributions`.
PrefixEvaluation evaluate_prefix(const std::vector<double>& pi, double alpha,
                                 double government_capital,
                                 const std::vector<double>& contributions);

/// Utility-maximising admissible prefix. For alpha > 2 a prefix is admissible
/// only if no intermediate prefix ends past capital adequacy (Z <= 1 + 1e-9);
/// ties go to the smaller m. K^G >= sum pi always gives m = 0.
SimulationResult run_sequential(const std::vector<double>& pi, double alpha,
                                double government_capital, ContributionConvention convention);

/// Importances pi ~ U[lo, hi] for a roster of n groups.
std::vector<double> draw_roster(std::size_t n, double lo, double hi, std::mt19937_64& engine);

/// One run of the configured simulation at population size n. The roster is
/// drawn from a seed derived from (config.seed, n, run).
SimulationResult run_sequential(const SimulationConfig& config, std::size_t n, std::size_t run);

struct SweepRow {
  std::size_t n = 0;
  std::size_t runs = 0;
  double mean_adequacy = 0.0;
  double sd_adequacy = 0.0;  ///< sample standard deviation; 0 when runs = 1
  double mean_dealt_share = 0.0;
};

/// One row per n. Cells run concurrently; aggregation is in fixed order with
/// pairwise summation, so results do not depend on `workers`.
std::vector<SweepRow> sweep_population_size(const SimulationConfig& config,
                                            const std::vector<std::size_t>& n_grid,
                                            std::size_t runs, unsigned workers = 0);

/// Pairwise (cascade) summation.
double pairwise_sum(const double* values, std::size_t count);

}  // namespace lobbying
