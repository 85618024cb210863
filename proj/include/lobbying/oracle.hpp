#pragma once

// Brute-force verifiers. Every oracle re-derives payoffs from the primitive
// utility definitions and shares no code with the solvers it checks.

#include <cstdint>
#include <string>
#include <vector>

#include "lobbying/finitesim.hpp"
#include "lobbying/model.hpp"

namespace lobbying::oracle {

struct Violation {
  std::string location;
  double claimed = 0.0;      ///< objective at the claimed optimum
  double alternative = 0.0;  ///< objective at the better point found
  double improvement = 0.0;
};

struct ViolationReport {
  std::vector<Violation> violations;  ///< sorted by location
  bool ok() const noexcept { return violations.empty(); }
  double max_improvement() const noexcept;
};

/// Group payoff (1 - p) pi - L over L in [0, span] on a grid of `step`.
/// Reports the best grid point if it beats L_claimed by more than `tolerance`.
ViolationReport grid_best_response_check(double pi, double capital, double lobbying_claimed,
                                         double step = 1e-4, double span = 2.0,
                                         double tolerance = 1e-9);

struct GovernmentGridResult {
  ViolationReport report;
  std::vector<double> best_allocation;
  double best_value = 0.0;
  double claimed_value = 0.0;
};

/// Government payoff over every allocation of `total_capital` to at most three
/// contested laws on a simplex grid of step grid_fraction * K^T (unspent
/// capital allowed), each law lobbied at the group's best response. Throws
/// PreconditionError for more than three laws.
GovernmentGridResult grid_government_check(const std::vector<double>& pi, double alpha,
                                           double total_capital,
                                           const std::vector<double>& claimed_capital,
                                           double grid_fraction = 1e-3);

struct PrefixOracleResult {
  std::size_t best_m = 0;
  std::vector<double> utility;  ///< per m = 0..n
  std::vector<double> adequacy;
  std::vector<bool> admissible;
  std::vector<double> contributions;  ///< at best_m
};

/// Exhaustive prefix enumeration for the finite simulation.
PrefixOracleResult prefix_bruteforce(const std::vector<double>& pi, double alpha,
                                     double government_capital,
                                     ContributionConvention convention);

struct CutoffOracleResult {
  double max_dealt_alpha = 0.0;       ///< over entries with a positive dealt share
  double min_contested_alpha = 0.0;   ///< over entries with a positive contested share
  double dealt_importance = 0.0;
  double government_utility = 0.0;
};

/// Best deal set over every subset of (at most 12) segments plus one partially
/// dealt segment. Dealt groups pay b_max at the resulting Z; sets that end
/// past capital adequacy are excluded.
CutoffOracleResult cutoff_scan(const Segments& effective, double capital);

struct McConvergence {
  std::size_t seeds = 0;
  double max_gap = 0.0;
  double fraction_within_4se = 0.0;
};

McConvergence mc_convergence(double capital, double lobbying, std::uint64_t samples,
                             std::size_t seeds, std::uint64_t master_seed);

struct CheckRow {
  std::string check;
  std::uint64_t instance_seed = 0;
  bool passed = false;
  double max_improvement = 0.0;
  std::string detail;
};

/// Suites: best-response, government-grid, prefix, cutoff, mc, all ("all"
/// skips mc). Each suite draws `instances` seeded instances.
std::vector<CheckRow> run_verification(const std::string& suite, std::size_t instances = 200,
                                       std::uint64_t seed = 20240611);

}  // namespace lobbying::oracle
