#include "lobbying/finitesim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "lobbying/rng.hpp"

namespace lobbying {

const char* to_string(ContributionConvention c) noexcept {
  switch (c) {
    case ContributionConvention::EquilibriumState: return "equilibrium-state";
    case ContributionConvention::MyopicSequential: return "myopic-sequential";
    case ContributionConvention::FixedPointCounterfactual: return "fixed-point-counterfactual";
  }
  return "unknown";
}

ContributionConvention parse_convention(const std::string& name) {
  if (name == "equilibrium-state") return ContributionConvention::EquilibriumState;
  if (name == "myopic-sequential") return ContributionConvention::MyopicSequential;
  if (name == "fixed-point-counterfactual") return ContributionConvention::FixedPointCounterfactual;
  throw ValidationError("convention", "unknown contribution convention '" + name +
                                          "' (expected equilibrium-state, myopic-sequential or "
                                          "fixed-point-counterfactual)");
}

void validate(const SimulationConfig& c) {
  if (c.pi.empty() && c.n < 1) throw ValidationError("n", "n must be at least 1");
  if (!std::isfinite(c.alpha) || !(c.alpha > 1.0)) throw ValidationError("alpha", "alpha must exceed 1");
  if (c.government_capital && (!std::isfinite(*c.government_capital) || *c.government_capital < 0.0))
    throw ValidationError("government_capital", "government capital must be finite and nonnegative");
  if (!std::isfinite(c.capital_per_group) || c.capital_per_group < 0.0)
    throw ValidationError("capital_per_group", "capital per group must be finite and nonnegative");
  if (!std::isfinite(c.pi_lo) || !std::isfinite(c.pi_hi) || c.pi_lo < 0.0)
    throw ValidationError("pi_lo", "pi bounds must be finite and nonnegative");
  if (c.pi_lo > c.pi_hi) throw ValidationError("pi_hi", "pi_lo must not exceed pi_hi");
  for (std::size_t i = 0; i < c.pi.size(); ++i)
    if (!std::isfinite(c.pi[i]) || c.pi[i] < 0.0)
      throw ValidationError("pi_values[" + std::to_string(i) + "]", "pi must be finite and nonnegative");
  if (c.runs < 1) throw ValidationError("runs", "runs must be at least 1");
}

double resolved_capital(const SimulationConfig& config, std::size_t n) {
  if (config.government_capital) return *config.government_capital;
  return config.capital_per_group * static_cast<double>(n);
}

namespace {

constexpr double kAdmissibleSlack = 1e-9;

/// b_max / pi at adequacy z.
double willingness(double z) {
  if (z <= 1.0 + kThresholdTolerance) {
    z = std::min(z, 1.0);
    return 2.0 * std::sqrt(z) - z;
  }
  return 1.0;
}

double snap(double z) { return std::abs(z - 1.0) <= kThresholdTolerance ? 1.0 : z; }

/// Z at which every member of a prefix with importance `dealt` pays b_max(Z).
double equilibrium_state_adequacy(double capital, double dealt, double total) {
  const double contested = total - dealt;
  if (!(contested > 0.0)) return kInfinity;
  const double x = (dealt + std::sqrt(dealt * dealt + total * capital)) / total;
  if (x <= 1.0) return x * x;
  return (capital + dealt) / contested;
}

double adequacy_of(double capital, double contested) {
  return contested > 0.0 ? snap(capital / contested) : kInfinity;
}

double prefix_utility(double alpha, double dealt, double contested, double capital) {
  if (!(contested > 0.0)) return -alpha * dealt + capital;
  const double z = snap(capital / contested);
  if (z <= 1.0) {
    const double root = std::sqrt(z);
    return -alpha * dealt - alpha * contested * (1.0 - root) - contested * (root - z);
  }
  return -alpha * dealt + capital - contested;
}

}  // namespace

std::vector<double> prefix_contributions(const std::vector<double>& pi, double alpha,
                                         double government_capital, std::size_t m,
                                         ContributionConvention convention) {
  (void)alpha;  // willingness to pay does not depend on the harm multiplier
  if (m > pi.size()) throw std::invalid_argument("prefix length exceeds the roster");
  std::vector<double> out(m);
  double total = 0.0, dealt = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    total += pi[i];
    if (i < m) dealt += pi[i];
  }

  switch (convention) {
    case ContributionConvention::MyopicSequential: {
      double capital = government_capital;
      double rest = total;
      for (std::size_t i = 0; i < m; ++i) {
        out[i] = pi[i] * willingness(adequacy_of(capital, rest));
        capital += out[i];
        rest -= pi[i];
      }
      break;
    }
    case ContributionConvention::EquilibriumState: {
      const double f = willingness(equilibrium_state_adequacy(government_capital, dealt, total));
      for (std::size_t i = 0; i < m; ++i) out[i] = pi[i] * f;
      break;
    }
    case ContributionConvention::FixedPointCounterfactual: {
      const double contested = total - dealt;
      const double f0 = willingness(equilibrium_state_adequacy(government_capital, dealt, total));
      for (std::size_t i = 0; i < m; ++i) out[i] = pi[i] * f0;
      const double tol = 1e-13 * std::max(1.0, total);
      std::vector<double> next(m);
      for (int iter = 0; iter < 10000; ++iter) {
        double sum = 0.0;
        for (double b : out) sum += b;
        double change = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double z = adequacy_of(government_capital + sum - out[i], pi[i] + contested);
          next[i] = pi[i] * willingness(z);
          change = std::max(change, std::abs(next[i] - out[i]));
        }
        out.swap(next);
        if (change <= tol) break;
      }
      break;
    }
  }
  return out;
}

PrefixEvaluation evaluate_prefix(const std::vector<double>& pi, double alpha,
                                 double government_capital,
                                 const std::vector<double>& contributions) {
  const std::size_t m = contributions.size();
  if (m > pi.size()) throw std::invalid_argument("more contributions than groups");
  PrefixEvaluation e;
  double dealt = 0.0;
  e.total_capital = government_capital;
  for (std::size_t i = 0; i < m; ++i) {
    dealt += pi[i];
    e.total_capital += contributions[i];
  }
  for (std::size_t i = m; i < pi.size(); ++i) e.contested_importance += pi[i];
  e.adequacy = adequacy_of(e.total_capital, e.contested_importance);
  e.government_utility = prefix_utility(alpha, dealt, e.contested_importance, e.total_capital);

  e.laws.resize(pi.size());
  const double z = std::min(e.adequacy, 1.0);
  const double root = std::sqrt(z);
  for (std::size_t i = m; i < pi.size(); ++i) {
    if (!(pi[i] > 0.0)) {
      e.laws[i].win_probability = 1.0;
      continue;
    }
    e.laws[i] = {pi[i] * z, pi[i] * std::max(0.0, root - z), root};
  }
  return e;
}

SimulationResult run_sequential(const std::vector<double>& pi, double alpha,
                                double government_capital, ContributionConvention convention) {
  if (pi.empty()) throw ValidationError("pi_values", "roster must not be empty");
  if (!(alpha > 1.0)) throw ValidationError("alpha", "alpha must exceed 1");
  if (!(government_capital >= 0.0)) throw ValidationError("government_capital", "must be nonnegative");

  const std::size_t n = pi.size();
  double total = 0.0;
  for (double p : pi) total += p;

  SimulationResult r;
  r.convention = convention;
  r.alpha = alpha;
  r.government_capital = government_capital;
  r.pi = pi;
  r.prefixes.resize(n + 1);

  // Myopic contributions do not depend on where the prefix stops.
  std::vector<double> myopic;
  if (convention == ContributionConvention::MyopicSequential)
    myopic = prefix_contributions(pi, alpha, government_capital, n, convention);

  double dealt = 0.0, myopic_sum = 0.0;
  bool reachable = true;
  for (std::size_t m = 0; m <= n; ++m) {
    if (m > 0) {
      dealt += pi[m - 1];
      if (!myopic.empty()) myopic_sum += myopic[m - 1];
    }
    const double contested = std::max(0.0, total - dealt);
    double paid = 0.0;
    switch (convention) {
      case ContributionConvention::MyopicSequential: paid = myopic_sum; break;
      case ContributionConvention::EquilibriumState:
        paid = dealt * willingness(equilibrium_state_adequacy(government_capital, dealt, total));
        break;
      case ContributionConvention::FixedPointCounterfactual:
        for (double b : prefix_contributions(pi, alpha, government_capital, m, convention)) paid += b;
        break;
    }
    PrefixRow& row = r.prefixes[m];
    row.m = m;
    row.contributions = paid;
    row.total_capital = government_capital + paid;
    row.adequacy = adequacy_of(row.total_capital, contested);
    row.government_utility = prefix_utility(alpha, dealt, contested, row.total_capital);
    if (m > 0 && alpha > 2.0) reachable = reachable && row.adequacy <= 1.0 + kAdmissibleSlack;
    row.admissible = m == 0 || (reachable && government_capital < total);
  }

  std::size_t best = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    if (!r.prefixes[m].admissible) continue;
    const double incumbent = r.prefixes[best].government_utility;
    if (r.prefixes[m].government_utility > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent)))
      best = m;
  }

  r.m = best;
  r.contributions = prefix_contributions(pi, alpha, government_capital, best, convention);
  auto e = evaluate_prefix(pi, alpha, government_capital, r.contributions);
  r.adequacy = e.adequacy;
  r.government_utility = e.government_utility;
  r.laws = std::move(e.laws);
  double dealt_best = 0.0;
  for (std::size_t i = 0; i < best; ++i) {
    dealt_best += pi[i];
    if (pi[i] > 0.0) r.contribution_ratios.push_back(r.contributions[i] / pi[i]);
  }
  for (std::size_t i = best; i < n; ++i)
    if (pi[i] > 0.0) r.capital_ratios.push_back(r.laws[i].capital / pi[i]);
  r.dealt_share = total > 0.0 ? dealt_best / total : 0.0;
  return r;
}

std::vector<double> draw_roster(std::size_t n, double lo, double hi, std::mt19937_64& engine) {
  std::vector<double> pi(n);
  for (auto& p : pi) p = uniform(engine, lo, hi);
  return pi;
}

SimulationResult run_sequential(const SimulationConfig& config, std::size_t n, std::size_t run) {
  validate(config);
  std::vector<double> pi = config.pi;
  if (pi.empty()) {
    std::mt19937_64 engine(derive_seed(config.seed, n, run));
    pi = draw_roster(n, config.pi_lo, config.pi_hi, engine);
  }
  return run_sequential(pi, config.alpha, resolved_capital(config, pi.size()), config.convention);
}

double pairwise_sum(const double* values, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += values[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

std::vector<SweepRow> sweep_population_size(const SimulationConfig& config,
                                            const std::vector<std::size_t>& n_grid,
                                            std::size_t runs, unsigned workers) {
  validate(config);
  if (n_grid.empty()) throw ValidationError("n_grid", "population-size grid must not be empty");
  if (runs < 1) throw ValidationError("runs", "runs must be at least 1");
  for (std::size_t n : n_grid)
    if (n < 1) throw ValidationError("n_grid", "population sizes must be at least 1");

  const std::size_t cells = n_grid.size() * runs;
  std::vector<double> adequacy(cells), share(cells);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const auto r = run_sequential(config, n_grid[c / runs], c % runs);
      adequacy[c] = r.adequacy;
      share[c] = r.dealt_share;
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<SweepRow> rows;
  rows.reserve(n_grid.size());
  std::vector<double> dev(runs);
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    const double* z = adequacy.data() + k * runs;
    SweepRow row;
    row.n = n_grid[k];
    row.runs = runs;
    row.mean_adequacy = pairwise_sum(z, runs) / static_cast<double>(runs);
    row.mean_dealt_share = pairwise_sum(share.data() + k * runs, runs) / static_cast<double>(runs);
    if (runs > 1) {
      for (std::size_t j = 0; j < runs; ++j) dev[j] = (z[j] - row.mean_adequacy) * (z[j] - row.mean_adequacy);
      row.sd_adequacy = std::sqrt(pairwise_sum(dev.data(), runs) / static_cast<double>(runs - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lobbying
