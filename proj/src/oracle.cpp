#include "lobbying/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lobbying/bargaining.hpp"
#include "lobbying/contest.hpp"
#include "lobbying/rng.hpp"

namespace lobbying::oracle {

double ViolationReport::max_improvement() const noexcept {
  double worst = 0.0;
  for (const auto& v : violations) worst = std::max(worst, v.improvement);
  return worst;
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Group payoff: gains from winning minus lobbying spent.
double group_payoff(double pi, double capital, double lobbying) {
  const double spent = capital + lobbying;
  const double government_wins = spent > 0.0 ? capital / spent : 0.5;
  return (1.0 - government_wins) * pi - lobbying;
}

/// Interior first-order condition pi K / (K + L)^2 = 1, clamped at zero.
double follower_lobbying(double pi, double capital) {
  if (!(pi > 0.0) || capital >= pi) return 0.0;
  return std::max(0.0, std::sqrt(pi * capital) - capital);
}

/// Government payoff from one contest: harm of losing plus lobbying waste.
/// Against zero capital any positive lobbying wins outright, so the group's
/// supremum is the limit L -> 0+, p -> 0.
double contest_payoff(double pi, double alpha, double capital) {
  if (!(pi > 0.0)) return 0.0;
  if (!(capital > 0.0)) return -alpha * pi;
  const double lobbying = follower_lobbying(pi, capital);
  const double spent = capital + lobbying;
  const double p = spent > 0.0 ? capital / spent : 0.5;
  return -alpha * pi * (1.0 - p) - lobbying;
}

double willingness_per_pi(double z) {
  if (z >= 1.0) return 1.0;
  return 2.0 * std::sqrt(z) - z;
}

/// Z solving K^T = capital + dealt * b_max(Z)/pi with Z = K^T / (total - dealt).
/// Bisection on x = sqrt(Z) over [0, 1]; falls back to the linear branch.
double self_consistent_adequacy(double capital, double dealt, double total) {
  const double contested = total - dealt;
  if (!(contested > 0.0)) return kInfinity;
  auto gap = [&](double x) { return x * x * contested - capital - dealt * (2.0 * x - x * x); };
  if (gap(1.0) <= 0.0) return (capital + dealt) / contested;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) <= 0.0 ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  return x * x;
}

}  // namespace

ViolationReport grid_best_response_check(double pi, double capital, double lobbying_claimed,
                                         double step, double span, double tolerance) {
  if (!(step > 0.0)) throw std::invalid_argument("grid_best_response_check: step must be positive");
  ViolationReport report;
  const double claimed = group_payoff(pi, capital, lobbying_claimed);
  const auto points = static_cast<std::size_t>(std::floor(span / step + 1e-9));
  double best = claimed, best_at = lobbying_claimed;
  for (std::size_t k = 0; k <= points; ++k) {
    const double l = static_cast<double>(k) * step;
    const double u = group_payoff(pi, capital, l);
    if (u > best) {
      best = u;
      best_at = l;
    }
  }
  if (best > claimed + tolerance)
    report.violations.push_back({"L=" + fmt(best_at), claimed, best, best - claimed});
  return report;
}

GovernmentGridResult grid_government_check(const std::vector<double>& pi, double alpha,
                                           double total_capital,
                                           const std::vector<double>& claimed_capital,
                                           double grid_fraction) {
  if (pi.empty() || pi.size() > 3)
    throw PreconditionError("grid_government_check handles one to three contested laws");
  if (claimed_capital.size() != pi.size())
    throw std::invalid_argument("grid_government_check: claimed allocation size mismatch");
  if (!(grid_fraction > 0.0 && grid_fraction <= 1.0))
    throw std::invalid_argument("grid_government_check: grid_fraction must lie in (0, 1]");

  const auto steps = static_cast<std::size_t>(std::llround(1.0 / grid_fraction));
  const double h = total_capital / static_cast<double>(steps);
  const std::size_t laws = pi.size();

  // value[j][k]: payoff of law j at capital k*h, net of the capital spent.
  std::vector<std::vector<double>> value(laws, std::vector<double>(steps + 1));
  for (std::size_t j = 0; j < laws; ++j)
    for (std::size_t k = 0; k <= steps; ++k) {
      const double c = static_cast<double>(k) * h;
      value[j][k] = contest_payoff(pi[j], alpha, c) - c;
    }
  // Running maximum of the last law's table, so "best k_last <= r" is O(1).
  const auto& last = value[laws - 1];
  std::vector<double> run_max(steps + 1);
  std::vector<std::size_t> run_arg(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k == 0 || last[k] > run_max[k - 1]) {
      run_max[k] = last[k];
      run_arg[k] = k;
    } else {
      run_max[k] = run_max[k - 1];
      run_arg[k] = run_arg[k - 1];
    }
  }

  double best = -kInfinity;
  std::vector<std::size_t> arg(laws, 0);
  if (laws == 1) {
    best = run_max[steps];
    arg[0] = run_arg[steps];
  } else if (laws == 2) {
    for (std::size_t a = 0; a <= steps; ++a) {
      const double v = value[0][a] + run_max[steps - a];
      if (v > best) {
        best = v;
        arg = {a, run_arg[steps - a]};
      }
    }
  } else {
    for (std::size_t a = 0; a <= steps; ++a)
      for (std::size_t b = 0; a + b <= steps; ++b) {
        const double v = value[0][a] + value[1][b] + run_max[steps - a - b];
        if (v > best) {
          best = v;
          arg = {a, b, run_arg[steps - a - b]};
        }
      }
  }

  GovernmentGridResult out;
  out.best_value = best + total_capital;
  out.best_allocation.resize(laws);
  for (std::size_t j = 0; j < laws; ++j) out.best_allocation[j] = static_cast<double>(arg[j]) * h;

  double claimed = total_capital;
  double importance = 0.0;
  for (std::size_t j = 0; j < laws; ++j) {
    claimed += contest_payoff(pi[j], alpha, claimed_capital[j]) - claimed_capital[j];
    importance += pi[j];
  }
  out.claimed_value = claimed;

  const double tolerance = 1e-9 * std::max(1.0, alpha * importance);
  if (out.best_value > claimed + tolerance) {
    std::string where = "K=(";
    for (std::size_t j = 0; j < laws; ++j) where += (j ? "," : "") + fmt(out.best_allocation[j]);
    out.report.violations.push_back({where + ")", claimed, out.best_value, out.best_value - claimed});
  }
  return out;
}

PrefixOracleResult prefix_bruteforce(const std::vector<double>& pi, double alpha,
                                     double government_capital,
                                     ContributionConvention convention) {
  const std::size_t n = pi.size();
  double total = 0.0;
  for (double p : pi) total += p;

  auto contributions = [&](std::size_t m) {
    std::vector<double> b(m, 0.0);
    double dealt = 0.0;
    for (std::size_t i = 0; i < m; ++i) dealt += pi[i];
    const double contested = total - dealt;
    if (convention == ContributionConvention::MyopicSequential) {
      double capital = government_capital;
      for (std::size_t i = 0; i < m; ++i) {
        double open = 0.0;
        for (std::size_t j = i; j < n; ++j) open += pi[j];
        b[i] = pi[i] * willingness_per_pi(open > 0.0 ? capital / open : kInfinity);
        capital += b[i];
      }
    } else if (convention == ContributionConvention::EquilibriumState) {
      const double z = self_consistent_adequacy(government_capital, dealt, total);
      for (std::size_t i = 0; i < m; ++i) b[i] = pi[i] * willingness_per_pi(z);
    } else {
      // Gauss-Seidel sweeps from zero contributions.
      for (int sweep = 0; sweep < 100000; ++sweep) {
        double change = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          double others = 0.0;
          for (std::size_t j = 0; j < m; ++j)
            if (j != i) others += b[j];
          const double open = pi[i] + contested;
          const double updated =
              pi[i] * willingness_per_pi(open > 0.0 ? (government_capital + others) / open : kInfinity);
          change = std::max(change, std::abs(updated - b[i]));
          b[i] = updated;
        }
        if (change <= 1e-15 * std::max(1.0, total)) break;
      }
    }
    return b;
  };

  PrefixOracleResult out;
  out.utility.resize(n + 1);
  out.adequacy.resize(n + 1);
  out.admissible.resize(n + 1);
  bool below_adequacy_so_far = true;
  for (std::size_t m = 0; m <= n; ++m) {
    const auto b = contributions(m);
    double capital = government_capital;
    for (double x : b) capital += x;
    double contested = 0.0;
    for (std::size_t i = m; i < n; ++i) contested += pi[i];
    const double z = contested > 0.0 ? capital / contested : kInfinity;

    double u = 0.0, spent = 0.0;
    for (std::size_t i = 0; i < m; ++i) u -= alpha * pi[i];
    for (std::size_t i = m; i < n; ++i) {
      const double k = pi[i] * std::min(z, 1.0);
      u += contest_payoff(pi[i], alpha, k);
      spent += k;
    }
    u += capital - spent;

    out.utility[m] = u;
    out.adequacy[m] = z;
    if (m > 0 && alpha > 2.0) below_adequacy_so_far = below_adequacy_so_far && z <= 1.0 + 1e-9;
    out.admissible[m] = m == 0 || (below_adequacy_so_far && government_capital < total);
  }
  for (std::size_t m = 1; m <= n; ++m) {
    if (!out.admissible[m]) continue;
    const double incumbent = out.utility[out.best_m];
    if (out.utility[m] > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent))) out.best_m = m;
  }
  out.contributions = contributions(out.best_m);
  return out;
}

CutoffOracleResult cutoff_scan(const Segments& effective, double capital) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < effective.size(); ++i)
    if (effective[i].mass > 0.0 && effective[i].profile.pi > 0.0) usable.push_back(i);
  if (usable.size() > 12) throw PreconditionError("cutoff_scan handles at most 12 segments");

  const std::size_t k = usable.size();
  std::vector<double> weight(k), alpha(k);
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    weight[j] = effective[usable[j]].mass * effective[usable[j]].profile.pi;
    alpha[j] = effective[usable[j]].profile.alpha;
    total += weight[j];
  }
  const double target = 0.5 * (total - capital);

  CutoffOracleResult best;
  best.government_utility = -kInfinity;
  std::vector<double> theta(k), best_theta(k);

  auto consider = [&] {
    double dealt = 0.0, harm = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      dealt += theta[j] * weight[j];
      harm += theta[j] * weight[j] * alpha[j];
    }
    const double z = self_consistent_adequacy(capital, dealt, total);
    if (dealt > 0.0 && !(z <= 1.0 + 1e-9)) return;
    const double paid = dealt * willingness_per_pi(z);
    double u = -harm + capital + paid;
    for (std::size_t j = 0; j < k; ++j) {
      const double share = (1.0 - theta[j]) * weight[j];
      if (share <= 0.0) continue;
      // Per unit of importance: capital min(Z,1) against pi = 1.
      const double per_unit = std::min(z, 1.0);
      u += share * (contest_payoff(1.0, alpha[j], per_unit) - per_unit);
    }
    const double incumbent = best.government_utility;
    if (std::isinf(incumbent) || u > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent))) {
      best.government_utility = u;
      best.dealt_importance = dealt;
      best_theta = theta;
    }
  };

  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    double whole = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      theta[j] = (mask >> j) & 1U ? 1.0 : 0.0;
      whole += theta[j] * weight[j];
    }
    consider();
    for (std::size_t j = 0; j < k; ++j) {
      if ((mask >> j) & 1U) continue;
      for (int g = 1; g < 20; ++g) {
        theta[j] = g / 20.0;
        consider();
      }
      const double exact = (target - whole) / weight[j];
      if (exact > 0.0 && exact < 1.0) {
        theta[j] = exact;
        consider();
      }
      theta[j] = 0.0;
    }
  }

  best.max_dealt_alpha = -kInfinity;
  best.min_contested_alpha = kInfinity;
  for (std::size_t j = 0; j < k; ++j) {
    if (best_theta[j] > 1e-12) best.max_dealt_alpha = std::max(best.max_dealt_alpha, alpha[j]);
    if (best_theta[j] < 1.0 - 1e-12) best.min_contested_alpha = std::min(best.min_contested_alpha, alpha[j]);
  }
  return best;
}

McConvergence mc_convergence(double capital, double lobbying, std::uint64_t samples,
                             std::size_t seeds, std::uint64_t master_seed) {
  McConvergence out;
  out.seeds = seeds;
  const double spent = capital + lobbying;
  const double analytic = spent > 0.0 ? capital / spent : 0.5;
  std::size_t within = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto est = estimate_win_probability(capital, lobbying, samples, derive_seed(master_seed, s));
    const double gap = std::abs(est.p_hat - analytic);
    out.max_gap = std::max(out.max_gap, gap);
    if (gap <= 4.0 * est.standard_error) ++within;
  }
  out.fraction_within_4se = seeds ? static_cast<double>(within) / static_cast<double>(seeds) : 0.0;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void best_response_suite(std::size_t instances, std::uint64_t seed, std::vector<CheckRow>& rows) {
  for (std::size_t i = 0; i < instances; ++i) {
    const std::uint64_t s = derive_seed(seed, 1, i);
    std::mt19937_64 engine(s);
    const double pi = uniform(engine, 0.1, 10.0);
    const double capital = uniform(engine, 0.0, 2.0 * pi);
    const auto br = lobby_best_response(pi, capital);
    const auto rep = grid_best_response_check(pi, capital, br.lobbying, 2.0 * pi / 1e4, 2.0 * pi);
    rows.push_back({"best-response", s, rep.ok(), rep.max_improvement(),
                    "pi=" + fmt(pi) + " K=" + fmt(capital)});
  }
}

void government_suite(std::size_t instances, std::uint64_t seed, std::vector<CheckRow>& rows) {
  for (std::size_t i = 0; i < instances; ++i) {
    const std::uint64_t s = derive_seed(seed, 2, i);
    std::mt19937_64 engine(s);
    const std::size_t laws = 1 + i % 3;
    std::vector<double> pi(laws);
    Segments segs;
    double total = 0.0;
    for (auto& p : pi) {
      p = uniform(engine, 0.1, 5.0);
      total += p;
    }
    const double alpha = uniform(engine, 1.1, 5.0);
    const double capital = uniform(engine, 0.0, 1.5 * total);
    for (double p : pi) segs.push_back({1.0, {p, alpha}});
    const auto alloc = allocate_contests(segs, DealBook::none(laws), capital, Variant::Sequential);
    std::vector<double> claimed(laws);
    for (std::size_t j = 0; j < laws; ++j) claimed[j] = alloc.laws[j].capital;
    const auto res = grid_government_check(pi, alpha, capital, claimed);
    rows.push_back({"government-grid", s, res.report.ok(), res.report.max_improvement(),
                    std::to_string(laws) + " laws, K^T=" + fmt(capital) + " Pi=" + fmt(total)});
  }
}

void prefix_suite(std::size_t instances, std::uint64_t seed, std::vector<CheckRow>& rows) {
  constexpr ContributionConvention conventions[] = {ContributionConvention::EquilibriumState,
                                                    ContributionConvention::MyopicSequential,
                                                    ContributionConvention::FixedPointCounterfactual};
  for (std::size_t i = 0; i < instances; ++i) {
    const std::uint64_t s = derive_seed(seed, 3, i);
    std::mt19937_64 engine(s);
    const std::size_t n = 1 + i % 12;
    auto pi = draw_roster(n, 1.0, 11.0, engine);
    double total = 0.0;
    for (double p : pi) total += p;
    const double alpha = uniform(engine, 1.2, 4.5);
    const double capital = uniform(engine, 0.0, 1.2 * total);
    const auto convention = conventions[i % 3];

    const auto sim = run_sequential(pi, alpha, capital, convention);
    const auto ref = prefix_bruteforce(pi, alpha, capital, convention);
    const double scale = std::max(1.0, std::abs(ref.utility[ref.best_m]));
    const double gap = ref.utility[ref.best_m] - sim.government_utility;
    bool ok = sim.m == ref.best_m && std::abs(gap) <= 1e-9 * scale;
    for (std::size_t j = 0; ok && j < sim.contributions.size(); ++j)
      ok = std::abs(sim.contributions[j] - ref.contributions[j]) <= 1e-9 * std::max(1.0, pi[j]);
    rows.push_back({"prefix", s, ok, std::max(0.0, gap),
                    std::string(to_string(convention)) + " n=" + std::to_string(n) +
                        " m=" + std::to_string(sim.m) + " oracle m=" + std::to_string(ref.best_m)});
  }
}

void cutoff_suite(std::size_t instances, std::uint64_t seed, std::vector<CheckRow>& rows) {
  for (std::size_t i = 0; i < instances; ++i) {
    const std::uint64_t s = derive_seed(seed, 4, i);
    std::mt19937_64 engine(s);
    const std::size_t k = 2 + i % 11;
    const double lo = uniform(engine, 2.05, 3.0);
    const double width = uniform(engine, 0.01, 0.3);
    std::vector<double> alphas(k);
    for (std::size_t j = 0; j < k; ++j) alphas[j] = lo + static_cast<double>(j) * width;
    for (std::size_t j = k - 1; j > 0; --j) {
      const auto r = static_cast<std::size_t>(open_unit(engine) * static_cast<double>(j + 1));
      std::swap(alphas[j], alphas[std::min(r, j)]);
    }
    Segments segs;
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double mass = uniform(engine, 0.05, 1.0);
      const double pi = uniform(engine, 0.5, 2.0);
      segs.push_back({mass, {pi, alphas[j]}});
      total += mass * pi;
    }
    Scenario sc;
    sc.government_capital = uniform(engine, 0.0, 1.2 * total);
    sc.population = segs;

    const auto [cut, report] = heterogeneous_cutoff(sc);
    const auto ref = cutoff_scan(report.effective, sc.government_capital);
    const double scale = std::max(1.0, total);
    bool ok = std::abs(cut.dealt_importance - ref.dealt_importance) <= 1e-9 * scale &&
              report.government_utility >= ref.government_utility - 1e-9 * scale;
    if (ref.dealt_importance > 0.0)
      ok = ok && cut.alpha_bar >= ref.max_dealt_alpha - width - 1e-12 &&
           cut.alpha_bar <= ref.min_contested_alpha + width + 1e-12;
    else
      ok = ok && std::isinf(cut.alpha_bar);
    rows.push_back({"cutoff", s, ok, std::max(0.0, ref.government_utility - report.government_utility),
                    std::to_string(k) + " segments, alpha_bar=" + fmt(cut.alpha_bar)});
  }
}

void mc_suite(std::size_t instances, std::uint64_t seed, std::vector<CheckRow>& rows) {
  const double pairs[][2] = {{1.0, 3.0}, {1.0, 1.0}, {9.0, 1.0}};
  for (std::size_t j = 0; j < 3; ++j) {
    const std::uint64_t s = derive_seed(seed, 5, j);
    const auto mc = mc_convergence(pairs[j][0], pairs[j][1], 100000, instances, s);
    rows.push_back({"mc", s, mc.fraction_within_4se >= 0.99, mc.max_gap,
                    "K=" + fmt(pairs[j][0]) + " L=" + fmt(pairs[j][1]) +
                        " within4se=" + fmt(mc.fraction_within_4se)});
  }
}

}  // namespace

std::vector<CheckRow> run_verification(const std::string& suite, std::size_t instances,
                                       std::uint64_t seed) {
  const bool all = suite == "all";
  if (!all && suite != "best-response" && suite != "government-grid" && suite != "prefix" &&
      suite != "cutoff" && suite != "mc")
    throw ValidationError("suite", "unknown suite '" + suite +
                                       "' (expected all, best-response, government-grid, prefix, "
                                       "cutoff or mc)");
  std::vector<CheckRow> rows;
  if (all || suite == "best-response") best_response_suite(instances, seed, rows);
  if (all || suite == "government-grid") government_suite(instances, seed, rows);
  if (all || suite == "prefix") prefix_suite(instances, seed, rows);
  if (all || suite == "cutoff") cutoff_suite(instances, seed, rows);
  if (suite == "mc") mc_suite(instances, seed, rows);
  return rows;
}

}  // namespace lobbying::oracle
