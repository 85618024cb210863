#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "lobbying/config.hpp"
#include "lobbying/contest.hpp"
#include "lobbying/csv.hpp"
#include "lobbying/finitesim.hpp"
#include "lobbying/oracle.hpp"
#include "lobbying/variants.hpp"

namespace lobbying::cli {

using nlohmann::json;

namespace {

std::string num(double x) { return format_number(x); }
std::string num(std::size_t x) { return std::to_string(x); }

Config config_of(const Invocation& inv) {
  return parse_config(inv.config_text, inv.config_path.empty() ? "<config>" : inv.config_path);
}

Scenario scenario_of(const Invocation& inv) {
  Config cfg = config_of(inv);
  if (!cfg.has_population)
    throw ConfigError(inv.config_path, 1, "population",
                      "no [segment], [group] or [uniform_alpha] block given");
  if (inv.options.contains("variant") && !inv.options["variant"].is_null())
    cfg.scenario.variant = parse_variant(inv.options["variant"].get<std::string>());
  return cfg.scenario;
}

Outputs solve_command(const Invocation& inv) {
  const Scenario sc = scenario_of(inv);
  const EquilibriumReport r = solve(sc);

  CsvTable report{{"entry", "mass", "pi", "alpha", "dealt_fraction", "contribution_rate",
                   "capital_rate", "lobbying_rate", "win_probability"},
                  {}};
  for (std::size_t i = 0; i < r.effective.size(); ++i) {
    const auto& s = r.effective[i];
    const auto& law = r.allocation.laws[i];
    report.add({num(i + 1), num(s.mass), num(s.profile.pi), num(s.profile.alpha),
                num(r.deals.entries[i].dealt_fraction), num(r.deals.entries[i].contribution_rate),
                num(law.capital), num(law.lobbying), num(law.win_probability)});
  }

  CsvTable summary{{"variant", "branch", "Z", "u_G", "u_c", "citizen_loss", "dealt_importance",
                    "total_contributions", "total_contest_spend", "unspent_capital",
                    "multiple_equilibria", "alpha_bar"},
                   {}};
  summary.add({to_string(r.variant), branch_tag(r.branch), num(r.adequacy), num(r.government_utility),
               num(r.citizen_utility), num(r.citizen_loss), num(r.dealt_importance),
               num(r.total_contributions), num(r.total_contest_spend),
               num(r.allocation.unspent_capital), r.multiple_equilibria ? "1" : "0",
               r.cutoff ? num(r.cutoff->alpha_bar) : ""});

  Outputs out;
  out.files = {{"report.csv", report.str()}, {"summary.csv", summary.str()}};
  out.console = summary.str();
  return out;
}

Outputs sweep_command(const Invocation& inv) {
  const Scenario base = scenario_of(inv);
  const std::string param = inv.options.at("param").get<std::string>();
  if (param != "Kg" && param != "tau")
    throw ValidationError("--param", "expected Kg or tau, got '" + param + "'");
  const auto grid = parse_grid(inv.options.at("grid").get<std::string>());
  if (grid.empty()) throw ValidationError("--grid", "grid is empty");

  CsvTable table{{param, "dealt_importance", "total_contributions", "total_contest_spend", "u_G", "u_c"},
                 {}};
  for (double v : grid) {
    Scenario sc = base;
    (param == "Kg" ? sc.government_capital : sc.transfer) = v;
    const auto r = solve(sc);
    table.add({num(v), num(r.dealt_importance), num(r.total_contributions), num(r.total_contest_spend),
               num(r.government_utility), num(r.citizen_utility)});
  }
  Outputs out;
  out.files = {{"sweep.csv", table.str()}};
  return out;
}

Outputs simulate_command(const Invocation& inv) {
  Config cfg = config_of(inv);
  SimulationConfig sim = cfg.simulation;
  const auto& o = inv.options;
  if (o.contains("convention") && !o["convention"].is_null())
    sim.convention = parse_convention(o["convention"].get<std::string>());
  if (o.contains("runs") && !o["runs"].is_null()) sim.runs = o["runs"].get<std::size_t>();
  validate(sim);

  std::vector<std::size_t> grid;
  if (o.contains("n_grid") && !o["n_grid"].is_null())
    grid = parse_n_grid(o["n_grid"].get<std::string>());
  else
    grid = {sim.pi.empty() ? sim.n : sim.pi.size()};
  if (grid.empty()) throw ValidationError("--n-grid", "population-size grid is empty");
  if (!sim.pi.empty() && (grid.size() != 1 || grid[0] != sim.pi.size()))
    throw ValidationError("--n-grid", "an explicit pi_values roster fixes n = " + std::to_string(sim.pi.size()));
  const bool all_runs = o.value("per_law_all", false);

  CsvTable per_law{{"n", "run", "id", "pi", "B", "K", "L", "p", "B_over_pi", "K_over_pi", "Z", "m"}, {}};
  for (std::size_t n : grid) {
    for (std::size_t run = 0; run < (all_runs ? sim.runs : 1); ++run) {
      const auto r = run_sequential(sim, n, run);
      for (std::size_t i = 0; i < r.pi.size(); ++i) {
        const bool dealt = i < r.m;
        const double b = dealt ? r.contributions[i] : 0.0;
        const auto& law = r.laws[i];
        const bool has_pi = r.pi[i] > 0.0;
        per_law.add({num(n), num(run), num(i + 1), num(r.pi[i]), num(b), num(law.capital),
                     num(law.lobbying), num(law.win_probability),
                     dealt && has_pi ? num(b / r.pi[i]) : "",
                     !dealt && has_pi ? num(law.capital / r.pi[i]) : "", num(r.adequacy), num(r.m)});
      }
    }
  }

  CsvTable aggregate{{"n", "runs", "mean_Z", "sd_Z", "dealt_share"}, {}};
  for (const auto& row : sweep_population_size(sim, grid, sim.runs))
    aggregate.add({num(row.n), num(row.runs), num(row.mean_adequacy), num(row.sd_adequacy),
                   num(row.mean_dealt_share)});

  Outputs out;
  out.files = {{"per_law.csv", per_law.str()}, {"aggregate.csv", aggregate.str()}};
  out.console = aggregate.str();
  return out;
}

Outputs mc_command(const Invocation& inv) {
  const auto& o = inv.options;
  const double k = o.at("K").get<double>();
  const double l = o.at("L").get<double>();
  const auto samples = o.at("samples").get<std::uint64_t>();
  const auto seed = o.at("seed").get<std::uint64_t>();
  const auto est = estimate_win_probability(k, l, samples, seed);

  CsvTable t{{"K", "L", "samples", "seed", "p_hat", "standard_error", "analytic", "gap"}, {}};
  t.add({num(k), num(l), std::to_string(samples), std::to_string(seed), num(est.p_hat),
         num(est.standard_error), num(est.analytic), num(std::abs(est.p_hat - est.analytic))});
  Outputs out;
  out.files = {{"mc_contest.csv", t.str()}};
  out.console = t.str();
  return out;
}

Outputs verify_command(const Invocation& inv) {
  const auto& o = inv.options;
  const auto rows = oracle::run_verification(o.at("suite").get<std::string>(),
                                             o.at("instances").get<std::size_t>(),
                                             o.at("seed").get<std::uint64_t>());
  CsvTable t{{"check", "instance_seed", "status", "max_improvement", "detail"}, {}};
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.passed) ++failed;
    t.add({r.check, std::to_string(r.instance_seed), r.passed ? "pass" : "FAIL", num(r.max_improvement),
           r.detail});
  }
  Outputs out;
  out.files = {{"verify.csv", t.str()}};
  std::ostringstream msg;
  msg << rows.size() << " checks, " << failed << " violations\n";
  for (const auto& r : rows)
    if (!r.passed) msg << "FAIL " << r.check << " seed=" << r.instance_seed << " " << r.detail << "\n";
  out.console = msg.str();
  out.verification_failed = failed > 0;
  return out;
}

}  // namespace

Outputs run(const Invocation& inv) {
  if (inv.subcommand == "solve") return solve_command(inv);
  if (inv.subcommand == "sweep") return sweep_command(inv);
  if (inv.subcommand == "simulate") return simulate_command(inv);
  if (inv.subcommand == "mc-contest") return mc_command(inv);
  if (inv.subcommand == "verify") return verify_command(inv);
  throw ValidationError("subcommand", "unknown subcommand '" + inv.subcommand + "'");
}

json manifest(const Invocation& inv, const std::vector<std::string>& files) {
  json m;
  m["subcommand"] = inv.subcommand;
  m["tool_version"] = LOBBYING_VERSION;
  m["config_path"] = inv.config_path;
  m["config"] = inv.config_text;
  m["options"] = inv.options;
  if (inv.options.contains("seed"))
    m["seed"] = inv.options["seed"];
  else if (!inv.config_text.empty())
    m["seed"] = config_of(inv).simulation.seed;
  m["out"] = inv.out;
  m["outputs"] = files;
  return m;
}

Invocation from_manifest(const json& m) {
  Invocation inv;
  inv.subcommand = m.at("subcommand").get<std::string>();
  inv.config_path = m.value("config_path", "");
  inv.config_text = m.value("config", "");
  inv.options = m.value("options", json::object());
  inv.out = m.value("out", "");
  return inv;
}

std::vector<std::string> commit(const Invocation& inv, const Outputs& outputs) {
  std::vector<std::string> written;
  if (inv.out.empty()) return written;
  const std::filesystem::path dir(inv.out);
  for (const auto& [name, content] : outputs.files) {
    const auto path = (dir / name).string();
    write_atomic(path, content);
    written.push_back(name);
  }
  write_atomic((dir / "manifest.json").string(), manifest(inv, written).dump(2) + "\n");
  written.push_back("manifest.json");
  return written;
}

std::vector<double> parse_grid(const std::string& text) {
  double v[3];
  std::size_t start = 0;
  for (int k = 0; k < 3; ++k) {
    const auto colon = text.find(':', start);
    if ((k < 2) != (colon != std::string::npos))
      throw ValidationError("--grid", "expected lo:hi:step, got '" + text + "'");
    const std::string part = text.substr(start, k < 2 ? colon - start : std::string::npos);
    std::size_t used = 0;
    try {
      v[k] = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || !std::isfinite(v[k]))
      throw ValidationError("--grid", "bad number '" + part + "' in '" + text + "'");
    start = colon + 1;
  }
  const double lo = v[0], hi = v[1], step = v[2];
  std::vector<double> grid;
  if (!(step > 0.0) || hi < lo) return grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) grid.push_back(lo + static_cast<double>(k) * step);
  return grid;
}

std::vector<std::size_t> parse_n_grid(const std::string& text) {
  std::vector<std::size_t> out;
  auto to_count = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || v < 1)
      throw ValidationError("--n-grid", "bad population size '" + s + "' in '" + text + "'");
    return static_cast<std::size_t>(v);
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ValidationError("--n-grid", "expected lo:hi:step, got '" + text + "'");
    const auto lo = to_count(parts[0]), hi = to_count(parts[1]), step = to_count(parts[2]);
    for (std::size_t n = lo; n <= hi; n += step) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_count(p));
  return out;
}

}  // namespace lobbying::cli
