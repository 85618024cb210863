// Command-line front end: solve, sweep, simulate, mc-contest, verify, replay.
//
// Exit codes: 0 success, 1 usage or config error, 2 verification failure,
// 3 internal invariant breach.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lobbying/csv.hpp"
#include "lobbying/model.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kVerification = 2;
constexpr int kInternal = 3;

int execute(lobbying::cli::Invocation inv) {
  const auto outputs = lobbying::cli::run(inv);
  lobbying::cli::commit(inv, outputs);
  std::cout << outputs.console;
  return outputs.verification_failed ? kVerification : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and simulator for the government-vs-interest-groups lobbying game"};
  app.set_version_flag("--version", LOBBYING_VERSION);
  app.require_subcommand(1);

  lobbying::cli::Invocation inv;
  std::optional<std::string> variant, convention, n_grid;
  std::optional<std::size_t> runs;
  std::string param, grid, suite = "all", manifest_path;
  double k = 0.0, l = 0.0;
  std::uint64_t samples = 1000000, seed = 1, verify_seed = 20240611;
  std::size_t instances = 200;
  bool per_law_all = false;

  auto* solve = app.add_subcommand("solve", "Solve a scenario's equilibrium");
  solve->add_option("config", inv.config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  solve->add_option("--variant", variant, "baseline | simultaneous | nonfungible");
  solve->add_option("--out", inv.out, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Re-solve over a grid of K^G or tau");
  sweep->add_option("config", inv.config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "Kg | tau")->required();
  sweep->add_option("--grid", grid, "lo:hi:step")->required();
  sweep->add_option("--variant", variant, "baseline | simultaneous | nonfungible");
  sweep->add_option("--out", inv.out, "Output directory")->required();

  auto* simulate = app.add_subcommand("simulate", "Finite-population sequential deal simulation");
  simulate->add_option("config", inv.config_path, "Simulation config")->required()->check(CLI::ExistingFile);
  simulate->add_option("--n-grid", n_grid, "lo:hi:step or comma list of population sizes");
  simulate->add_option("--runs", runs, "Runs per population size");
  simulate->add_option("--convention", convention,
                       "equilibrium-state | myopic-sequential | fixed-point-counterfactual");
  simulate->add_flag("--per-law-all", per_law_all, "Per-law rows for every run, not only run 0");
  simulate->add_option("--out", inv.out, "Output directory")->required();

  auto* mc = app.add_subcommand("mc-contest", "Monte-Carlo check of the arbiter's win probability");
  mc->add_option("--K", k, "Government capital")->required()->check(CLI::NonNegativeNumber);
  mc->add_option("--L", l, "Group lobbying")->required()->check(CLI::NonNegativeNumber);
  mc->add_option("--samples", samples, "Number of draws")->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed, "Master seed");
  mc->add_option("--out", inv.out, "Optional output directory");

  auto* verify = app.add_subcommand("verify", "Run the brute-force oracle suite");
  verify->add_option("--suite", suite, "all | best-response | government-grid | prefix | cutoff | mc");
  verify->add_option("--instances", instances, "Seeded instances per suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "Master seed");
  verify->add_option("--out", inv.out, "Optional output directory");

  auto* replay = app.add_subcommand("replay", "Re-run from a manifest.json");
  replay->add_option("manifest", manifest_path, "Manifest written by an earlier run")
      ->required()
      ->check(CLI::ExistingFile);
  replay->add_option("--out", inv.out, "Output directory (default: the manifest's)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    auto* sub = app.get_subcommands().front();
    inv.subcommand = sub->get_name();
    if (sub == replay) {
      auto restored = lobbying::cli::from_manifest(nlohmann::json::parse(lobbying::read_file(manifest_path)));
      if (!inv.out.empty()) restored.out = inv.out;
      return execute(restored);
    }
    if (!inv.config_path.empty()) inv.config_text = lobbying::read_file(inv.config_path);
    auto& o = inv.options;
    if (sub == solve || sub == sweep) o["variant"] = variant ? nlohmann::json(*variant) : nlohmann::json();
    if (sub == sweep) {
      o["param"] = param;
      o["grid"] = grid;
    }
    if (sub == simulate) {
      o["n_grid"] = n_grid ? nlohmann::json(*n_grid) : nlohmann::json();
      o["runs"] = runs ? nlohmann::json(*runs) : nlohmann::json();
      o["convention"] = convention ? nlohmann::json(*convention) : nlohmann::json();
      o["per_law_all"] = per_law_all;
    }
    if (sub == mc) {
      o["K"] = k;
      o["L"] = l;
      o["samples"] = samples;
      o["seed"] = seed;
    }
    if (sub == verify) {
      o["suite"] = suite;
      o["instances"] = instances;
      o["seed"] = verify_seed;
    }
    return execute(inv);
  } catch (const lobbying::InvariantBreach& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad manifest: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
