#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace lobbying::cli {

/// Everything a subcommand needs to reproduce its outputs; serialised into
/// the run manifest.
struct Invocation {
  std::string subcommand;
  std::string config_path;
  std::string config_text;  ///< empty for subcommands without a config
  nlohmann::json options = nlohmann::json::object();
  std::string out;          ///< output directory; empty writes nothing
};

struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;  ///< file name, content
  std::string console;
  bool verification_failed = false;
};

/// Computes every output in memory. Throws on bad input before anything is
/// written.
Outputs run(const Invocation& invocation);

/// Writes the outputs and a manifest.json into invocation.out (atomically,
/// file by file). Returns the paths written.
std::vector<std::string> commit(const Invocation& invocation, const Outputs& outputs);

nlohmann::json manifest(const Invocation& invocation, const std::vector<std::string>& files);
Invocation from_manifest(const nlohmann::json& manifest);

/// "lo:hi:step" to the inclusive grid lo, lo+step, ...; empty when hi < lo.
std::vector<double> parse_grid(const std::string& text);
/// "lo:hi:step" or a comma list of positive integers.
std::vector<std::size_t> parse_n_grid(const std::string& text);

}  // namespace lobbying::cli
