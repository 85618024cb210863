#pragma once

// Scenario files. Flat `key = value` lines at the top level, followed by
// repeated blocks:
//
//   government_capital = 0.4     # K^G
//   variant = baseline           # baseline | simultaneous | nonfungible
//   bargain_select = 1           # lambda
//   transfer = 0                 # tau
//
//   [segment]                    # one piecewise-constant segment
//   mass = 1
//   pi = 1
//   alpha = 3
//   z = 1                        # optional
//   beta = 0                     # optional
//
//   [group]                      # one roster entry; id optional (1, 2, ...)
//   pi = 4.5
//   alpha = 3
//
//   [uniform_alpha]              # `count` equal-mass segments, alpha at the
//   count = 100                  # midpoints of [lo, hi]
//   lo = 2
//   hi = 4
//   pi = 1                       # optional, default 1
//   mass = 1                     # optional total mass, default 1
//
// Simulation keys (top level): n, alpha, capital_per_group, pi_lo, pi_hi,
// pi_values (comma list), seed, runs, convention. `#` starts a comment.
// [segment] / [uniform_alpha] blocks cannot be mixed with [group] blocks.

#include <stdexcept>
#include <string>

#include "lobbying/finitesim.hpp"
#include "lobbying/model.hpp"

namespace lobbying {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& origin, int line, const std::string& field, const std::string& what);
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

struct Config {
  Scenario scenario;
  bool has_population = false;
  SimulationConfig simulation;
};

/// Parses and validates. Throws ConfigError with the line and field of the
/// first problem.
Config parse_config(const std::string& text, const std::string& origin = "<config>");
Config load_config(const std::string& path);

}  // namespace lobbying
