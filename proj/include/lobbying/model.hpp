#pragma once

// Domain types for the government-vs-interest-groups lobbying game.
//
// Populations are either piecewise-constant segments (a continuum of laws,
// integrals become mass-weighted sums) or a finite roster of groups. Every
// solver works on *effective* profiles: efficacy z and post-win lobbying
// share beta are folded into (pi, alpha) up front by effective_profile().

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lobbying {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Absolute tolerance when comparing Z against a regime threshold. A Z within
/// this distance of the threshold takes the "<=" branch.
inline constexpr double kThresholdTolerance = 1e-12;

// ---------------------------------------------------------------------------
// Errors

/// A scenario or profile violates a type invariant. field() holds the path of
/// the first offending field, e.g. "population.segments[2].profile.alpha".
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The requested combination of variant / population is not covered by any
/// closed form (e.g. simultaneous moves with heterogeneous alpha).
class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver precondition does not hold (e.g. alpha <= 2 in the cutoff model).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A law with zero importance was passed to a contest routine.
class DegenerateLaw : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal postcondition failed. Indicates a bug, never bad input.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Types

struct LawProfile {
  double pi = 0.0;     ///< importance to the interest group
  double alpha = 2.0;  ///< harmfulness multiplier, > 1
  double z = 1.0;      ///< efficacy of legislation, in [0, 1]
  double beta = 0.0;   ///< post-win lobbying share, in [0, 1)
};

struct Segment {
  double mass = 0.0;
  LawProfile profile;
};

struct Group {
  int id = 0;
  LawProfile profile;
};

using Segments = std::vector<Segment>;
using Roster = std::vector<Group>;
using Population = std::variant<Segments, Roster>;

enum class Variant { Sequential, Simultaneous, NonFungible };

const char* to_string(Variant v) noexcept;
/// Accepts "baseline"/"sequential", "simultaneous", "nonfungible".
Variant parse_variant(const std::string& name);

struct Scenario {
  double government_capital = 0.0;  ///< K^G
  Population population;
  Variant variant = Variant::Sequential;
  double bargain_select = 1.0;      ///< lambda in [0,1]; 1 settles at b_max
  double transfer = 0.0;            ///< lump-sum transfer tau >= 0
};

/// Per-entry deal state. For segments the contribution is a rate per unit
/// mass; for roster entries (unit mass) it is the contribution B_i itself
/// when dealt_fraction is 1.
struct Deal {
  double dealt_fraction = 0.0;
  double contribution_rate = 0.0;
};

struct DealBook {
  std::vector<Deal> entries;

  static DealBook none(std::size_t size) { return DealBook{std::vector<Deal>(size)}; }
  std::size_t size() const noexcept { return entries.size(); }
};

// ---------------------------------------------------------------------------
// Operations

/// Returns the scenario unchanged if every invariant holds, otherwise throws
/// ValidationError naming the first violated field.
const Scenario& validate(const Scenario& scenario);
void validate_profile(const LawProfile& profile, const std::string& path);

/// Reduced-form profile: pi' = z*pi, then pi_hat = (1-beta)*pi',
/// alpha_hat = (alpha+beta)/(1-beta). The result has z = 1, beta = 0.
LawProfile effective_profile(const LawProfile& profile);

/// The population as a list of effective segments; roster groups become
/// unit-mass segments in roster order.
Segments effective_segments(const Population& population);

std::size_t population_size(const Population& population);
bool is_roster(const Population& population) noexcept;

/// Sum of mass * effective pi over the whole population.
double importance_mass(const Population& population);
/// Same, restricted to the undealt share (1 - dealt_fraction) of each entry.
double contestable_importance(const Population& population, const DealBook& deals);
/// Sum of mass * dealt_fraction * contribution_rate.
double total_contributions(const Population& population, const DealBook& deals);

/// Common effective alpha when every entry with positive mass and importance
/// agrees to 1e-12 relative. An all-zero population reports the first alpha.
std::optional<double> homogeneous_alpha(const Segments& effective);

}  // namespace lobbying
