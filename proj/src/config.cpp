#include "lobbying/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "lobbying/csv.hpp"

namespace lobbying {

ConfigError::ConfigError(const std::string& origin, int line, const std::string& field,
                         const std::string& what)
    : std::invalid_argument(origin + ":" + std::to_string(line) + ": " +
                            (field.empty() ? "" : field + ": ") + what),
      line_(line),
      field_(field) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

struct Block {
  std::string kind;  // "" for the top level
  int line = 0;
  std::map<std::string, Entry> keys;
};

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(int line, const std::string& field, const std::string& what) const {
    throw ConfigError(origin_, line, field, what);
  }

  double number(const Block& b, const std::string& key) const {
    const Entry& e = b.keys.at(key);
    double out = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out))
      fail(e.line, key, "expected a finite number, got '" + e.value + "'");
    return out;
  }

  std::optional<double> maybe(const Block& b, const std::string& key) const {
    if (!b.keys.count(key)) return std::nullopt;
    return number(b, key);
  }

  double required(const Block& b, const std::string& key) const {
    if (!b.keys.count(key)) fail(b.line, key, "missing required key in [" + b.kind + "]");
    return number(b, key);
  }

  std::uint64_t count(const Block& b, const std::string& key) const {
    const Entry& e = b.keys.at(key);
    std::uint64_t out = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
      fail(e.line, key, "expected a nonnegative integer, got '" + e.value + "'");
    return out;
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
};

const std::map<std::string, std::vector<std::string>> kAllowed = {
    {"",
     {"government_capital", "variant", "bargain_select", "transfer", "n", "alpha",
      "capital_per_group", "pi_lo", "pi_hi", "pi_values", "seed", "runs", "convention"}},
    {"segment", {"mass", "pi", "alpha", "z", "beta"}},
    {"group", {"id", "pi", "alpha", "z", "beta"}},
    {"uniform_alpha", {"count", "lo", "hi", "pi", "mass", "z", "beta"}},
};

/// The message of a ValidationError without its "field: " prefix.
std::string bare(const ValidationError& e) {
  const std::string what = e.what();
  return what.substr(e.field().size() + 2);
}

LawProfile read_profile(const Reader& r, const Block& b) {
  LawProfile p;
  p.pi = r.required(b, "pi");
  p.alpha = r.required(b, "alpha");
  p.z = r.maybe(b, "z").value_or(1.0);
  p.beta = r.maybe(b, "beta").value_or(0.0);
  return p;
}

}  // namespace

Config parse_config(const std::string& text, const std::string& origin) {
  Reader reader(origin);
  std::vector<Block> blocks(1);
  blocks[0].line = 1;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') reader.fail(line, "", "unterminated block header '" + s + "'");
      const std::string kind = trim(s.substr(1, s.size() - 2));
      if (kind.empty() || !kAllowed.count(kind))
        reader.fail(line, "", "unknown block [" + kind + "] (expected segment, group or uniform_alpha)");
      blocks.push_back({kind, line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) reader.fail(line, "", "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    Block& b = blocks.back();
    const auto& allowed = kAllowed.at(b.kind);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      reader.fail(line, key, "unknown key" + (b.kind.empty() ? std::string(" at top level")
                                                             : " in [" + b.kind + "]"));
    if (value.empty()) reader.fail(line, key, "missing value");
    if (b.keys.count(key))
      reader.fail(line, key, "duplicate key (first set on line " + std::to_string(b.keys[key].line) + ")");
    b.keys[key] = {value, line};
  }

  Config cfg;
  const Block& top = blocks[0];
  Scenario& sc = cfg.scenario;
  SimulationConfig& sim = cfg.simulation;

  if (auto v = reader.maybe(top, "government_capital")) {
    sc.government_capital = *v;
    sim.government_capital = *v;
  }
  if (top.keys.count("variant")) {
    try {
      sc.variant = parse_variant(top.keys.at("variant").value);
    } catch (const ValidationError& e) {
      reader.fail(top.keys.at("variant").line, "variant", bare(e));
    }
  }
  sc.bargain_select = reader.maybe(top, "bargain_select").value_or(1.0);
  sc.transfer = reader.maybe(top, "transfer").value_or(0.0);

  if (top.keys.count("n")) sim.n = reader.count(top, "n");
  if (auto v = reader.maybe(top, "alpha")) sim.alpha = *v;
  if (auto v = reader.maybe(top, "capital_per_group")) sim.capital_per_group = *v;
  if (auto v = reader.maybe(top, "pi_lo")) sim.pi_lo = *v;
  if (auto v = reader.maybe(top, "pi_hi")) sim.pi_hi = *v;
  if (top.keys.count("seed")) sim.seed = reader.count(top, "seed");
  if (top.keys.count("runs")) sim.runs = reader.count(top, "runs");
  if (top.keys.count("convention")) {
    try {
      sim.convention = parse_convention(top.keys.at("convention").value);
    } catch (const ValidationError& e) {
      reader.fail(top.keys.at("convention").line, "convention", bare(e));
    }
  }
  if (top.keys.count("pi_values")) {
    const Entry& e = top.keys.at("pi_values");
    std::istringstream list(e.value);
    std::string item;
    while (std::getline(list, item, ',')) {
      Block one{"", e.line, {{"pi_values", {trim(item), e.line}}}};
      sim.pi.push_back(reader.number(one, "pi_values"));
    }
    sim.n = sim.pi.size();
  }

  // Population blocks, remembering where each entry was declared.
  Segments segments;
  Roster roster;
  std::vector<const Block*> entry_block;
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    const bool is_group = b.kind == "group";
    if ((is_group && !segments.empty()) || (!is_group && !roster.empty()))
      reader.fail(b.line, "", "[group] blocks cannot be mixed with [segment] or [uniform_alpha] blocks");
    if (b.kind == "segment") {
      segments.push_back({reader.maybe(b, "mass").value_or(1.0), read_profile(reader, b)});
      entry_block.push_back(&b);
    } else if (is_group) {
      Group g;
      g.id = static_cast<int>(roster.size()) + 1;
      if (b.keys.count("id")) {
        const auto id = reader.count(b, "id");
        if (id != static_cast<std::uint64_t>(g.id))
          reader.fail(b.keys.at("id").line, "id",
                      "group ids must be sequential from 1 (expected " + std::to_string(g.id) + ")");
      }
      g.profile = read_profile(reader, b);
      roster.push_back(g);
      entry_block.push_back(&b);
    } else {
      if (!b.keys.count("count")) reader.fail(b.line, "count", "missing required key in [uniform_alpha]");
      const auto count = reader.count(b, "count");
      if (count < 1) reader.fail(b.keys.at("count").line, "count", "count must be at least 1");
      const double lo = reader.required(b, "lo");
      const double hi = reader.required(b, "hi");
      if (!(lo <= hi)) reader.fail(b.keys.at("hi").line, "hi", "lo must not exceed hi");
      LawProfile p;
      p.pi = reader.maybe(b, "pi").value_or(1.0);
      p.z = reader.maybe(b, "z").value_or(1.0);
      p.beta = reader.maybe(b, "beta").value_or(0.0);
      const double mass = reader.maybe(b, "mass").value_or(1.0) / static_cast<double>(count);
      for (std::uint64_t k = 0; k < count; ++k) {
        p.alpha = lo + (static_cast<double>(k) + 0.5) * (hi - lo) / static_cast<double>(count);
        segments.push_back({mass, p});
        entry_block.push_back(&b);
      }
    }
  }

  cfg.has_population = !segments.empty() || !roster.empty();
  if (cfg.has_population) {
    if (!top.keys.count("government_capital"))
      reader.fail(1, "government_capital", "required when a population is given");
    if (!roster.empty())
      sc.population = std::move(roster);
    else
      sc.population = std::move(segments);
    try {
      validate(sc);
    } catch (const ValidationError& e) {
      // Point at the offending block when the field names a population entry.
      int where = 1;
      const std::string& f = e.field();
      const auto open = f.find('[');
      if (f.rfind("population.", 0) == 0 && open != std::string::npos) {
        const auto idx = static_cast<std::size_t>(std::stoul(f.substr(open + 1)));
        if (idx < entry_block.size()) {
          const Block& b = *entry_block[idx];
          const auto key = b.keys.find(f.substr(f.rfind('.') + 1));
          where = key != b.keys.end() ? key->second.line : b.line;
        }
      } else if (top.keys.count(f)) {
        where = top.keys.at(f).line;
      }
      throw ConfigError(origin, where, f, bare(e));
    }
  }

  try {
    validate(sim);
  } catch (const ValidationError& e) {
    const std::string& f = e.field();
    const int where = top.keys.count(f) ? top.keys.at(f).line : 1;
    throw ConfigError(origin, where, f, bare(e));
  }
  return cfg;
}

Config load_config(const std::string& path) {
  return parse_config(read_file(path), path);
}

}  // namespace lobbying
