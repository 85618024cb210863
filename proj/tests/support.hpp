#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "lobbying/model.hpp"
#include "lobbying/rng.hpp"

namespace testing {

inline lobbying::Scenario one_segment(double kg, double alpha, double pi = 1.0, double mass = 1.0) {
  lobbying::Scenario s;
  s.government_capital = kg;
  s.population = lobbying::Segments{{mass, {pi, alpha}}};
  return s;
}

inline lobbying::Scenario segments(double kg, lobbying::Segments segs) {
  lobbying::Scenario s;
  s.government_capital = kg;
  s.population = std::move(segs);
  return s;
}

/// Equal-mass segments at the alpha midpoints of [lo, hi], pi = 1.
inline lobbying::Segments uniform_alpha(std::size_t count, double lo, double hi) {
  lobbying::Segments out;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back({1.0 / static_cast<double>(count),
                   {1.0, lo + (static_cast<double>(k) + 0.5) * (hi - lo) / static_cast<double>(count)}});
  return out;
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// Importances of the ten-group reference roster (n = 10, alpha = 3, K^G = 10).
inline const std::vector<double> kReferencePi = {5.170, 8.203, 1.001, 4.023, 2.468,
                                                 1.923, 2.863, 4.456, 4.968, 6.388};
inline const std::vector<double> kReferenceB = {5.087, 8.071, 0.985};
inline const std::vector<double> kReferenceK = {3.586, 2.199, 1.714, 2.551, 3.971, 4.427, 5.694};

inline std::mt19937_64 engine_for(std::uint64_t test, std::uint64_t instance) {
  return std::mt19937_64(lobbying::derive_seed(0x5eedULL, test, instance));
}

}  // namespace testing
