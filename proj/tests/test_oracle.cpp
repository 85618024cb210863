#include <doctest.h>

#include <cmath>

#include "lobbying/contest.hpp"
#include "lobbying/oracle.hpp"
#include "support.hpp"

using namespace lobbying;

TEST_CASE("grid best-response check") {
  CHECK(oracle::grid_best_response_check(1.0, 0.25, 0.25).ok());

  const auto wrong = oracle::grid_best_response_check(1.0, 0.25, 0.1);
  REQUIRE_FALSE(wrong.ok());
  CHECK(std::abs(std::stod(wrong.violations.front().location.substr(wrong.violations.front().location.find('=') + 1)) -
                 0.25) <= 1e-3);
  CHECK(wrong.max_improvement() > 0.0);

  CHECK(oracle::grid_best_response_check(1.0, 1.5, 0.0).ok());
}

TEST_CASE("government grid check") {
  const auto a = oracle::grid_government_check({1.0, 4.0}, 3.0, 1.0, {0.2, 0.8});
  CHECK(a.report.ok());
  CHECK(std::abs(a.best_allocation[0] - 0.2) <= 1e-3);
  CHECK(std::abs(a.best_allocation[1] - 0.8) <= 1e-3);

  const auto b = oracle::grid_government_check({1.0, 1.0}, 3.0, 2.0, {1.0, 1.0});
  CHECK(b.report.ok());
  CHECK(b.best_allocation[0] == doctest::Approx(1.0));
  CHECK(b.best_allocation[1] == doctest::Approx(1.0));

  const auto c = oracle::grid_government_check({1.0}, 3.0, 1.7, {1.0});
  CHECK(c.report.ok());
  CHECK(std::abs(c.best_allocation[0] - 1.0) <= 1.7e-3);

  const auto bad = oracle::grid_government_check({1.0, 4.0}, 3.0, 1.0, {0.5, 0.5});
  CHECK_FALSE(bad.report.ok());

  CHECK_THROWS_AS(oracle::grid_government_check({1, 1, 1, 1}, 3.0, 1.0, {0.25, 0.25, 0.25, 0.25}),
                  PreconditionError);
}

TEST_CASE("solver allocation survives the government grid on three laws") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    auto rng = testing::engine_for(50, i);
    std::vector<double> pi;
    Segments segs;
    for (int j = 0; j < 3; ++j) {
      pi.push_back(uniform(rng, 0.2, 3.0));
      segs.push_back({1.0, {pi.back(), 3.0}});
    }
    const double kt = uniform(rng, 0.1, 1.3) * (pi[0] + pi[1] + pi[2]);
    const auto a = allocate_contests(segs, DealBook::none(3), kt, Variant::Sequential);
    std::vector<double> claimed;
    for (const auto& law : a.laws) claimed.push_back(law.capital);
    CHECK(oracle::grid_government_check(pi, 3.0, kt, claimed).report.ok());
  }
}

TEST_CASE("prefix brute force tables") {
  const auto a = oracle::prefix_bruteforce({4.0}, 3.0, 4.0, ContributionConvention::EquilibriumState);
  CHECK(a.best_m == 0);
  CHECK(a.utility.size() == 2);
  CHECK(a.adequacy[0] == doctest::Approx(1.0));

  const auto ref =
      oracle::prefix_bruteforce(testing::kReferencePi, 3.0, 10.0, ContributionConvention::EquilibriumState);
  CHECK(ref.best_m == 3);
  CHECK(ref.utility.size() == 11);
  for (std::size_t m = 0; m < ref.utility.size(); ++m)
    if (ref.admissible[m]) CHECK(ref.utility[m] <= ref.utility[3] + 1e-12);
}

TEST_CASE("cutoff scan on a small even grid") {
  const auto segs = testing::uniform_alpha(10, 2.0, 4.0);
  const auto r = oracle::cutoff_scan(segs, 0.4);
  CHECK(r.dealt_importance == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(r.max_dealt_alpha <= 2.7 + 1e-12);
  CHECK(r.min_contested_alpha >= 2.5 - 1e-12);
  CHECK_THROWS(oracle::cutoff_scan(testing::uniform_alpha(13, 2.0, 4.0), 0.4));
}

TEST_CASE("MC convergence harness") {
  const auto c = oracle::mc_convergence(1.0, 3.0, 20000, 20, 5);
  CHECK(c.seeds == 20);
  CHECK(c.fraction_within_4se >= 0.95);
  CHECK(c.max_gap < 0.02);
}

TEST_CASE("verification suites run clean") {
  const char* suites[] = {"best-response", "government-grid", "prefix", "cutoff"};
  for (const char* s : suites) {
    const auto rows = oracle::run_verification(s, 20, 99);
    CHECK(rows.size() == 20);
    for (const auto& r : rows) CHECK_MESSAGE(r.passed, s, " ", r.instance_seed, " ", r.detail);
  }
  CHECK_THROWS_AS(oracle::run_verification("nonsense", 1, 1), std::invalid_argument);
}
