#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lobbying/bargaining.hpp"
#include "lobbying/oracle.hpp"
#include "support.hpp"

using namespace lobbying;

TEST_CASE("bargain_bounds examples") {
  auto a = bargain_bounds({1.0, 3.0}, 0.25);
  REQUIRE(a.b_min);
  CHECK(*a.b_min == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(a.b_max == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(a.feasible);

  auto b = bargain_bounds({2.0, 1.5}, 2.0);
  CHECK(*b.b_min == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.b_max == 2.0);
  CHECK(b.feasible);

  auto c = bargain_bounds({1.0, 3.0}, 2.0);
  CHECK(*c.b_min == 2.0);
  CHECK(c.b_max == 1.0);
  CHECK_FALSE(c.feasible);

  auto d = bargain_bounds({1.0, 3.0}, 2.0, Variant::NonFungible);
  CHECK_FALSE(d.b_min.has_value());
  CHECK_FALSE(d.feasible);
}

TEST_CASE("bargain_bounds on a 50x50 grid match the closed forms") {
  for (int i = 1; i <= 50; ++i) {
    const double alpha = 1.0 + 3.0 * i / 50.0;
    for (int j = 0; j < 50; ++j) {
      const double z = 4.0 * j / 49.0;
      const double pi = 1.0 + 0.1 * (i % 7);
      const auto b = bargain_bounds({pi, alpha}, z);
      const double lo = z <= 1.0 ? pi * z : pi * (alpha - 1.0);
      const double hi = z <= 1.0 ? pi * (2.0 * std::sqrt(z) - z) : pi;
      REQUIRE(b.b_min);
      CHECK(std::abs(*b.b_min - lo) <= 1e-12);
      CHECK(std::abs(b.b_max - hi) <= 1e-12);
      CHECK(b.feasible == (z <= 1.0 || alpha <= 2.0));
      CHECK(*b.b_min >= 0.0);
      CHECK(b.b_max >= 0.0);
    }
  }
}

TEST_CASE("simultaneous bounds above the threshold") {
  const auto b = bargain_bounds({1.0, 3.0}, 0.9, Variant::Simultaneous);
  CHECK(b.b_max == doctest::Approx(0.75 * 5.0 / 4.0).epsilon(1e-14));
  const auto below = bargain_bounds({1.0, 3.0}, 0.25, Variant::Simultaneous);
  CHECK(below.b_max == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("branch (iii): deals until capital adequacy") {
  const auto r = solve_equilibrium(testing::one_segment(0.4, 3.0));
  CHECK(r.branch == Branch::DealsToAdequacy);
  CHECK(r.multiple_equilibria);
  CHECK(r.deals.entries[0].dealt_fraction == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.deals.entries[0].contribution_rate == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.adequacy == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.allocation.contestable_importance == doctest::Approx(0.4 + 0.3).epsilon(1e-12));
  CHECK(r.allocation.laws[0].win_probability == 1.0);
  CHECK(r.allocation.laws[0].lobbying == 0.0);
  // u_G = -alpha * dealt - unspent; all capital is spent at Z = 1.
  CHECK(r.government_utility == doctest::Approx(-0.9).epsilon(1e-12));
  CHECK(r.group_utilities[0].dealt == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("branch (i): every law conceded at the bargain_select rate") {
  auto s = testing::segments(0.4, {{0.5, {2.0, 1.5}}, {0.5, {4.0, 1.5}}});
  auto r = solve_equilibrium(s);
  CHECK(r.branch == Branch::AllDeals);
  CHECK(r.multiple_equilibria);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.deals.entries[i].dealt_fraction == 1.0);
    CHECK(r.deals.entries[i].contribution_rate == doctest::Approx(r.effective[i].profile.pi).epsilon(1e-15));
    CHECK(r.allocation.laws[i].capital == 0.0);
    CHECK(r.allocation.laws[i].lobbying == 0.0);
  }

  s.bargain_select = 0.0;
  r = solve_equilibrium(s);
  CHECK(r.deals.entries[1].contribution_rate == doctest::Approx(4.0 * 0.5).epsilon(1e-15));
}

TEST_CASE("alpha = 2 exactly falls in the all-deals branch") {
  const auto r = solve_equilibrium(testing::one_segment(0.4, 2.0));
  CHECK(r.branch == Branch::AllDeals);
  CHECK_FALSE(r.multiple_equilibria);
  CHECK(r.deals.entries[0].dealt_fraction == 1.0);
}

TEST_CASE("branch (ii): endowment covers every contest") {
  const auto r = solve_equilibrium(testing::one_segment(2.0, 3.0));
  CHECK(r.branch == Branch::NoDeals);
  CHECK(r.deals.entries[0].dealt_fraction == 0.0);
  CHECK(r.allocation.laws[0].capital == 1.0);
  CHECK(r.allocation.laws[0].lobbying == 0.0);
  CHECK(r.allocation.laws[0].win_probability == 1.0);
}

TEST_CASE("branch (iii) postconditions on random homogeneous populations") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = testing::engine_for(20, i);
    const double alpha = uniform(rng, 2.01, 6.0);
    Segments segs;
    for (std::size_t j = 0; j < 1 + i % 8; ++j) segs.push_back({uniform(rng, 0.1, 1.0), {uniform(rng, 0.1, 3.0), alpha}});
    const double total = importance_mass(Population{segs});
    const double kg = uniform(rng, 0.0, 0.999) * total;
    const auto r = solve_equilibrium(testing::segments(kg, segs));
    REQUIRE(r.branch == Branch::DealsToAdequacy);
    CHECK(std::abs(r.adequacy - 1.0) <= 1e-9);
    CHECK(std::abs(r.allocation.contestable_importance - r.dealt_importance - kg) <= 1e-9 * std::max(1.0, total));
    for (const auto& law : r.allocation.laws) CHECK(law.lobbying == 0.0);
  }
}

TEST_CASE("comparative statics in K^G") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = testing::engine_for(21, i);
    const double alpha = uniform(rng, 2.01, 5.0);
    Segments segs;
    for (int j = 0; j < 4; ++j) segs.push_back({uniform(rng, 0.1, 1.0), {uniform(rng, 0.1, 3.0), alpha}});
    const double total = importance_mass(Population{segs});
    std::vector<double> grid;
    for (int g = 0; g <= 40; ++g) grid.push_back(1.2 * total * g / 40.0);
    const auto rows = contribution_totals_vs_endowment(testing::segments(0.0, segs), grid);
    for (std::size_t g = 1; g < rows.size(); ++g) {
      CHECK(rows[g].dealt_importance <= rows[g - 1].dealt_importance + 1e-12);
      CHECK(rows[g].total_contest_spend >= rows[g - 1].total_contest_spend - 1e-12);
    }
  }
}

TEST_CASE("contribution_totals_vs_endowment examples") {
  const auto rows = contribution_totals_vs_endowment(testing::one_segment(0.0, 3.0), {0.2, 0.4, 1.0, 0.0});
  CHECK(rows[0].total_contributions == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(rows[1].total_contributions == doctest::Approx(0.3).epsilon(1e-12));
  CHECK((rows[1].total_contributions - rows[0].total_contributions) / 0.2 == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(rows[2].total_contributions == 0.0);
  CHECK(rows[3].total_contributions == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rows[3].total_contest_spend == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("heterogeneous cutoff examples") {
  auto s = testing::segments(0.4, testing::uniform_alpha(100, 2.0, 4.0));
  auto [cut, r] = heterogeneous_cutoff(s);
  CHECK(cut.dealt_importance == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(cut.alpha_bar - 2.6) <= 0.02);
  CHECK(std::abs(cut.budget_residual) <= 1e-12);
  CHECK(r.branch == Branch::HeterogeneousCutoff);

  s.government_capital = 0.0;
  auto [cut0, r0] = heterogeneous_cutoff(s);
  CHECK(cut0.dealt_importance == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(cut0.alpha_bar - 3.0) <= 0.02);

  s.government_capital = 2.0;
  auto [cut2, r2] = heterogeneous_cutoff(s);
  CHECK(std::isinf(cut2.alpha_bar));
  CHECK(cut2.dealt_importance == 0.0);
}

TEST_CASE("solve_equilibrium forwards heterogeneous harms to the cutoff") {
  const auto r = solve_equilibrium(testing::segments(0.4, testing::uniform_alpha(10, 2.0, 4.0)));
  CHECK(r.branch == Branch::HeterogeneousCutoff);
  REQUIRE(r.cutoff);
}

TEST_CASE("heterogeneous cutoff rejects alpha <= 2") {
  auto s = testing::segments(0.4, {{0.5, {1.0, 2.0}}, {0.5, {1.0, 3.0}}});
  CHECK_THROWS_AS(heterogeneous_cutoff(s), PreconditionError);
}

TEST_CASE("cutoff ordering and no lobbying on random populations") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = testing::engine_for(22, i);
    Segments segs;
    for (std::size_t j = 0; j < 2 + i % 15; ++j)
      segs.push_back({uniform(rng, 0.05, 1.0), {uniform(rng, 0.1, 3.0), uniform(rng, 2.01, 6.0)}});
    const double total = importance_mass(Population{segs});
    auto [cut, r] = heterogeneous_cutoff(testing::segments(uniform(rng, 0.0, 1.1) * total, segs));
    double max_dealt = 0.0, min_contested = kInfinity;
    for (std::size_t j = 0; j < segs.size(); ++j) {
      const double f = r.deals.entries[j].dealt_fraction;
      if (f > 0.0) max_dealt = std::max(max_dealt, segs[j].profile.alpha);
      if (f < 1.0) min_contested = std::min(min_contested, segs[j].profile.alpha);
      CHECK(r.allocation.laws[j].lobbying == 0.0);
    }
    // A split segment sits on both sides; otherwise the order is strict.
    CHECK(max_dealt <= min_contested);
    if (std::isfinite(cut.alpha_bar)) CHECK(std::abs(cut.budget_residual) <= 1e-9 * std::max(1.0, total));
  }
}

TEST_CASE("cutoff agrees with the exhaustive deal-set scan on 12 segments") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto rng = testing::engine_for(23, i);
    Segments segs;
    for (int j = 0; j < 12; ++j) segs.push_back({1.0 / 12.0, {1.0, uniform(rng, 2.05, 4.0)}});
    const double kg = uniform(rng, 0.0, 0.9);
    auto [cut, r] = heterogeneous_cutoff(testing::segments(kg, segs));
    const auto scan = oracle::cutoff_scan(segs, kg);
    std::vector<double> alphas;
    for (const auto& s : segs) alphas.push_back(s.profile.alpha);
    std::sort(alphas.begin(), alphas.end());
    double width = 0.0;
    for (std::size_t j = 1; j < alphas.size(); ++j) width = std::max(width, alphas[j] - alphas[j - 1]);
    CHECK(scan.max_dealt_alpha <= scan.min_contested_alpha);
    CHECK(std::abs(scan.dealt_importance - cut.dealt_importance) <= 1e-9);
    CHECK(cut.alpha_bar >= scan.max_dealt_alpha - 1e-12);
    CHECK(cut.alpha_bar <= scan.min_contested_alpha + width);
    CHECK(scan.government_utility == doctest::Approx(r.government_utility).epsilon(1e-9));
  }
}

TEST_CASE("Nash-demand outcomes") {
  auto a = nash_demand_outcomes(bargain_bounds({1.0, 3.0}, 0.25));
  CHECK(a.deal);
  CHECK(a.lo == doctest::Approx(0.25));
  CHECK(a.hi == doctest::Approx(0.75));
  CHECK(a.sustains(0.5, 0.5));
  CHECK_FALSE(a.sustains(0.5, 0.4));
  CHECK_FALSE(a.sustains(0.8, 0.8));
  CHECK_FALSE(a.unique_pair());

  auto b = nash_demand_outcomes(bargain_bounds({1.0, 3.0}, 2.0));
  CHECK_FALSE(b.deal);
  CHECK(b.sustains(1.5, 1.2));
  CHECK_FALSE(b.sustains(0.9, 0.5));
  CHECK_FALSE(b.sustains(3.0, 2.5));

  BargainBounds pinned{1.0, 1.0, true};
  auto c = nash_demand_outcomes(pinned);
  CHECK(c.unique_pair());
  CHECK(c.sustains(1.0, 1.0));

  auto d = nash_demand_outcomes(bargain_bounds({1.0, 3.0}, 2.0, Variant::NonFungible));
  CHECK_FALSE(d.deal);
  CHECK(std::isinf(d.group_below));
}
