#include <doctest.h>

#include <cmath>

#include "lobbying/variants.hpp"
#include "support.hpp"

using namespace lobbying;

namespace {

Scenario with_variant(Scenario s, Variant v) {
  s.variant = v;
  return s;
}

}  // namespace

TEST_CASE("simultaneous moves: fewer deals than the baseline") {
  const auto s = with_variant(testing::one_segment(0.4, 3.0), Variant::Simultaneous);
  const auto r = solve(s);
  // 0.5 * (0.75 - (4/3) * 0.4)
  CHECK(r.dealt_importance == doctest::Approx(0.5 * (0.75 - 4.0 / 3.0 * 0.4)).epsilon(1e-12));
  CHECK(r.dealt_importance == doctest::Approx(0.10833).epsilon(1e-4));
  CHECK(r.dealt_importance < solve_equilibrium(testing::one_segment(0.4, 3.0)).dealt_importance);
  CHECK(r.branch == Branch::SimultaneousDeals);
  CHECK(r.deals.entries[0].contribution_rate == doctest::Approx(0.75 * 1.25).epsilon(1e-14));
}

TEST_CASE("simultaneous moves: contested law values") {
  const auto r = solve(with_variant(testing::one_segment(0.4, 3.0), Variant::Simultaneous));
  const auto& law = r.allocation.laws[0];
  CHECK(std::abs(law.capital - 0.5625) <= 1e-12);
  CHECK(std::abs(law.lobbying - 0.1875) <= 1e-12);
  CHECK(std::abs(law.win_probability - 0.75) <= 1e-12);
}

TEST_CASE("simultaneous moves: large endowment clamps to no deals") {
  const auto r = solve(with_variant(testing::one_segment(0.7, 3.0), Variant::Simultaneous));
  CHECK(r.branch == Branch::SimultaneousNoDeals);
  CHECK(r.dealt_importance == 0.0);
  CHECK(r.allocation.laws[0].capital == doctest::Approx(0.5625).epsilon(1e-12));
}

TEST_CASE("simultaneous moves: unsupported inputs") {
  CHECK_THROWS_AS(solve(with_variant(testing::one_segment(0.4, 2.0), Variant::Simultaneous)),
                  UnsupportedCombination);
  CHECK_THROWS_AS(
      solve(with_variant(testing::segments(0.4, testing::uniform_alpha(4, 2.5, 3.5)), Variant::Simultaneous)),
      UnsupportedCombination);
}

TEST_CASE("simultaneous deals never exceed baseline deals") {
  for (int a = 0; a < 15; ++a) {
    const double alpha = 2.05 + 0.3 * a;
    for (int p = 1; p <= 5; ++p) {
      const double total = 0.5 * p;
      for (int k = 0; k <= 12; ++k) {
        const double kg = total * k / 10.0;
        const auto base = solve(testing::one_segment(kg, alpha, total));
        const auto sim = solve(with_variant(testing::one_segment(kg, alpha, total), Variant::Simultaneous));
        CHECK(sim.dealt_importance <= base.dealt_importance + 1e-12);
        if (sim.dealt_importance > 0.0) CHECK(sim.deals.entries[0].contribution_rate < total);
      }
    }
  }
}

TEST_CASE("non-fungible capital") {
  const auto a = solve(with_variant(testing::one_segment(0.4, 1.5), Variant::NonFungible));
  CHECK(a.dealt_importance == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(a.adequacy == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(solve(testing::one_segment(0.4, 1.5)).dealt_importance == doctest::Approx(1.0));

  const auto b = solve(with_variant(testing::one_segment(2.0, 1.5), Variant::NonFungible));
  CHECK(b.dealt_importance == 0.0);
  CHECK(b.allocation.laws[0].capital == 1.0);
  // No value on the unspent unit.
  CHECK(b.government_utility == 0.0);
  CHECK(solve(testing::one_segment(2.0, 3.0)).government_utility == doctest::Approx(1.0));
}

TEST_CASE("non-fungible coincides with the baseline when alpha > 2") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = testing::engine_for(30, i);
    const double alpha = uniform(rng, 2.01, 5.0);
    Segments segs;
    for (int j = 0; j < 5; ++j) segs.push_back({uniform(rng, 0.1, 1.0), {uniform(rng, 0.1, 2.0), alpha}});
    const auto s = testing::segments(uniform(rng, 0.0, 5.0), segs);
    const auto base = solve(s);
    const auto nf = solve(with_variant(s, Variant::NonFungible));
    for (std::size_t j = 0; j < segs.size(); ++j) {
      CHECK(nf.deals.entries[j].dealt_fraction == base.deals.entries[j].dealt_fraction);
      CHECK(nf.deals.entries[j].contribution_rate == base.deals.entries[j].contribution_rate);
      CHECK(nf.allocation.laws[j].capital == base.allocation.laws[j].capital);
      CHECK(nf.allocation.laws[j].win_probability == base.allocation.laws[j].win_probability);
    }
  }
}

TEST_CASE("optimal transfer examples") {
  const auto a = optimal_transfer(testing::one_segment(0.4, 3.0));
  CHECK(a.tau_star == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(a.chi == 2.0);
  CHECK(a.dug_dtau_closed_form == doctest::Approx(1.25).epsilon(1e-15));
  // Direct evaluation of u_G from primitives does not follow the closed form.
  CHECK(a.dug_dtau_direct == doctest::Approx(1.5).epsilon(1e-6));

  const auto b = optimal_transfer(testing::one_segment(0.4, 1.5));
  CHECK(b.tau_star == 0.0);
  CHECK(b.chi == doctest::Approx(2.0));
  CHECK(b.citizen_utility_at(0.3) == doctest::Approx(-1.5 - 0.3));
}

TEST_CASE("optimal transfer maximises citizen utility on a tau grid") {
  const double alphas[] = {1.2, 1.5, 2.0, 2.5, 3.0, 5.0};
  const double capitals[] = {0.0, 0.4, 0.9, 1.3};
  for (double alpha : alphas) {
    for (double kg : capitals) {
      const auto t = optimal_transfer(testing::one_segment(kg, alpha));
      const double best = t.citizen_utility_at(t.tau_star);
      double grid_best = -kInfinity, grid_at = 0.0;
      for (int g = 0; g <= 150; ++g) {
        const double tau = 1.5 * g / 150.0;
        const double u = t.citizen_utility_at(tau);
        CHECK(best >= u - 1e-9);
        if (u > grid_best + 1e-12) {
          grid_best = u;
          grid_at = tau;
        }
      }
      CHECK(std::abs(grid_at - t.tau_star) <= 0.01 + 1e-12);
    }
  }
}

TEST_CASE("u_G strictly increasing in tau when alpha > 2") {
  const auto t = optimal_transfer(testing::one_segment(0.4, 3.0));
  double prev = t.government_utility_at(0.0);
  for (int g = 1; g <= 150; ++g) {
    const double u = t.government_utility_at(1.5 * g / 150.0);
    CHECK(u > prev);
    prev = u;
  }
}

TEST_CASE("optimal transfer guards") {
  CHECK_THROWS_AS(optimal_transfer(with_variant(testing::one_segment(0.4, 3.0), Variant::Simultaneous)),
                  UnsupportedCombination);
  CHECK_THROWS_AS(optimal_transfer(testing::segments(0.4, testing::uniform_alpha(3, 2.5, 3.5))),
                  UnsupportedCombination);
}

TEST_CASE("efficacy and post-win lobbying reduce to effective profiles") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = testing::engine_for(31, i);
    const double alpha = uniform(rng, 1.2, 5.0);
    const double z = uniform(rng, 0.2, 1.0), beta = uniform(rng, 0.0, 0.5);
    Segments raw, reduced;
    for (int j = 0; j < 3; ++j) {
      const LawProfile p{uniform(rng, 0.1, 2.0), alpha, z, beta};
      const double mass = uniform(rng, 0.1, 1.0);
      raw.push_back({mass, p});
      reduced.push_back({mass, effective_profile(p)});
    }
    const double kg = uniform(rng, 0.0, 2.0);
    const Variant variants[] = {Variant::Sequential, Variant::NonFungible};
    for (Variant v : variants) {
      const auto a = solve(with_variant(testing::segments(kg, raw), v));
      const auto b = solve(with_variant(testing::segments(kg, reduced), v));
      for (std::size_t j = 0; j < raw.size(); ++j) {
        CHECK(a.deals.entries[j].dealt_fraction == b.deals.entries[j].dealt_fraction);
        CHECK(a.allocation.laws[j].capital == b.allocation.laws[j].capital);
        CHECK(a.allocation.laws[j].lobbying == b.allocation.laws[j].lobbying);
      }
      CHECK(a.government_utility == b.government_utility);
    }
  }
}
