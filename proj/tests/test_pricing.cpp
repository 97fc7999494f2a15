#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "dropoff/pricing.hpp"
#include "dropoff/rng.hpp"

using namespace dropoff;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

FleetState grid3() {
  FleetState s;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      s.positions.push_back({(2.0 * a + 1.0) / 6.0, (2.0 * b + 1.0) / 6.0});
    }
  }
  return s;
}

FleetState random_state(SplitMix64& rng, std::size_t k, double margin) {
  FleetState s;
  while (s.positions.size() < k) {
    const Point p{rng.uniform01(), rng.uniform01()};
    if (p.x < margin || p.x > 1.0 - margin || p.y < margin || p.y > 1.0 - margin) {
      continue;
    }
    bool ok = true;
    for (const Point& e : s.positions) {
      if (distance(p, e) < 2.0 * margin) {
        ok = false;
      }
    }
    if (ok) {
      s.positions.push_back(p);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("nearest_neighbor_distances is sorted and validated") {
  const ConvexRegion q = ConvexRegion::unit_square();
  FleetState s{{{0.1, 0.5}, {0.3, 0.5}, {0.7, 0.5}}};
  const std::vector<double> d = nearest_neighbor_distances(s, 0, 2);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(0.6).epsilon(1e-12));

  FleetState two{{{0.2, 0.2}, {0.8, 0.9}}};
  const std::vector<double> one = nearest_neighbor_distances(two, 0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(distance(two.positions[0], two.positions[1])));

  const std::vector<double> center = nearest_neighbor_distances(grid3(), 4, 4);
  for (double v : center) {
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(nearest_neighbor_distances(s, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(nearest_neighbor_distances(s, 0, 3), std::out_of_range);
  CHECK_THROWS_AS(nearest_neighbor_distances(s, 7, 1), std::out_of_range);
  (void)q;
}

TEST_CASE("inconvenience and safety margin closed forms") {
  const ConvexRegion q = ConvexRegion::unit_square();
  FleetState pair{{{0.25, 0.5}, {0.75, 0.5}}};
  CHECK(inconvenience_ustar(pair, 0, q) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(safety_margin(pair, 0, q) == doctest::Approx(0.25).epsilon(1e-12));

  FleetState lone{{{0.5, 0.5}}};
  CHECK(inconvenience_ustar(lone, 0, q) == doctest::Approx(2.0).epsilon(1e-12));

  const FleetState g = grid3();
  for (std::size_t u = 0; u < g.size(); ++u) {
    CHECK(inconvenience_ustar(g, u, q) == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(safety_margin(g, u, q) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  }

  FleetState on_boundary{{{0.0, 0.7}, {0.5, 0.5}}};
  CHECK(inconvenience_ustar(on_boundary, 0, q) == kInf);
  CHECK(safety_margin(on_boundary, 0, q) == doctest::Approx(0.0));
}

TEST_CASE("price_v closed forms") {
  const ConvexRegion q = ConvexRegion::unit_square();
  const PriceSpec spec{PriceKind::V, 1};
  FleetState near{{{0.5, 0.5}, {0.6, 0.5}}};
  CHECK(price_v(near, 0, q, spec) == doctest::Approx(10.0).epsilon(1e-12));
  FleetState far{{{0.5, 0.5}, {0.9, 0.5}}};
  CHECK(price_v(far, 0, q, spec) == doctest::Approx(4.0).epsilon(1e-12));
  FleetState edge{{{0.0, 0.5}, {0.5, 0.5}}};
  CHECK(price_v(edge, 0, q, spec) == kInf);
}

TEST_CASE("price_w closed forms") {
  const ConvexRegion q = ConvexRegion::unit_square();
  FleetState one{{{0.5, 0.5}, {0.6, 0.5}}};
  CHECK(price_w(one, 0, q, {PriceKind::W, 1}) ==
        doctest::Approx(1.0 / 0.35).epsilon(1e-12));
  FleetState two{{{0.5, 0.5}, {0.6, 0.5}, {0.7, 0.5}}};
  CHECK(price_w(two, 0, q, {PriceKind::W, 2}) ==
        doctest::Approx(1.0 / 0.55).epsilon(1e-12));
  FleetState edge{{{0.0, 0.5}, {0.5, 0.5}}};
  CHECK(price_w(edge, 0, q, {PriceKind::W, 1}) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("price dispatches on the spec kind") {
  const ConvexRegion q = ConvexRegion::unit_square();
  FleetState pair{{{0.25, 0.5}, {0.75, 0.5}}};
  CHECK(price({PriceKind::UstarLocal, 1}, pair, 0, q) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(price({PriceKind::V, 1}, pair, 0, q) ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(price({PriceKind::W, 1}, pair, 0, q) ==
        doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("social_cost closed forms") {
  const ConvexRegion q = ConvexRegion::unit_square();
  CHECK(social_cost(grid3(), q) == doctest::Approx(6.0).epsilon(1e-9));
  FleetState lone{{{0.5, 0.5}}};
  CHECK(social_cost(lone, q) == doctest::Approx(2.0).epsilon(1e-12));
  FleetState pair{{{0.25, 0.5}, {0.75, 0.5}}};
  CHECK(social_cost(pair, q) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(social_cost(FleetState{}, q), std::invalid_argument);
}

TEST_CASE("duality: social cost times worst safety margin is one") {
  const ConvexRegion q = ConvexRegion::unit_square();
  SplitMix64 rng{31337};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 2 + rng.uniform_below(19);
    const FleetState s = random_state(rng, k, 1e-4);
    double worst_sm = kInf;
    for (std::size_t u = 0; u < k; ++u) {
      worst_sm = std::min(worst_sm, safety_margin(s, u, q));
    }
    REQUIRE(worst_sm > 0.0);
    CHECK(std::abs(social_cost(s, q) * worst_sm - 1.0) <= 1e-9);
  }
}

TEST_CASE("social_cost is invariant under relabeling and square symmetries") {
  const ConvexRegion q = ConvexRegion::unit_square();
  SplitMix64 rng{555};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + rng.uniform_below(8);
    FleetState s = random_state(rng, k, 1e-3);
    const double base = social_cost(s, q);

    FleetState shuffled = s;
    rng.shuffle(shuffled.positions);
    CHECK(social_cost(shuffled, q) == base);

    const auto apply = [&](auto&& f) {
      FleetState t = s;
      for (Point& p : t.positions) {
        p = f(p);
      }
      return social_cost(t, q);
    };
    CHECK(apply([](Point p) { return Point{1.0 - p.x, p.y}; }) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(apply([](Point p) { return Point{p.x, 1.0 - p.y}; }) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(apply([](Point p) { return Point{p.y, p.x}; }) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(apply([](Point p) { return Point{1.0 - p.y, 1.0 - p.x}; }) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(apply([](Point p) { return Point{p.y, 1.0 - p.x}; }) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(apply([](Point p) { return Point{1.0 - p.y, p.x}; }) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(apply([](Point p) { return Point{1.0 - p.x, 1.0 - p.y}; }) ==
          doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("moving toward the nearest car never lowers the inconvenience") {
  const ConvexRegion q = ConvexRegion::unit_square();
  SplitMix64 rng{808};
  int applied = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + rng.uniform_below(6);
    FleetState s = random_state(rng, k, 1e-3);
    const std::size_t u = rng.uniform_below(k);
    std::size_t nearest = u == 0 ? 1 : 0;
    double dmin = kInf;
    for (std::size_t v = 0; v < k; ++v) {
      if (v != u && distance(s.positions[u], s.positions[v]) < dmin) {
        dmin = distance(s.positions[u], s.positions[v]);
        nearest = v;
      }
    }
    const double before_bd = boundary_distance(s.positions[u], q);
    const double before = inconvenience_ustar(s, u, q);
    const double t = 0.1 + 0.8 * rng.uniform01();
    FleetState moved = s;
    moved.positions[u] =
        s.positions[u] + t * (s.positions[nearest] - s.positions[u]);
    if (boundary_distance(moved.positions[u], q) > before_bd + 1e-15) {
      continue;
    }
    ++applied;
    CHECK(inconvenience_ustar(moved, u, q) >= before - 1e-12);
  }
  CHECK(applied > 50);
}

TEST_CASE("neighbourhood prices depend only on local distances") {
  const ConvexRegion q = ConvexRegion::unit_square();
  SplitMix64 rng{2024};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.uniform_below(10);
    const FleetState s = random_state(rng, k, 1e-3);
    const std::size_t u = rng.uniform_below(k);
    const std::size_t m = 1 + rng.uniform_below(k - 1);
    const double bd = boundary_distance(s.positions[u], q);
    const std::vector<double> nn = nearest_neighbor_distances(s, u, m);
    const PriceSpec vs{PriceKind::V, static_cast<int>(m)};
    const PriceSpec ws{PriceKind::W, static_cast<int>(m)};
    CHECK(price_v(s, u, q, vs) == price_v_from_distances(bd, nn));
    CHECK(price_w(s, u, q, ws) == price_w_from_distances(bd, nn));
  }
}

TEST_CASE("W is below V for a single-neighbor spec") {
  const ConvexRegion q = ConvexRegion::unit_square();
  SplitMix64 rng{60};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.uniform_below(8);
    const FleetState s = random_state(rng, k, 1e-3);
    for (std::size_t u = 0; u < k; ++u) {
      CHECK(price_w(s, u, q, {PriceKind::W, 1}) <=
            price_v(s, u, q, {PriceKind::V, 1}) + 1e-12);
    }
  }
}

TEST_CASE("coincident positions are detected") {
  FleetState s{{{0.5, 0.5}, {0.25, 0.25}, {0.5, 0.5}}};
  CHECK(has_coincident_positions(s));
  FleetState t{{{0.5, 0.5}, {0.25, 0.25}}};
  CHECK_FALSE(has_coincident_positions(t));
}
