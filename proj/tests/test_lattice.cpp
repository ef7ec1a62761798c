#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "sizephase/lattice.hpp"

using namespace sizephase;

TEST_CASE("spin counts follow the edge formula") {
  CHECK(SquareLattice(1, 1).spin_count() == 4);
  CHECK(SquareLattice(2, 2).spin_count() == 12);
  CHECK(SquareLattice(6, 4).spin_count() == 6 * 5 + 7 * 4);
}

TEST_CASE("1x1 lattice: one plaquette, four 2-local corner stars") {
  auto sites = enumerate_sites(SquareLattice(1, 1));
  REQUIRE(sites.size() == 5);
  CHECK(sites[0].kind == SiteKind::Plaquette);
  CHECK(sites[0].arity() == 4);
  for (int i = 1; i < 5; ++i) {
    CHECK(sites[i].kind == SiteKind::Star);
    CHECK(sites[i].arity() == 2);
  }
}

TEST_CASE("2x2 lattice: four plaquettes, centre star is 4-local") {
  auto sites = enumerate_sites(SquareLattice(2, 2));
  int plaq = 0, four_local_stars = 0;
  for (const auto& s : sites) {
    if (s.kind == SiteKind::Plaquette) ++plaq;
    if (s.kind == SiteKind::Star && s.arity() == 4) ++four_local_stars;
  }
  CHECK(plaq == 4);
  CHECK(four_local_stars == 1);
}

TEST_CASE("NxN site census against brute enumeration") {
  for (int n = 1; n <= 5; ++n) {
    SquareLattice lat(n, n);
    auto sites = enumerate_sites(lat);
    int plaq = 0, stars = 0, boundary_3local = 0, corners = 0;
    for (const auto& s : sites) {
      if (s.kind == SiteKind::Plaquette) {
        ++plaq;
        CHECK(s.arity() == 4);
      } else {
        ++stars;
        if (s.arity() == 3) ++boundary_3local;
        if (s.arity() == 2) ++corners;
      }
    }
    CHECK(plaq == n * n);
    CHECK(stars == (n + 1) * (n + 1));
    CHECK(corners == 4);
    CHECK(boundary_3local == 4 * (n - 1));
  }
}

TEST_CASE("corner stars can be dropped") {
  SquareLattice lat(3, 2, /*corners=*/false);
  auto sites = enumerate_sites(lat);
  for (const auto& s : sites) CHECK(s.arity() >= 3);
}

TEST_CASE("every spin lies in at most two plaquettes and at most two stars") {
  SquareLattice lat(4, 3);
  std::map<int, int> in_plaq, in_star;
  for (const auto& s : enumerate_sites(lat))
    for (int spin : s.spins)
      if (spin >= 0) (s.kind == SiteKind::Plaquette ? in_plaq : in_star)[spin]++;
  for (int spin = 0; spin < lat.spin_count(); ++spin) {
    int p = in_plaq.count(spin) ? in_plaq[spin] : 0;
    int st = in_star.count(spin) ? in_star[spin] : 0;
    CHECK(p >= 0);
    CHECK(p <= 2);
    CHECK(st <= 2);
    CHECK(p + st >= 1);
  }
}

TEST_CASE("enumeration is deterministic") {
  SquareLattice lat(3, 3);
  auto a = enumerate_sites(lat);
  auto b = enumerate_sites(lat);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].kind == b[i].kind);
    CHECK(a[i].spins == b[i].spins);
  }
}

TEST_CASE("nearest-neighbour pairs are vertical-horizontal at distance sqrt2/2") {
  SquareLattice lat(2, 2);
  auto pairs = nearest_neighbour_pairs(lat);
  for (auto [a, b] : pairs) {
    auto pa = lat.spin_position2(a), pb = lat.spin_position2(b);
    int dx = pa.first - pb.first, dy = pa.second - pb.second;
    CHECK(dx * dx + dy * dy == 2);  // doubled coordinates
    CHECK(lat.is_vertical(a) != lat.is_vertical(b));
  }
  // Brute-force count over all spin pairs.
  int expected = 0;
  for (int a = 0; a < lat.spin_count(); ++a)
    for (int b = a + 1; b < lat.spin_count(); ++b) {
      auto pa = lat.spin_position2(a), pb = lat.spin_position2(b);
      int dx = pa.first - pb.first, dy = pa.second - pb.second;
      if (dx * dx + dy * dy == 2) ++expected;
    }
  CHECK(static_cast<int>(pairs.size()) == expected);
}
