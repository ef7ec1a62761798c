#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "sizephase/bruteforce.hpp"
#include "sizephase/tiling.hpp"
#include "support/dense_oracle.hpp"

using namespace sizephase;

namespace {

TileSet neutral_tileset(int colours) {
  // All-wildcard weight-1 pieces at every site shape: every site scores 0.
  TileSet ts;
  ts.colours.count = colours;
  auto any = PatternEntry::any();
  auto abs = PatternEntry::absent();
  for (int mask = 1; mask < 16; ++mask) {
    std::array<PatternEntry, 4> pat;
    for (int pos = 0; pos < 4; ++pos) pat[pos] = (mask >> pos & 1) ? any : abs;
    WeightedPiece wp;
    wp.piece.at = pat;
    wp.weight = 1;
    if (mask == 15) ts.plaquette_pieces.push_back(wp);
    ts.star_pieces.push_back(wp);
  }
  return ts;
}

TileSet random_tileset(std::mt19937& rng, int colours) {
  TileSet ts;
  ts.colours.count = colours;
  std::uniform_int_distribution<int> entry_dist(-1, colours - 1);
  std::uniform_int_distribution<int> count_dist(1, 5);
  std::uniform_int_distribution<int> weight_dist(-4, 4);
  auto random_pieces = [&](std::vector<WeightedPiece>& out) {
    int k = count_dist(rng);
    for (int i = 0; i < k; ++i) {
      WeightedPiece wp;
      for (int pos = 0; pos < 4; ++pos) {
        int e = entry_dist(rng);
        wp.piece.at[pos] = e < 0 ? PatternEntry::any() : PatternEntry::exact(e);
      }
      wp.weight = Dyadic::ratio(weight_dist(rng), 2);
      bool dup = false;
      for (const auto& p : out) dup |= p.piece == wp.piece;
      if (!dup) out.push_back(wp);
    }
  };
  random_pieces(ts.plaquette_pieces);
  random_pieces(ts.star_pieces);
  return ts;
}

}  // namespace

TEST_CASE("dyadic arithmetic and parsing") {
  CHECK(Dyadic::parse("3/2").str() == "3/2");
  CHECK(Dyadic::parse("-2").str() == "-2");
  CHECK((Dyadic::ratio(1, 2) + Dyadic::ratio(1, 2)).str() == "1");
  CHECK((Dyadic(1) - Dyadic(2)).str() == "-1");
  CHECK(Dyadic::ratio(3, 4) < Dyadic(1));
  CHECK(Dyadic::ratio(-1, 2) > Dyadic(-1));
  CHECK_THROWS_AS(Dyadic::ratio(1, 3), FormatError);
  CHECK_THROWS_AS(Dyadic::parse("x"), FormatError);
}

TEST_CASE("empty tile set scores the site count") {
  TileSet ts;
  ts.colours.count = 3;
  SquareLattice lat(1, 1);
  Assignment a(lat, 1);
  // 1 plaquette + 4 corner stars, one unmatched unit each.
  CHECK(score_assignment(ts, a).value == Dyadic(5));

  SquareLattice nc(1, 1, /*corners=*/false);
  Assignment b(nc, 1);
  CHECK(score_assignment(ts, b).value == Dyadic(1));
}

TEST_CASE("matched plaquette with weight 2 contributes 1-2 = -1") {
  TileSet ts;
  ts.colours.count = 2;
  WeightedPiece bonus;
  bonus.piece = Piece::nesw(1, 1, 1, 1);
  bonus.weight = 2;
  ts.plaquette_pieces.push_back(bonus);
  // Neutral wildcard stars at every shape.
  auto neutral = neutral_tileset(2);
  ts.star_pieces = neutral.star_pieces;

  SquareLattice lat(1, 1);
  Assignment a(lat, 1);
  CHECK(score_assignment(ts, a).value == Dyadic(-1));
}

TEST_CASE("all-wildcard weight-1 pieces give score zero") {
  auto ts = neutral_tileset(3);
  for (int w : {1, 2, 3}) {
    SquareLattice lat(w, 2);
    Assignment a(lat, 2);
    CHECK(score_assignment(ts, a).value == Dyadic(0));
  }
}

TEST_CASE("eigenvalue_of_basis_state is score_assignment") {
  std::mt19937 rng(7);
  auto ts = random_tileset(rng, 3);
  SquareLattice lat(2, 1);
  Assignment a(lat);
  for (auto& c : a.colours) c = rng() % 3;
  CHECK(eigenvalue_of_basis_state(ts, a).value == score_assignment(ts, a).value);
}

TEST_CASE("weight-0 piece is equivalent to an absent piece") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto ts = random_tileset(rng, 2);
    auto with_zero = ts;
    WeightedPiece zero;
    zero.piece = Piece::nesw(0, 1, 0, 1);
    zero.weight = 0;
    bool dup = false;
    for (const auto& p : with_zero.plaquette_pieces) dup |= p.piece == zero.piece;
    if (!dup) with_zero.plaquette_pieces.push_back(zero);
    SquareLattice lat(2, 1);
    Assignment a(lat);
    for (auto& c : a.colours) c = rng() % 2;
    CHECK(score_assignment(ts, a).value == score_assignment(with_zero, a).value);
  }
}

TEST_CASE("score additivity is order independent") {
  std::mt19937 rng(13);
  auto ts = random_tileset(rng, 3);
  SquareLattice lat(2, 2);
  Assignment a(lat);
  for (auto& c : a.colours) c = rng() % 3;
  ScoringContext ctx(ts, lat);
  std::vector<int> order(ctx.sites().size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  Dyadic forward = 0, backward = 0;
  for (int i : order) forward += ctx.site_score(i, a.colours);
  std::reverse(order.begin(), order.end());
  for (int i : order) backward += ctx.site_score(i, a.colours);
  CHECK(forward == backward);
  CHECK(forward == ctx.total_score(a.colours));
}

TEST_CASE("colour out of range raises") {
  auto ts = neutral_tileset(2);
  SquareLattice lat(1, 1);
  Assignment a(lat, 0);
  a.colours[0] = 2;
  CHECK_THROWS_AS(score_assignment(ts, a), ColourOutOfRange);
}

TEST_CASE("fast table scoring agrees with explicit matching") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto ts = random_tileset(rng, 3);
    SquareLattice lat(2, 2);
    ScoringContext ctx(ts, lat);
    std::vector<int> colours(lat.spin_count());
    for (auto& c : colours) c = rng() % 3;
    for (size_t i = 0; i < ctx.sites().size(); ++i)
      CHECK(ctx.site_score(static_cast<int>(i), colours) ==
            ctx.site_score_fast(static_cast<int>(i), colours));
  }
}

TEST_CASE("JSON round-trip is bit-exact") {
  std::mt19937 rng(19);
  auto ts = random_tileset(rng, 4);
  ts.plaquette_pieces[0].role = "seed-corner";
  PositionalOverride ov;
  ov.kind = SiteKind::Star;
  ov.x = 1;
  ov.y = 0;
  WeightedPiece extra;
  extra.piece = Piece::nesw(0, -1, 1, -1);
  extra.weight = Dyadic::ratio(-3, 2);
  ov.pieces.push_back(extra);
  ts.overrides.push_back(ov);

  std::string once = ts.to_json();
  TileSet back = TileSet::from_json(once);
  CHECK(back.to_json() == once);
}

TEST_CASE("positional overrides add weight at one site only") {
  auto ts = neutral_tileset(2);
  PositionalOverride ov;
  ov.kind = SiteKind::Plaquette;
  ov.x = 0;
  ov.y = 0;
  WeightedPiece extra;
  extra.piece = Piece::nesw(-1, -1, -1, -1);
  extra.weight = 1;
  ov.pieces.push_back(extra);
  ts.overrides.push_back(ov);

  SquareLattice lat(2, 1);
  Assignment a(lat, 0);
  // Only plaquette (0,0) picks up the extra weight: score -1 instead of 0.
  CHECK(score_assignment(ts, a).value == Dyadic(-1));
}

TEST_CASE("score spectrum matches the dense tensor-product diagonal") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    int colours = 2 + static_cast<int>(rng() % 2);
    SquareLattice lat(1 + rng() % 2, 1);
    auto ts = random_tileset(rng, colours);
    auto diag = testing::dense_diagonal(ts, lat);
    std::map<Dyadic, uint64_t> expected;
    for (const auto& v : diag) expected[v]++;
    auto got = score_spectrum(ts, lat);
    CHECK(got == expected);
  }
}

TEST_CASE("brute force finds the spectrum minimum with a lex-smallest witness") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    auto ts = random_tileset(rng, 2);
    SquareLattice lat(2, 1);
    auto spec = score_spectrum(ts, lat);
    auto res = min_score_bruteforce(ts, lat);
    CHECK(res.min_score.value == spec.begin()->first);
    CHECK(score_assignment(ts, res.witness).value == res.min_score.value);
  }
}

TEST_CASE("brute force budget raises") {
  auto ts = neutral_tileset(3);
  SquareLattice lat(3, 3);
  BruteForceOptions opts;
  opts.node_budget = 10;
  CHECK_THROWS_AS(min_score_bruteforce(ts, lat, opts), BudgetExceeded);
}
