#include "sizephase/prime_tiling.hpp"

#include <algorithm>
#include <numeric>

namespace sizephase {
namespace prime {

void RowFamily::validate() const {
  const int f = row_count();
  if (q < 2) throw InvalidRowFamily("q must be at least 2");
  if (f < 1) throw InvalidRowFamily("family needs at least one row");
  if (f > q) throw InvalidRowFamily("more rows than colours: f must satisfy f <= q");
  int slots = 0;
  for (int i = 0; i < f; ++i) {
    const auto& row = rows[i];
    if (row.empty()) throw InvalidRowFamily("empty row");
    if (static_cast<int>(row.size()) > q) throw InvalidRowFamily("row has more than q entries");
    slots += static_cast<int>(row.size());
    bool edge_row = (i == 0 || i == f - 1);
    for (int r : row) {
      if (r < 2) throw InvalidRowFamily("entries below 2 break wrap-star uniqueness");
      if (r > q) throw InvalidRowFamily("entry exceeds q");
      if (!edge_row && r > q - 1)
        throw InvalidRowFamily("middle-row entry exceeds q-1 (constraint 3)");
    }
  }
  if (slots > q)
    throw InvalidRowFamily("sub-period labels exceed the colour budget: sum m_i > q");
}

// ---------------------------------------------------------------------------
// Optimizer

namespace {

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

struct Candidate {
  long long lcm = 0;
  std::vector<long long> periods;  // sorted ascending
  std::vector<std::vector<int>> rows;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.lcm != b.lcm) return a.lcm > b.lcm;
  if (a.rows.size() != b.rows.size()) return a.rows.size() < b.rows.size();
  return a.periods < b.periods;
}

// Canonical generator ordering: a cap row (one containing an entry equal to
// q) first and, when there are two, the other one last; remaining rows in
// the middle by descending period. Entries within a row run descending, as
// in the published five-colour set.
std::vector<std::vector<int>> canonical_order(int q, std::vector<std::vector<int>> rows) {
  for (auto& r : rows) std::sort(r.begin(), r.end(), std::greater<int>());
  auto period = [](const std::vector<int>& r) {
    return std::accumulate(r.begin(), r.end(), 0LL);
  };
  auto has_cap = [&](const std::vector<int>& r) { return r.front() == q; };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    if (period(a) != period(b)) return period(a) > period(b);
    return a < b;
  });
  std::vector<std::vector<int>> caps, rest;
  for (auto& r : rows) (has_cap(r) ? caps : rest).push_back(r);

  // Rows containing the entry q may only sit first or last (constraint 3);
  // non-cap rows are valid anywhere.
  std::vector<std::vector<int>> out;
  if (!caps.empty()) out.push_back(caps.front());
  for (auto& r : rest) out.push_back(r);
  if (caps.size() >= 2) out.push_back(caps.back());
  return out;
}

}  // namespace

std::pair<RowFamily, PeriodReport> optimize_row_family(int q) {
  if (q < 2 || q > 9)
    throw OutOfSearchRange("optimize_row_family supports 2 <= q <= 9, got " +
                           std::to_string(q));

  // All candidate rows as nondecreasing entry tuples, sorted by length so a
  // slot budget cuts a prefix.
  std::vector<std::vector<int>> all_rows;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int minv, int slots) -> void {
    if (!cur.empty()) all_rows.push_back(cur);
    if (slots == 0) return;
    for (int v = minv; v <= q; ++v) {
      cur.push_back(v);
      self(self, v, slots - 1);
      cur.pop_back();
    }
  };
  gen(gen, 2, q);
  std::sort(all_rows.begin(), all_rows.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  Candidate best;
  std::vector<std::vector<int>> fam;
  auto consider = [&]() {
    int f = static_cast<int>(fam.size());
    if (f > q) return;
    int caps = 0;
    for (const auto& r : fam) caps += (r.back() == q);
    if (caps > std::min(f, 2)) return;
    Candidate c;
    c.lcm = 1;
    for (const auto& r : fam) {
      long long p = std::accumulate(r.begin(), r.end(), 0LL);
      c.periods.push_back(p);
      c.lcm = lcm_ll(c.lcm, p);
    }
    std::sort(c.periods.begin(), c.periods.end());
    c.rows = fam;
    if (best.lcm == 0 || better(c, best)) best = std::move(c);
  };
  auto choose = [&](auto&& self, size_t i, int slots) -> void {
    if (!fam.empty()) consider();
    for (size_t j = i; j < all_rows.size(); ++j) {
      if (static_cast<int>(all_rows[j].size()) > slots) break;
      fam.push_back(all_rows[j]);
      self(self, j, slots - static_cast<int>(all_rows[j].size()));
      fam.pop_back();
    }
  };
  choose(choose, 0, q);

  RowFamily rf;
  rf.q = q;
  rf.rows = canonical_order(q, best.rows);
  rf.validate();

  PeriodReport report;
  for (int i = 0; i < rf.row_count(); ++i) report.row_periods.push_back(rf.row_period(i));
  report.overall_period = best.lcm;
  return {rf, report};
}

// ---------------------------------------------------------------------------
// Tile set generation

namespace {

// Colour mapping: with black, working colour v (1..q) stays v and black is 0;
// for q=2 the black is omitted and colours shift down by one.
struct Palette {
  bool has_black;
  int map(int v) const { return has_black ? v : v - 1; }
  int black() const { return 0; }
};

using PE = PatternEntry;

void emit(std::vector<WeightedPiece>& out, PE n, PE e, PE s, PE w, Dyadic weight,
          std::string role = {}) {
  WeightedPiece wp;
  wp.piece = Piece::of(n, e, s, w);
  wp.weight = weight;
  wp.role = std::move(role);
  for (const auto& existing : out)
    if (existing.piece == wp.piece && existing.role == wp.role) return;  // merged
  out.push_back(std::move(wp));
}

}  // namespace

TileSet generate_tileset(const RowFamily& rf, const GeneratorOptions& opts) {
  rf.validate();
  const int q = rf.q;
  const int f = rf.row_count();
  const Palette pal{q >= 3};

  TileSet ts;
  ts.colours.count = pal.has_black ? q + 1 : 2;

  auto C = [&](int v) { return PE::exact(pal.map(v)); };
  auto BK = [&]() { return PE::exact(pal.black()); };
  auto up_row = [&](int i) { return i > 0 ? i - 1 : f - 1; };  // row stacked above
  const int above_bottom = up_row(f - 1);                      // row above row f

  auto& tiles = ts.plaquette_pieces;
  auto& stars = ts.star_pieces;

  // Counting tiles: row i, sub-period j of length r labelled b; the top edge
  // takes any label of the row above.
  for (int i = 0; i < f; ++i) {
    for (int j = 0; j < static_cast<int>(rf.rows[i].size()); ++j) {
      int r = rf.rows[i][j];
      int b = rf.first_label(i) + j;
      for (int t = rf.first_label(up_row(i)); t <= rf.last_label(up_row(i)); ++t) {
        for (int cc = 1; cc < r; ++cc)
          emit(tiles, C(t), C(cc + 1), C(b), C(cc), 1);
        emit(tiles, C(t), C(1), C(b), C(r), 1);  // wrap
      }
    }
    // Middle rows may count the cycle start as q instead of 1, but only in
    // lockstep with the row above (the tops pin the coincidence).
    if (i > 0 && i < f - 1) {
      int rbar = rf.rows[i].back();
      emit(tiles, C(rf.last_label(i - 1)), C(q), C(rf.last_label(i)), C(rbar), 1);
      emit(tiles, C(rf.first_label(i - 1)), C(2), C(rf.first_label(i)), C(q), 1);
    }
  }

  if (pal.has_black) {
    emit(tiles, BK(), BK(), BK(), BK(), opts.corner_weight, "seed-corner");
    emit(tiles, BK(), C(1), BK(), BK(), 1);                        // black column
    emit(tiles, C(rf.first_label(above_bottom)), C(2), BK(), BK(), 1);  // corner transition
  }

  // Row-locking stars on each row's bottom strip: mid-count keeps the label,
  // count 1 advances it cyclically.
  for (int i = 0; i < f; ++i) {
    int m = static_cast<int>(rf.rows[i].size());
    for (int j = 0; j < m; ++j) {
      int r = rf.rows[i][j];
      int label = rf.first_label(i) + j;
      int next = rf.first_label(i) + (j + 1) % m;
      for (int cc = 2; cc <= r; ++cc) {
        emit(stars, C(cc), C(label), PE::any(), C(label), 1);
        if (i == f - 1) emit(stars, C(cc), C(label), PE::absent(), C(label), 1);
      }
      emit(stars, C(1), C(next), PE::any(), C(label), 1);
      if (i == f - 1) emit(stars, C(1), C(next), PE::absent(), C(label), 1);
    }
    if (i > 0 && i < f - 1)
      emit(stars, C(q), C(rf.first_label(i)), PE::any(), C(rf.last_label(i)), 1);
  }

  // Simultaneous-completion penalties chain the substitution down the rows;
  // the final link is the period marker at weight 2. Right-boundary variants
  // keep the chain (and the marker) active when the period boundary lands on
  // the lattice edge.
  auto emit_penalty = [&](int n_colour, int strip_row, long long weight_num,
                          const std::string& role) {
    Dyadic w(weight_num);
    emit(stars, C(n_colour), C(rf.first_label(strip_row)), C(1),
         C(rf.last_label(strip_row)), w, role);
    emit(stars, C(n_colour), PE::absent(), C(1), C(rf.last_label(strip_row)), w, role);
  };
  if (f >= 3) {
    emit_penalty(1, 0, -1, "completion-penalty");
    for (int i = 1; i <= f - 3; ++i) emit_penalty(q, i, -1, "completion-penalty");
    emit_penalty(q, f - 2, -2, "marker");
  } else {
    // f <= 2: rows 1 and f complete together without any substitution.
    emit_penalty(1, 0, -2, "marker");
  }

  if (pal.has_black) {
    // Black column interfaces: every row starts counting at 1 against the
    // black column, labels start at the row's first label.
    for (int i = 0; i < f; ++i) emit(stars, C(1), C(rf.first_label(i)), C(1), BK(), 1);
    emit(stars, C(1), C(rf.first_label(above_bottom)), BK(), BK(), 1);
    // Bottom corner interfaces.
    emit(stars, BK(), BK(), PE::absent(), BK(), 1);
    emit(stars, C(2), C(rf.first_label(f - 1)), PE::absent(), BK(), 1);
    // Black may not appear to the right of black on a horizontal edge.
    emit(stars, PE::any(), BK(), PE::any(), BK(), -1, "black-right-of-black");
    // Left boundary is the black column's outer face.
    emit(stars, BK(), BK(), BK(), PE::absent(), 1);
    emit(stars, BK(), BK(), PE::absent(), PE::absent(), 1);  // bottom-left corner
    emit(stars, PE::absent(), BK(), BK(), PE::absent(), 1);  // top-left corner
  } else {
    emit(stars, PE::any(), PE::any(), PE::any(), PE::absent(), 1);
    emit(stars, PE::any(), PE::any(), PE::absent(), PE::absent(), 1);
    emit(stars, PE::absent(), PE::any(), PE::any(), PE::absent(), 1);
  }

  // Cropped boundaries carry no constraint of their own.
  emit(stars, PE::absent(), PE::any(), PE::any(), PE::any(), 1);   // top
  emit(stars, PE::any(), PE::absent(), PE::any(), PE::any(), 1);   // right
  emit(stars, PE::any(), PE::absent(), PE::absent(), PE::any(), 1);  // bottom-right
  emit(stars, PE::absent(), PE::absent(), PE::any(), PE::any(), 1);  // top-right

  ts.validate();
  return ts;
}

std::pair<RowFamily, TileSet> five_colour_example() {
  auto [rf, report] = optimize_row_family(4);
  GeneratorOptions opts;
  opts.corner_weight = 2;
  return {rf, generate_tileset(rf, opts)};
}

// ---------------------------------------------------------------------------
// Canonical pattern

namespace {

struct RowGeometry {
  long long period;
  std::vector<int> entries;
  int first_label;
};

// Count colour at vertical edge x >= 1 of a row anchored at x = 1, before
// substitution: offset (x-1) mod p walks the sub-periods.
int count_at(const RowGeometry& g, long long x, int* sub_period = nullptr) {
  long long off = (x - 1) % g.period;
  for (size_t j = 0; j < g.entries.size(); ++j) {
    if (off < g.entries[j]) {
      if (sub_period) *sub_period = static_cast<int>(j);
      return static_cast<int>(off) + 1;
    }
    off -= g.entries[j];
  }
  throw Error("count_at walked past the row period");
}

}  // namespace

Assignment canonical_assignment(const RowFamily& rf, const SquareLattice& lat) {
  rf.validate();
  if (rf.q < 3) throw Error("the canonical pattern needs the black anchor (q >= 3)");
  const int f = rf.row_count();
  const Palette pal{true};

  std::vector<RowGeometry> geom(f);
  for (int i = 0; i < f; ++i)
    geom[i] = {rf.row_period(i), rf.rows[i], rf.first_label(i)};

  // Family row occupying lattice row y (bottom row is family row f).
  auto family_row = [&](int y) { return ((f - 1 - y) % f + f) % f; };
  // Simultaneous completion period of family rows 0..i.
  std::vector<long long> lcm_prefix(f, 1);
  for (int i = 0; i < f; ++i)
    lcm_prefix[i] = (i ? lcm_prefix[i - 1] : 1) / std::gcd(i ? lcm_prefix[i - 1] : 1,
                                                           geom[i].period) *
                    geom[i].period;

  auto vertical_colour = [&](int x, int y) -> int {
    if (x == 0) return pal.black();
    if (y == 0 && x == 1) return pal.black();  // corner transition hides count 1
    int i = family_row(y);
    int sub = 0;
    int cc = count_at(geom[i], x, &sub);
    bool middle = (i > 0 && i < f - 1);
    if (middle && cc == 1 && sub == 0 && x > 1 && (x - 1) % lcm_prefix[i] == 0)
      return pal.map(rf.q);  // substituted cycle start
    return pal.map(cc);
  };
  auto horizontal_colour = [&](int x, int y) -> int {
    // Strip y carries the bottom labels of lattice row y (cyclically
    // continued past the top boundary).
    if (x == 0) return pal.black();
    int i = family_row(y);
    if (y == 0 && x == 1) return pal.black();  // transition tile bottom
    int sub = 0;
    count_at(geom[i], x, &sub);
    return pal.map(geom[i].first_label + sub);
  };

  Assignment a(lat);
  for (int y = 0; y < lat.height; ++y)
    for (int x = 0; x <= lat.width; ++x)
      a.colours[lat.vertical_index(x, y)] = vertical_colour(x, y);
  for (int y = 0; y <= lat.height; ++y)
    for (int x = 0; x < lat.width; ++x)
      a.colours[lat.horizontal_index(x, y)] = horizontal_colour(x, y);
  return a;
}

PropagationResult propagate_pattern(const RowFamily& rf, const TileSet& ts,
                                    const SquareLattice& lat) {
  rf.validate();
  if (rf.q < 3)
    throw NotPropagatable("q=2 has no corner anchor; propagation is undefined");
  const auto* corner = ts.find_role(SiteKind::Plaquette, "seed-corner");
  if (!corner) throw NotPropagatable("tile set has no seed-corner piece");

  std::vector<Seed> seeds;
  auto sites = enumerate_sites(lat);
  const InteractionSite* corner_site = nullptr;
  for (const auto& s : sites)
    if (s.kind == SiteKind::Plaquette && s.x == 0 && s.y == 0) corner_site = &s;
  for (int pos = 0; pos < 4; ++pos) {
    const auto& e = corner->piece.at[pos];
    if (corner_site->spins[pos] >= 0 && e.kind == PatternEntry::Exact)
      seeds.push_back({corner_site->spins[pos], e.colour});
  }

  PropagationOptions opts;
  opts.free_spins.assign(lat.spin_count(), 0);
  for (int x = 0; x < lat.width; ++x)
    opts.free_spins[lat.horizontal_index(x, lat.height)] = 1;

  PropagationResult res = propagate(ts, lat, seeds, opts);

  // The top-boundary labels are genuinely free; resolve them to the pattern's
  // continuation and check the score does not change.
  Assignment canon = canonical_assignment(rf, lat);
  Dyadic before = res.score.value;
  for (int x = 0; x < lat.width; ++x) {
    int spin = lat.horizontal_index(x, lat.height);
    res.assignment.colours[spin] = canon.colours[spin];
  }
  ScoringContext ctx(ts, lat);
  Dyadic after = ctx.total_score(res.assignment.colours);
  if (after != before)
    throw NotPropagatable("top-boundary resolution changed the score");
  return res;
}

int first_marker_column(const RowFamily& rf, const TileSet& ts, int max_cols) {
  if (max_cols < 1) throw MarkerNotFound("max_cols must be positive");
  SquareLattice lat(max_cols + 1, rf.row_count() + 1);
  PropagationResult res = propagate_pattern(rf, ts, lat);

  std::vector<const WeightedPiece*> markers;
  for (const auto& wp : ts.star_pieces)
    if (wp.role == "marker") markers.push_back(&wp);
  if (markers.empty()) throw MarkerNotFound("tile set has no marker piece");

  ScoringContext ctx(ts, lat);
  int best = -1;
  for (size_t i = 0; i < ctx.sites().size(); ++i) {
    const auto& site = ctx.sites()[i];
    if (site.kind != SiteKind::Star) continue;
    for (const auto* wp : markers) {
      if (!wp->piece.shape_matches(site.present_mask())) continue;
      bool match = true;
      for (int pos = 0; pos < 4 && match; ++pos) {
        const auto& e = wp->piece.at[pos];
        if (site.spins[pos] >= 0 && e.kind == PatternEntry::Exact &&
            res.assignment.colours[site.spins[pos]] != e.colour)
          match = false;
      }
      if (match && (best < 0 || site.x < best)) best = site.x;
    }
  }
  if (best < 0)
    throw MarkerNotFound("no period marker within " + std::to_string(max_cols) +
                         " columns");
  return best - 1;
}

}  // namespace prime
}  // namespace sizephase
