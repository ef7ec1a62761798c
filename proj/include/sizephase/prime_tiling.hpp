#pragma once

#include <vector>

#include "sizephase/bignum.hpp"
#include "sizephase/solver.hpp"
#include "sizephase/tiling.hpp"

namespace sizephase {
namespace prime {

// A family of counting rows. Row i counts 1..r_i1, 1..r_i2, ... on its
// vertical edges with horizontal period p_i = sum_j r_ij. Constraints:
//   f <= q rows, m_i <= q entries per row, sum_i m_i <= q (one horizontal
//   label per sub-period), entries of middle rows <= q-1, and every entry
//   >= 2 (a length-1 sub-period would make the wrap stars ambiguous).
struct RowFamily {
  int q = 2;                          // working colours, black excluded
  std::vector<std::vector<int>> rows;

  int row_count() const { return static_cast<int>(rows.size()); }
  long long row_period(int i) const {
    long long p = 0;
    for (int r : rows[i]) p += r;
    return p;
  }
  // Sequential sub-period labels: row i uses labels first_label(i) ..
  // first_label(i) + m_i - 1 on its bottom horizontal edges.
  int first_label(int i) const {
    int l = 1;
    for (int k = 0; k < i; ++k) l += static_cast<int>(rows[k].size());
    return l;
  }
  int last_label(int i) const {
    return first_label(i) + static_cast<int>(rows[i].size()) - 1;
  }

  void validate() const;
};

struct PeriodReport {
  std::vector<BigInt> row_periods;
  BigInt overall_period;
};

// Exhaustive search over valid row families maximising lcm{p_i}; ties broken
// by fewest rows, then the lexicographically smallest sorted period multiset.
// Supported for 2 <= q <= 9.
std::pair<RowFamily, PeriodReport> optimize_row_family(int q);

struct GeneratorOptions {
  // Weight of the all-black corner tile; 3/2 is the general construction's
  // bonus of 1/2, the five-colour example uses 2.
  Dyadic corner_weight = Dyadic::ratio(3, 2);
};

// Tile and star pieces realising the family's unique periodic pattern, with
// the period marker penalised at weight 2. Colour 0 is black; counting
// colours and row labels share 1..q. For q = 2 the black machinery is
// omitted and the two colours are used directly.
TileSet generate_tileset(const RowFamily& rf, const GeneratorOptions& opts = {});

// The q=4 preset matching the published five-colour tile set (corner weight 2).
std::pair<RowFamily, TileSet> five_colour_example();

// The analytic pattern the tile set forces: black column, anchored counting
// rows, substitutions every lcm-coincidence. Defined for q >= 3.
Assignment canonical_assignment(const RowFamily& rf, const SquareLattice& lat);

// Forced propagation from the corner seed. Top-boundary labels are the one
// deliberately free choice; they are resolved to the canonical continuation.
PropagationResult propagate_pattern(const RowFamily& rf, const TileSet& ts,
                                    const SquareLattice& lat);

// Column of the first period-marker occurrence (tile columns counted with the
// black column as 0); equals the overall period. Throws MarkerNotFound when
// max_cols is too small.
int first_marker_column(const RowFamily& rf, const TileSet& ts, int max_cols);

}  // namespace prime
}  // namespace sizephase
