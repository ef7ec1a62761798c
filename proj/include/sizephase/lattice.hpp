#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "sizephase/errors.hpp"

namespace sizephase {

enum class SiteKind : uint8_t { Plaquette, Star };

// Positions within a 4-local interaction site, fixed data contract: pieces in
// every tile set refer to these slots.
enum Pos : int { North = 0, East = 1, South = 2, West = 3 };

// Open-boundary square lattice with spins on edges (the dotted edges of the
// standard picture): width*(height+1) horizontal edges, (width+1)*height
// vertical ones. Plaquette columns are numbered 0..width-1 left to right,
// rows 0..height-1 bottom to top.
struct SquareLattice {
  int width = 1;
  int height = 1;
  bool include_corner_stars = true;

  SquareLattice() = default;
  SquareLattice(int w, int h, bool corners = true)
      : width(w), height(h), include_corner_stars(corners) {
    if (w < 1 || h < 1) throw Error("lattice dimensions must be positive");
  }

  int spin_count() const { return width * (height + 1) + (width + 1) * height; }

  // Horizontal edge between vertices (x,y) and (x+1,y); x in [0,width), y in [0,height].
  int horizontal_index(int x, int y) const { return y * width + x; }
  // Vertical edge between vertices (x,y) and (x,y+1); x in [0,width], y in [0,height).
  int vertical_index(int x, int y) const {
    return width * (height + 1) + y * (width + 1) + x;
  }

  bool is_vertical(int spin) const { return spin >= width * (height + 1); }
  // Geometric midpoint doubled (integer coordinates): horizontal edge (x,y) ->
  // (2x+1, 2y); vertical edge (x,y) -> (2x, 2y+1).
  std::pair<int, int> spin_position2(int spin) const;
};

struct InteractionSite {
  SiteKind kind;
  // Spin indices in N,E,S,W order; -1 marks a position truncated by the open
  // boundary. Bulk sites have all four.
  std::array<int, 4> spins{-1, -1, -1, -1};
  int x = 0;  // plaquette cell or vertex coordinate
  int y = 0;

  int arity() const {
    int a = 0;
    for (int s : spins) a += (s >= 0);
    return a;
  }
  uint8_t present_mask() const {
    uint8_t m = 0;
    for (int p = 0; p < 4; ++p)
      if (spins[p] >= 0) m |= uint8_t(1) << p;
    return m;
  }
};

// All plaquettes (row-major from bottom-left) followed by all stars (vertices
// row-major, corners included when the lattice says so). Pure function of the
// lattice; identical inputs give identical ordered output.
std::vector<InteractionSite> enumerate_sites(const SquareLattice& lat);

// Unordered pairs of spins that co-occur in a site and are geometrically
// nearest (midpoint distance sqrt(2)/2). This is the i~j adjacency used by the
// sector-mixing penalty.
std::vector<std::pair<int, int>> nearest_neighbour_pairs(const SquareLattice& lat);

}  // namespace sizephase
