#include "sizephase/lattice.hpp"

#include <algorithm>

namespace sizephase {

std::pair<int, int> SquareLattice::spin_position2(int spin) const {
  int nh = width * (height + 1);
  if (spin < nh) {
    int x = spin % width, y = spin / width;
    return {2 * x + 1, 2 * y};
  }
  int v = spin - nh;
  int x = v % (width + 1), y = v / (width + 1);
  return {2 * x, 2 * y + 1};
}

std::vector<InteractionSite> enumerate_sites(const SquareLattice& lat) {
  std::vector<InteractionSite> sites;
  sites.reserve(lat.width * lat.height + (lat.width + 1) * (lat.height + 1));

  for (int y = 0; y < lat.height; ++y) {
    for (int x = 0; x < lat.width; ++x) {
      InteractionSite s;
      s.kind = SiteKind::Plaquette;
      s.x = x;
      s.y = y;
      s.spins[North] = lat.horizontal_index(x, y + 1);
      s.spins[East] = lat.vertical_index(x + 1, y);
      s.spins[South] = lat.horizontal_index(x, y);
      s.spins[West] = lat.vertical_index(x, y);
      sites.push_back(s);
    }
  }

  for (int y = 0; y <= lat.height; ++y) {
    for (int x = 0; x <= lat.width; ++x) {
      InteractionSite s;
      s.kind = SiteKind::Star;
      s.x = x;
      s.y = y;
      if (y < lat.height) s.spins[North] = lat.vertical_index(x, y);
      if (x < lat.width) s.spins[East] = lat.horizontal_index(x, y);
      if (y > 0) s.spins[South] = lat.vertical_index(x, y - 1);
      if (x > 0) s.spins[West] = lat.horizontal_index(x - 1, y);
      if (s.arity() == 2 && !lat.include_corner_stars) continue;
      sites.push_back(s);
    }
  }
  return sites;
}

std::vector<std::pair<int, int>> nearest_neighbour_pairs(const SquareLattice& lat) {
  std::vector<std::pair<int, int>> pairs;
  // Every nearest pair is one vertical edge with one horizontal edge whose
  // midpoints differ by (1/2, 1/2).
  for (int y = 0; y < lat.height; ++y) {
    for (int x = 0; x <= lat.width; ++x) {
      int v = lat.vertical_index(x, y);
      for (int dx = -1; dx <= 0; ++dx) {
        for (int dy = 0; dy <= 1; ++dy) {
          int hx = x + dx, hy = y + dy;
          if (hx < 0 || hx >= lat.width) continue;
          int h = lat.horizontal_index(hx, hy);
          pairs.emplace_back(std::min(v, h), std::max(v, h));
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace sizephase
