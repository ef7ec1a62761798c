#pragma once

// Test-only oracles, kept independent of the library's scoring path: the
// diagonal of the projector Hamiltonian is assembled by explicit Kronecker
// expansion over all spins.

#include <vector>

#include "sizephase/tiling.hpp"

namespace sizephase::testing {

// Diagonal of sum_l (1 - sum_t w_l(t) Pi_t) over the full c^n product basis.
// Basis index: spin 0 is the least significant digit.
inline std::vector<Dyadic> dense_diagonal(const TileSet& ts, const SquareLattice& lat) {
  const int n = lat.spin_count();
  const int c = ts.colours.count;
  size_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= static_cast<size_t>(c);

  auto sites = enumerate_sites(lat);
  std::vector<Dyadic> diag(dim, Dyadic(0));
  std::vector<int> state(n);

  for (size_t b = 0; b < dim; ++b) {
    size_t rest = b;
    for (int i = 0; i < n; ++i) {
      state[i] = static_cast<int>(rest % c);
      rest /= c;
    }
    Dyadic lambda = 0;
    for (const auto& site : sites) {
      // Projector sum via direct per-piece indicator products.
      Dyadic w = 0;
      bool matched = false;
      for (const auto& wp : ts.pieces_for(site.kind)) {
        bool shape_ok = true;
        for (int pos = 0; pos < 4; ++pos) {
          bool present = site.spins[pos] >= 0;
          if (present && wp.piece.at[pos].kind == PatternEntry::Absent) shape_ok = false;
          if (!present && wp.piece.at[pos].kind != PatternEntry::Absent) shape_ok = false;
        }
        if (!shape_ok) continue;
        Dyadic indicator = 1;
        for (int pos = 0; pos < 4; ++pos) {
          if (site.spins[pos] < 0) continue;
          const auto& e = wp.piece.at[pos];
          if (e.kind == PatternEntry::Exact && e.colour != state[site.spins[pos]])
            indicator = 0;
        }
        if (!indicator.is_zero()) {
          w += wp.weight;
          matched = true;
        }
      }
      for (const auto& ov : ts.overrides) {
        if (ov.kind != site.kind || ov.x != site.x || ov.y != site.y) continue;
        for (const auto& wp : ov.pieces) {
          bool ok = true;
          for (int pos = 0; pos < 4; ++pos) {
            bool present = site.spins[pos] >= 0;
            const auto& e = wp.piece.at[pos];
            if (present && e.kind == PatternEntry::Absent) ok = false;
            if (!present && e.kind != PatternEntry::Absent) ok = false;
            if (ok && present && e.kind == PatternEntry::Exact &&
                e.colour != state[site.spins[pos]])
              ok = false;
          }
          if (ok) {
            w += wp.weight;
            matched = true;
          }
        }
      }
      lambda += matched ? Dyadic(1) - w : Dyadic(1);
    }
    diag[b] = lambda;
  }
  return diag;
}

}  // namespace sizephase::testing
