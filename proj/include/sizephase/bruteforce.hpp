#pragma once

#include <cstdint>
#include <map>

#include "sizephase/tiling.hpp"

namespace sizephase {

struct BruteForceOptions {
  uint64_t node_budget = 200'000'000;
};

struct BruteForceResult {
  Score min_score;
  Assignment witness;  // lexicographically smallest optimal assignment
  uint64_t nodes_explored = 0;
};

// Exact global minimum by DFS over spins in column-major order, pruning with
// the per-site minimum-score bound. Deterministic witness.
BruteForceResult min_score_bruteforce(const TileSet& ts, const SquareLattice& lat,
                                      const BruteForceOptions& opts = {});

// Exact diagonal spectrum as a score -> multiplicity histogram. Enumerates all
// c^n assignments; guarded by a state budget.
std::map<Dyadic, uint64_t> score_spectrum(const TileSet& ts, const SquareLattice& lat,
                                          uint64_t state_budget = 1'500'000'000,
                                          int threads = 0);

}  // namespace sizephase
