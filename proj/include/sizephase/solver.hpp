#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sizephase/bruteforce.hpp"
#include "sizephase/tiling.hpp"

namespace sizephase {

enum class SolveMethod { BruteForce, Propagation, ColumnDP };

struct SolveResult {
  Score min_score;
  std::optional<Assignment> witness;
  SolveMethod method = SolveMethod::BruteForce;
  uint64_t nodes_explored = 0;
};

struct Seed {
  int spin = 0;
  int colour = 0;
};

struct PenaltyEvent {
  SiteKind kind;
  int x = 0, y = 0;
  Dyadic site_score;
};

struct FrustrationRecord {
  SiteKind kind;
  int x = 0, y = 0;
  std::string reason;
};

struct PropagationOptions {
  // Spins the construction leaves deliberately unforced (top-boundary labels);
  // rule-resolution there is expected. Anywhere else it raises
  // NotPropagatable when strict.
  std::vector<char> free_spins;
  bool strict = true;
};

struct PropagationResult {
  Assignment assignment;
  Score score;
  std::vector<PenaltyEvent> penalties;        // sites scoring > 0 in the result
  std::vector<FrustrationRecord> frustrations;  // sites with no clean completion
  std::vector<int> rule_resolved_spins;

  bool frustrated() const { return !frustrations.empty(); }
};

// Deterministic forced propagation: seeded arc-consistency over spin domains.
// A site supports a colour when some completion from the current domains
// scores <= 0; sites that lose all clean completions are recorded (penalty or
// frustration) and stop constraining. Remaining free spins resolve to the
// smallest clean colour in spin order.
PropagationResult propagate(const TileSet& ts, const SquareLattice& lat,
                            const std::vector<Seed>& seeds,
                            const PropagationOptions& opts = {});

struct DpOptions {
  uint64_t max_states = 4'000'000;
  int max_height = 7;
};

// Exact minimum score via dynamic programming over column interface states
// (one vertical-edge column plus one horizontal-edge column). Matches brute
// force wherever both run.
SolveResult solve_column_dp(const TileSet& ts, const SquareLattice& lat,
                            const DpOptions& opts = {});

struct TransitionReport {
  std::vector<int> sizes;
  std::vector<Dyadic> scores;
  std::optional<int> transition_at;
};

// Scores square lattices of the given sizes with the supplied solver and
// finds the first size whose score reaches hi after some smaller size
// scored at most lo. Sizes may be solved concurrently (SIZEPHASE_THREADS);
// the report order is fixed by the input.
TransitionReport sweep_transition(const std::function<Dyadic(int)>& score_of_size,
                                  const std::vector<int>& sizes, const Dyadic& lo,
                                  const Dyadic& hi);

}  // namespace sizephase
