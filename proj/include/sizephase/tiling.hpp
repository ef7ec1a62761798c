#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sizephase/dyadic.hpp"
#include "sizephase/lattice.hpp"

namespace sizephase {

struct ColourSpace {
  int count = 1;  // colours are 0..count-1
};

// One slot of a piece pattern. Exact requires the position to exist and carry
// the given colour; Any requires it to exist; Absent requires it to be
// truncated away. The serialized forms are an integer, "*" and "-".
struct PatternEntry {
  enum Kind : uint8_t { Exact, Any, Absent };
  Kind kind = Any;
  int colour = 0;

  static PatternEntry exact(int c) { return {Exact, c}; }
  static PatternEntry any() { return {Any, 0}; }
  static PatternEntry absent() { return {Absent, 0}; }

  bool operator==(const PatternEntry& o) const {
    return kind == o.kind && (kind != Exact || colour == o.colour);
  }
};

struct Piece {
  std::array<PatternEntry, 4> at{};  // N,E,S,W

  static Piece of(PatternEntry n, PatternEntry e, PatternEntry s, PatternEntry w) {
    Piece p;
    p.at = {n, e, s, w};
    return p;
  }
  // Shorthand for fully-bulk pieces: colour >= 0 exact, -1 any.
  static Piece nesw(int n, int e, int s, int w);

  bool shape_matches(uint8_t present_mask) const {
    for (int p = 0; p < 4; ++p) {
      bool present = present_mask & (uint8_t(1) << p);
      if (present && at[p].kind == PatternEntry::Absent) return false;
      if (!present && at[p].kind != PatternEntry::Absent) return false;
    }
    return true;
  }
  bool operator==(const Piece& o) const { return at == o.at; }
};

struct WeightedPiece {
  Piece piece;
  Dyadic weight = 1;
  std::string role;  // optional tag: "seed-corner", "marker", ...
};

struct PositionalOverride {
  SiteKind kind = SiteKind::Plaquette;
  int x = 0;
  int y = 0;
  std::vector<WeightedPiece> pieces;
};

// The (L, T_l, w_l) data of a generalised tiling: one piece list per site
// kind, applied translationally invariantly, plus optional per-site extras.
struct TileSet {
  ColourSpace colours;
  std::vector<WeightedPiece> plaquette_pieces;
  std::vector<WeightedPiece> star_pieces;
  std::vector<PositionalOverride> overrides;

  const std::vector<WeightedPiece>& pieces_for(SiteKind k) const {
    return k == SiteKind::Plaquette ? plaquette_pieces : star_pieces;
  }

  // Checks colour ranges and rejects duplicated identical pieces at one kind.
  void validate() const;

  std::string to_json(int indent = 2) const;
  static TileSet from_json(const std::string& text);

  const WeightedPiece* find_role(SiteKind kind, const std::string& role) const;
};

struct Assignment {
  SquareLattice lattice;
  std::vector<int> colours;  // one per spin index

  Assignment() = default;
  Assignment(const SquareLattice& lat, int fill = 0)
      : lattice(lat), colours(lat.spin_count(), fill) {}
};

struct Score {
  Dyadic value;
};

// Site scoring with precomputed per-shape piece groups; one instance serves
// any number of assignments on the same lattice.
class ScoringContext {
 public:
  ScoringContext(const TileSet& ts, const SquareLattice& lat);

  const std::vector<InteractionSite>& sites() const { return sites_; }
  const TileSet& tileset() const { return *ts_; }
  const SquareLattice& lattice() const { return lat_; }

  Dyadic site_score(int site_index, const std::vector<int>& colours) const;
  Dyadic total_score(const std::vector<int>& colours) const;
  // Smallest score any colouring can achieve at this site.
  Dyadic min_site_score(int site_index) const;

  // Pieces applicable at a site (kind+shape compatible, overrides included).
  const std::vector<const WeightedPiece*>& site_pieces(int site_index) const;

  // Table-driven score: O(arity) per call.
  Dyadic site_score_fast(int site_index, const std::vector<int>& colours) const {
    const auto& site = sites_[site_index];
    const auto& group = groups_[group_of_site_[site_index]];
    size_t idx = 0, mult = 1;
    for (int pos = 0; pos < 4; ++pos) {
      int spin = site.spins[pos];
      if (spin < 0) continue;
      idx += static_cast<size_t>(colours[spin]) * mult;
      mult *= colour_count_;
    }
    return group.table[idx];
  }

 private:
  struct Group {
    std::vector<const WeightedPiece*> pieces;
    std::vector<Dyadic> table;  // score per colour tuple, North least significant
    Dyadic min_score;
  };
  int colour_count_ = 1;
  const TileSet* ts_;
  SquareLattice lat_;
  std::vector<InteractionSite> sites_;
  std::vector<int> group_of_site_;
  std::vector<Group> groups_;
};

Score score_assignment(const TileSet& ts, const Assignment& a);
// Lemma-1 identity: the eigenvalue of a computational basis state equals the
// score of its assignment. Named alias so spectrum code reads naturally.
Score eigenvalue_of_basis_state(const TileSet& ts, const Assignment& a);

}  // namespace sizephase
