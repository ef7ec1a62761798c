#include "sizephase/tiling.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include <json.hpp>

namespace sizephase {

Piece Piece::nesw(int n, int e, int s, int w) {
  auto entry = [](int c) {
    return c < 0 ? PatternEntry::any() : PatternEntry::exact(c);
  };
  return of(entry(n), entry(e), entry(s), entry(w));
}

namespace {

bool piece_matches(const Piece& p, const InteractionSite& site,
                   const std::vector<int>& colours) {
  for (int pos = 0; pos < 4; ++pos) {
    int spin = site.spins[pos];
    const PatternEntry& e = p.at[pos];
    if (spin < 0) {
      if (e.kind != PatternEntry::Absent) return false;
    } else {
      if (e.kind == PatternEntry::Absent) return false;
      if (e.kind == PatternEntry::Exact && e.colour != colours[spin]) return false;
    }
  }
  return true;
}

void check_colours(const std::vector<WeightedPiece>& pieces, int c, const char* where) {
  for (const auto& wp : pieces)
    for (const auto& e : wp.piece.at)
      if (e.kind == PatternEntry::Exact && (e.colour < 0 || e.colour >= c))
        throw ColourOutOfRange(std::string(where) + ": piece colour " +
                               std::to_string(e.colour) + " outside 0.." +
                               std::to_string(c - 1));
}

void check_duplicates(const std::vector<WeightedPiece>& pieces, const char* where) {
  for (size_t i = 0; i < pieces.size(); ++i)
    for (size_t j = i + 1; j < pieces.size(); ++j)
      if (pieces[i].piece == pieces[j].piece && pieces[i].role == pieces[j].role)
        throw Error(std::string(where) + ": identical pieces must be merged, not duplicated");
}

}  // namespace

void TileSet::validate() const {
  if (colours.count < 1) throw Error("colour space must be nonempty");
  check_colours(plaquette_pieces, colours.count, "plaquette");
  check_colours(star_pieces, colours.count, "star");
  check_duplicates(plaquette_pieces, "plaquette");
  check_duplicates(star_pieces, "star");
  for (const auto& ov : overrides) check_colours(ov.pieces, colours.count, "override");
}

const WeightedPiece* TileSet::find_role(SiteKind kind, const std::string& role) const {
  for (const auto& wp : pieces_for(kind))
    if (wp.role == role) return &wp;
  return nullptr;
}

// ---------------------------------------------------------------------------
// JSON serialization. Pattern entries are an integer, "*" (present, any
// colour) or "-" (position truncated away); weights are exact rational
// strings with power-of-two denominators.

namespace {

using nlohmann::ordered_json;

ordered_json entry_to_json(const PatternEntry& e) {
  switch (e.kind) {
    case PatternEntry::Exact:
      return e.colour;
    case PatternEntry::Any:
      return "*";
    default:
      return "-";
  }
}

PatternEntry entry_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return PatternEntry::exact(j.get<int>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "*") return PatternEntry::any();
    if (s == "-") return PatternEntry::absent();
    return PatternEntry::exact(std::stoi(s));
  }
  throw FormatError("bad pattern entry in tile set");
}

ordered_json pieces_to_json(const std::vector<WeightedPiece>& pieces) {
  ordered_json arr = ordered_json::array();
  for (const auto& wp : pieces) {
    ordered_json p;
    p["pattern"] = ordered_json::array();
    for (const auto& e : wp.piece.at) p["pattern"].push_back(entry_to_json(e));
    p["weight"] = wp.weight.str();
    if (!wp.role.empty()) p["role"] = wp.role;
    arr.push_back(std::move(p));
  }
  return arr;
}

std::vector<WeightedPiece> pieces_from_json(const ordered_json& arr) {
  std::vector<WeightedPiece> out;
  for (const auto& p : arr) {
    WeightedPiece wp;
    const auto& pat = p.at("pattern");
    if (pat.size() != 4) throw FormatError("pattern must have 4 entries (N,E,S,W)");
    for (int i = 0; i < 4; ++i) wp.piece.at[i] = entry_from_json(pat[i]);
    wp.weight = Dyadic::parse(p.at("weight").get<std::string>());
    if (p.contains("role")) wp.role = p.at("role").get<std::string>();
    out.push_back(std::move(wp));
  }
  return out;
}

}  // namespace

std::string TileSet::to_json(int indent) const {
  ordered_json j;
  j["colours"] = colours.count;
  j["plaquette_pieces"] = pieces_to_json(plaquette_pieces);
  j["star_pieces"] = pieces_to_json(star_pieces);
  if (!overrides.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& ov : overrides) {
      ordered_json o;
      o["kind"] = ov.kind == SiteKind::Plaquette ? "plaquette" : "star";
      o["x"] = ov.x;
      o["y"] = ov.y;
      o["pieces"] = pieces_to_json(ov.pieces);
      arr.push_back(std::move(o));
    }
    j["positional_overrides"] = std::move(arr);
  }
  return j.dump(indent);
}

TileSet TileSet::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("tile set JSON: ") + e.what());
  }
  TileSet ts;
  ts.colours.count = j.at("colours").get<int>();
  ts.plaquette_pieces = pieces_from_json(j.at("plaquette_pieces"));
  ts.star_pieces = pieces_from_json(j.at("star_pieces"));
  if (j.contains("positional_overrides")) {
    for (const auto& o : j.at("positional_overrides")) {
      PositionalOverride ov;
      ov.kind = o.at("kind").get<std::string>() == "plaquette" ? SiteKind::Plaquette
                                                               : SiteKind::Star;
      ov.x = o.at("x").get<int>();
      ov.y = o.at("y").get<int>();
      ov.pieces = pieces_from_json(o.at("pieces"));
      ts.overrides.push_back(std::move(ov));
    }
  }
  ts.validate();
  return ts;
}

// ---------------------------------------------------------------------------
// Scoring

ScoringContext::ScoringContext(const TileSet& ts, const SquareLattice& lat)
    : colour_count_(ts.colours.count), ts_(&ts), lat_(lat), sites_(enumerate_sites(lat)) {
  ts.validate();
  group_of_site_.resize(sites_.size());

  // Group sites by (kind, present mask, overriding extras). Sites in a group
  // share the applicable piece list.
  std::map<std::tuple<int, int, int>, int> group_ids;
  for (size_t i = 0; i < sites_.size(); ++i) {
    const auto& site = sites_[i];
    int override_id = 0;
    for (size_t k = 0; k < ts.overrides.size(); ++k) {
      const auto& ov = ts.overrides[k];
      if (ov.kind == site.kind && ov.x == site.x && ov.y == site.y) {
        override_id = static_cast<int>(k) + 1;
        break;
      }
    }
    auto key = std::make_tuple(static_cast<int>(site.kind), site.present_mask(), override_id);
    auto it = group_ids.find(key);
    if (it == group_ids.end()) {
      Group g;
      for (const auto& wp : ts.pieces_for(site.kind))
        if (wp.piece.shape_matches(site.present_mask())) g.pieces.push_back(&wp);
      if (override_id > 0)
        for (const auto& wp : ts.overrides[override_id - 1].pieces)
          if (wp.piece.shape_matches(site.present_mask())) g.pieces.push_back(&wp);

      // Score table over colourings of the site's spins (North least
      // significant digit), plus the minimum achievable score.
      int arity = site.arity();
      long long total = 1;
      for (int a = 0; a < arity; ++a) total *= ts.colours.count;
      Dyadic best = 1;  // unmatched
      g.table.resize(total);
      std::vector<int> tuple(4, -1);
      for (long long t = 0; t < total; ++t) {
        long long rest = t;
        for (int pos = 0; pos < 4; ++pos) {
          if (site.spins[pos] < 0) continue;
          tuple[pos] = static_cast<int>(rest % ts.colours.count);
          rest /= ts.colours.count;
        }
        Dyadic w = 0;
        bool any = false;
        for (const auto* wp : g.pieces) {
          bool ok = true;
          for (int pos = 0; pos < 4 && ok; ++pos) {
            const auto& e = wp->piece.at[pos];
            if (site.spins[pos] >= 0 && e.kind == PatternEntry::Exact &&
                e.colour != tuple[pos])
              ok = false;
          }
          if (ok) {
            w += wp->weight;
            any = true;
          }
        }
        Dyadic sc = any ? Dyadic(1) - w : Dyadic(1);
        g.table[t] = sc;
        if (sc < best) best = sc;
      }
      g.min_score = best;
      it = group_ids.emplace(key, static_cast<int>(groups_.size())).first;
      groups_.push_back(std::move(g));
    }
    group_of_site_[i] = it->second;
  }
}

const std::vector<const WeightedPiece*>& ScoringContext::site_pieces(int site_index) const {
  return groups_[group_of_site_[site_index]].pieces;
}

Dyadic ScoringContext::min_site_score(int site_index) const {
  return groups_[group_of_site_[site_index]].min_score;
}

Dyadic ScoringContext::site_score(int site_index, const std::vector<int>& colours) const {
  const auto& site = sites_[site_index];
  const auto& group = groups_[group_of_site_[site_index]];
  Dyadic w = 0;
  bool any = false;
  for (const auto* wp : group.pieces) {
    if (piece_matches(wp->piece, site, colours)) {
      w += wp->weight;
      any = true;
    }
  }
  return any ? Dyadic(1) - w : Dyadic(1);
}

Dyadic ScoringContext::total_score(const std::vector<int>& colours) const {
  Dyadic total = 0;
  for (size_t i = 0; i < sites_.size(); ++i)
    total += site_score_fast(static_cast<int>(i), colours);
  return total;
}

Score score_assignment(const TileSet& ts, const Assignment& a) {
  if (static_cast<int>(a.colours.size()) != a.lattice.spin_count())
    throw Error("assignment length does not match the lattice spin count");
  for (int c : a.colours)
    if (c < 0 || c >= ts.colours.count)
      throw ColourOutOfRange("assignment uses colour " + std::to_string(c) +
                             " outside 0.." + std::to_string(ts.colours.count - 1));
  ScoringContext ctx(ts, a.lattice);
  return Score{ctx.total_score(a.colours)};
}

Score eigenvalue_of_basis_state(const TileSet& ts, const Assignment& a) {
  return score_assignment(ts, a);
}

}  // namespace sizephase
