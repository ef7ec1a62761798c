#include "sizephase/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

namespace sizephase {

namespace {

struct SiteTuples {
  // Clean colour tuples (site score <= 0) for one scoring group; tuple digits
  // follow present positions N,E,S,W, North least significant.
  std::vector<uint32_t> clean;
};

// Per-site view used by the propagation engine.
struct SiteView {
  const InteractionSite* site;
  const SiteTuples* tuples;
  std::array<int, 4> present_spins;  // packed list of spins
  int arity = 0;
};

}  // namespace

PropagationResult propagate(const TileSet& ts, const SquareLattice& lat,
                            const std::vector<Seed>& seeds,
                            const PropagationOptions& opts) {
  if (ts.colours.count > 30) throw Error("propagation supports at most 30 colours");
  ScoringContext ctx(ts, lat);
  const auto& sites = ctx.sites();
  const int n = lat.spin_count();
  const int c = ts.colours.count;
  const uint32_t full = (uint32_t(1) << c) - 1;

  // Clean tuple lists are shared between sites with the same score table.
  std::map<const void*, SiteTuples> tuple_cache;
  std::vector<SiteView> views(sites.size());
  std::vector<std::vector<int>> sites_of_spin(n);
  for (size_t i = 0; i < sites.size(); ++i) {
    SiteView& v = views[i];
    v.site = &sites[i];
    v.arity = 0;
    for (int pos = 0; pos < 4; ++pos)
      if (sites[i].spins[pos] >= 0) v.present_spins[v.arity++] = sites[i].spins[pos];
    for (int k = 0; k < v.arity; ++k)
      sites_of_spin[v.present_spins[k]].push_back(static_cast<int>(i));

    const void* key = &ctx.site_pieces(static_cast<int>(i));
    auto it = tuple_cache.find(key);
    if (it == tuple_cache.end()) {
      SiteTuples st;
      uint32_t count = 1;
      for (int k = 0; k < v.arity; ++k) count *= c;
      std::vector<int> colours(n, 0);
      for (uint32_t t = 0; t < count; ++t) {
        uint32_t rest = t;
        for (int k = 0; k < v.arity; ++k) {
          colours[v.present_spins[k]] = static_cast<int>(rest % c);
          rest /= c;
        }
        if (ctx.site_score_fast(static_cast<int>(i), colours) <= Dyadic(0))
          st.clean.push_back(t);
      }
      it = tuple_cache.emplace(key, std::move(st)).first;
    }
    v.tuples = &it->second;
  }

  std::vector<uint32_t> domain(n, full);
  for (const auto& s : seeds) {
    if (s.spin < 0 || s.spin >= n) throw Error("seed spin out of range");
    if (s.colour < 0 || s.colour >= c) throw ColourOutOfRange("seed colour out of range");
    domain[s.spin] = uint32_t(1) << s.colour;
  }

  PropagationResult result;
  result.assignment = Assignment(lat);
  std::vector<char> dead(sites.size(), 0);

  std::set<int> work;
  for (size_t i = 0; i < sites.size(); ++i) work.insert(static_cast<int>(i));

  auto reduce_site = [&](int si) -> std::vector<int> {
    // Returns spins whose domains changed; wipes mark the site dead.
    SiteView& v = views[si];
    std::array<uint32_t, 4> support{};
    bool any_tuple = false;
    for (uint32_t t : v.tuples->clean) {
      uint32_t rest = t;
      std::array<int, 4> col{};
      bool compatible = true;
      for (int k = 0; k < v.arity; ++k) {
        col[k] = static_cast<int>(rest % c);
        rest /= c;
        if (!(domain[v.present_spins[k]] >> col[k] & 1)) compatible = false;
      }
      if (!compatible) continue;
      any_tuple = true;
      for (int k = 0; k < v.arity; ++k) support[k] |= uint32_t(1) << col[k];
    }
    std::vector<int> changed;
    if (!any_tuple) {
      dead[si] = 1;
      result.frustrations.push_back(
          {v.site->kind, v.site->x, v.site->y, "no clean completion"});
      return changed;
    }
    for (int k = 0; k < v.arity; ++k) {
      uint32_t nd = domain[v.present_spins[k]] & support[k];
      if (nd != domain[v.present_spins[k]]) {
        domain[v.present_spins[k]] = nd;
        changed.push_back(v.present_spins[k]);
      }
    }
    return changed;
  };

  auto run_fixpoint = [&]() {
    while (!work.empty()) {
      int si = *work.begin();
      work.erase(work.begin());
      if (dead[si]) continue;
      for (int spin : reduce_site(si))
        for (int sj : sites_of_spin[spin])
          if (!dead[sj]) work.insert(sj);
    }
  };
  run_fixpoint();

  // Deterministic resolution of whatever the constraints leave open. A live
  // site never empties a domain (a jointly unsatisfiable site dies instead),
  // so every domain here is nonempty.
  for (int spin = 0; spin < n; ++spin) {
    if ((domain[spin] & (domain[spin] - 1)) == 0) continue;
    int pick = -1;
    for (int col = 0; col < c; ++col) {
      if (!(domain[spin] >> col & 1)) continue;
      uint32_t saved = domain[spin];
      domain[spin] = uint32_t(1) << col;
      bool ok = true;
      for (int sj : sites_of_spin[spin]) {
        if (dead[sj]) continue;
        const SiteView& v = views[sj];
        bool sat = false;
        for (uint32_t t : v.tuples->clean) {
          uint32_t rest = t;
          bool compatible = true;
          for (int k = 0; k < v.arity; ++k) {
            int cc = static_cast<int>(rest % c);
            rest /= c;
            if (!(domain[v.present_spins[k]] >> cc & 1)) compatible = false;
          }
          if (compatible) {
            sat = true;
            break;
          }
        }
        if (!sat) {
          ok = false;
          break;
        }
      }
      domain[spin] = saved;
      if (ok) {
        pick = col;
        break;
      }
    }
    if (pick < 0) {
      for (int col = 0; col < c; ++col)
        if (domain[spin] >> col & 1) {
          pick = col;
          break;
        }
    }
    domain[spin] = uint32_t(1) << pick;
    result.rule_resolved_spins.push_back(spin);
    for (int sj : sites_of_spin[spin])
      if (!dead[sj]) work.insert(sj);
    run_fixpoint();
  }

  for (int spin = 0; spin < n; ++spin) {
    int col = 0;
    while (!(domain[spin] >> col & 1)) ++col;
    result.assignment.colours[spin] = col;
  }

  // Strictness: rule resolution is only expected on declared-free spins or
  // next to sites that lost all clean completions.
  if (opts.strict) {
    std::vector<char> near_dead(n, 0);
    for (size_t i = 0; i < sites.size(); ++i)
      if (dead[i])
        for (int spin : sites[i].spins)
          if (spin >= 0) near_dead[spin] = 1;
    for (int spin : result.rule_resolved_spins) {
      bool declared = !opts.free_spins.empty() && opts.free_spins[spin];
      if (!declared && !near_dead[spin])
        throw NotPropagatable("spin " + std::to_string(spin) +
                              " has more than one clean continuation");
    }
  }

  Dyadic total = 0;
  for (size_t i = 0; i < sites.size(); ++i) {
    Dyadic s = ctx.site_score_fast(static_cast<int>(i), result.assignment.colours);
    total += s;
    if (s > Dyadic(0))
      result.penalties.push_back({sites[i].kind, sites[i].x, sites[i].y, s});
  }
  result.score = Score{total};
  return result;
}

// ---------------------------------------------------------------------------
// Column dynamic programming.

namespace {

// Packs up to 15 colours of up to 15 values... order: digit k = value index k.
uint64_t pack(const std::vector<int>& vals) {
  uint64_t key = 0;
  for (size_t i = 0; i < vals.size(); ++i) key |= uint64_t(vals[i]) << (4 * i);
  return key;
}

}  // namespace

SolveResult solve_column_dp(const TileSet& ts, const SquareLattice& lat,
                            const DpOptions& opts) {
  const int c = ts.colours.count;
  const int W = lat.width, H = lat.height;
  if (c > 15) throw StateSpaceTooLarge("column DP supports at most 15 colours");
  if (H > opts.max_height)
    throw StateSpaceTooLarge("column DP interface too tall: height " + std::to_string(H));
  double states_ld = 1;
  for (int i = 0; i < 2 * H + 1; ++i) states_ld *= c;
  if (states_ld > static_cast<double>(opts.max_states))
    throw StateSpaceTooLarge("column DP state space exceeds the configured cap");

  ScoringContext ctx(ts, lat);
  // Site lookup by coordinates.
  std::map<std::pair<int, int>, int> plaq_at, star_at;
  for (size_t i = 0; i < ctx.sites().size(); ++i) {
    const auto& s = ctx.sites()[i];
    (s.kind == SiteKind::Plaquette ? plaq_at : star_at)[{s.x, s.y}] = static_cast<int>(i);
  }

  uint64_t transitions = 0;
  std::vector<int> colours(lat.spin_count(), 0);

  // States after a V-stage are (verts col x, horiz col x-1); after an H-stage
  // (verts col x, horiz col x). Values kept as (packed key -> best score).
  using Layer = std::unordered_map<uint64_t, Dyadic>;

  auto relax = [](Layer& layer, uint64_t key, const Dyadic& val) {
    auto it = layer.find(key);
    if (it == layer.end() || val < it->second)
      layer[key] = val;
  };

  // Enumerate all colourings of `spins`, writing into `colours`.
  auto enumerate = [&](const std::vector<int>& spins, auto&& body) {
    std::vector<int> vals(spins.size(), 0);
    while (true) {
      for (size_t i = 0; i < spins.size(); ++i) colours[spins[i]] = vals[i];
      body(vals);
      size_t i = 0;
      while (i < vals.size() && ++vals[i] == c) vals[i++] = 0;
      if (i == vals.size()) break;
    }
  };

  auto vert_spins = [&](int x) {
    std::vector<int> spins;
    for (int y = 0; y < H; ++y) spins.push_back(lat.vertical_index(x, y));
    return spins;
  };
  auto horiz_spins = [&](int x) {
    std::vector<int> spins;
    for (int y = 0; y <= H; ++y) spins.push_back(lat.horizontal_index(x, y));
    return spins;
  };

  Layer layer;
  enumerate(vert_spins(0), [&](const std::vector<int>& vals) {
    relax(layer, pack(vals), Dyadic(0));
  });

  for (int x = 0; x < W; ++x) {
    // H-stage: place horizontal column x, score star column x.
    Layer next;
    auto vspins = vert_spins(x);
    auto hprev = x > 0 ? horiz_spins(x - 1) : std::vector<int>{};
    auto hspins = horiz_spins(x);
    for (const auto& [key, base] : layer) {
      for (size_t i = 0; i < vspins.size(); ++i) colours[vspins[i]] = int(key >> (4 * i) & 15);
      for (size_t i = 0; i < hprev.size(); ++i)
        colours[hprev[i]] = int(key >> (4 * (H + i)) & 15);
      enumerate(hspins, [&](const std::vector<int>& hv) {
        ++transitions;
        Dyadic acc = base;
        for (int y = 0; y <= H; ++y) {
          auto it = star_at.find({x, y});
          if (it != star_at.end()) acc += ctx.site_score_fast(it->second, colours);
        }
        uint64_t nk = 0;
        for (size_t i = 0; i < vspins.size(); ++i)
          nk |= uint64_t(colours[vspins[i]]) << (4 * i);
        nk |= pack(hv) << (4 * H);
        relax(next, nk, acc);
      });
    }
    layer = std::move(next);

    // V-stage: place vertical column x+1, score plaquette column x.
    Layer next2;
    for (const auto& [key, base] : layer) {
      for (size_t i = 0; i < vspins.size(); ++i) colours[vspins[i]] = int(key >> (4 * i) & 15);
      for (size_t i = 0; i < hspins.size(); ++i)
        colours[hspins[i]] = int(key >> (4 * (H + i)) & 15);
      enumerate(vert_spins(x + 1), [&](const std::vector<int>& vv) {
        ++transitions;
        Dyadic acc = base;
        for (int y = 0; y < H; ++y) {
          auto it = plaq_at.find({x, y});
          acc += ctx.site_score_fast(it->second, colours);
        }
        uint64_t nk = pack(vv);
        for (size_t i = 0; i < hspins.size(); ++i)
          nk |= uint64_t(colours[hspins[i]]) << (4 * (H + i));
        relax(next2, nk, acc);
      });
    }
    layer = std::move(next2);

    if (layer.size() > opts.max_states)
      throw StateSpaceTooLarge("column DP exceeded the state cap at column " +
                               std::to_string(x));
  }

  // Close with star column W (right boundary; uses verts col W + horiz col W-1).
  bool have = false;
  Dyadic best = 0;
  auto vlast = vert_spins(W);
  auto hlast = horiz_spins(W - 1);
  for (const auto& [key, base] : layer) {
    for (size_t i = 0; i < vlast.size(); ++i) colours[vlast[i]] = int(key >> (4 * i) & 15);
    for (size_t i = 0; i < hlast.size(); ++i)
      colours[hlast[i]] = int(key >> (4 * (H + i)) & 15);
    Dyadic acc = base;
    for (int y = 0; y <= H; ++y) {
      auto it = star_at.find({W, y});
      if (it != star_at.end()) acc += ctx.site_score_fast(it->second, colours);
    }
    if (!have || acc < best) {
      best = acc;
      have = true;
    }
  }

  SolveResult res;
  res.min_score = Score{best};
  res.method = SolveMethod::ColumnDP;
  res.nodes_explored = transitions;
  return res;
}

TransitionReport sweep_transition(const std::function<Dyadic(int)>& score_of_size,
                                  const std::vector<int>& sizes, const Dyadic& lo,
                                  const Dyadic& hi) {
  TransitionReport report;
  report.sizes = sizes;
  report.scores.resize(sizes.size());

  int threads = 1;
  if (const char* env = std::getenv("SIZEPHASE_THREADS")) threads = std::max(1, std::atoi(env));
  threads = std::min<int>(threads, static_cast<int>(sizes.size()));

  if (threads <= 1) {
    for (size_t i = 0; i < sizes.size(); ++i) report.scores[i] = score_of_size(sizes[i]);
  } else {
    std::vector<std::future<Dyadic>> futs(sizes.size());
    std::atomic<size_t> cursor{0};
    std::vector<std::promise<Dyadic>> promises(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) futs[i] = promises[i].get_future();
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        while (true) {
          size_t i = cursor.fetch_add(1);
          if (i >= sizes.size()) break;
          try {
            promises[i].set_value(score_of_size(sizes[i]));
          } catch (...) {
            promises[i].set_exception(std::current_exception());
          }
        }
      });
    for (auto& t : pool) t.join();
    for (size_t i = 0; i < sizes.size(); ++i) report.scores[i] = futs[i].get();
  }

  bool seen_low = false;
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (report.scores[i] <= lo) seen_low = true;
    if (seen_low && report.scores[i] >= hi) {
      report.transition_at = sizes[i];
      break;
    }
  }
  return report;
}

}  // namespace sizephase
