#include "sizephase/bruteforce.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace sizephase {

namespace {

// Spins ordered column-major by doubled geometric x, then y; DFS assigns them
// in this order so witnesses are reproducible.
std::vector<int> column_major_order(const SquareLattice& lat) {
  std::vector<int> order(lat.spin_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto pa = lat.spin_position2(a), pb = lat.spin_position2(b);
    if (pa.first != pb.first) return pa.first < pb.first;
    if (pa.second != pb.second) return pa.second < pb.second;
    return a < b;
  });
  return order;
}

struct Dfs {
  const ScoringContext& ctx;
  const std::vector<int>& order;
  int c;
  uint64_t budget;

  std::vector<int> colours;
  std::vector<int> rank_of_spin;
  // Sites become scoreable once their last spin (in DFS order) is assigned.
  std::vector<std::vector<int>> sites_closing_at;
  std::vector<Dyadic> suffix_min;  // sum of min site scores still open after rank r

  uint64_t nodes = 0;
  bool found = false;
  Dyadic best = 0;
  std::vector<int> best_colours;

  void run() {
    Dyadic open_min = 0;
    for (size_t i = 0; i < ctx.sites().size(); ++i) open_min += ctx.min_site_score(static_cast<int>(i));
    descend(0, Dyadic(0), open_min);
  }

  void descend(int rank, Dyadic partial, Dyadic open_min) {
    if (++nodes > budget) throw BudgetExceeded("brute-force node budget exceeded");
    if (found) {
      Dyadic bound = partial + open_min;
      if (bound >= best) return;
    }
    if (rank == static_cast<int>(order.size())) {
      if (!found || partial < best) {
        found = true;
        best = partial;
        best_colours = colours;
      }
      return;
    }
    int spin = order[rank];
    for (int col = 0; col < c; ++col) {
      colours[spin] = col;
      Dyadic p = partial, om = open_min;
      for (int site : sites_closing_at[rank]) {
        p += ctx.site_score_fast(site, colours);
        om -= ctx.min_site_score(site);
      }
      descend(rank + 1, p, om);
    }
    colours[spin] = 0;
  }
};

}  // namespace

BruteForceResult min_score_bruteforce(const TileSet& ts, const SquareLattice& lat,
                                      const BruteForceOptions& opts) {
  ScoringContext ctx(ts, lat);
  auto order = column_major_order(lat);

  Dfs dfs{ctx, order, ts.colours.count, opts.node_budget};
  dfs.colours.assign(lat.spin_count(), 0);
  dfs.rank_of_spin.assign(lat.spin_count(), 0);
  for (size_t r = 0; r < order.size(); ++r) dfs.rank_of_spin[order[r]] = static_cast<int>(r);
  dfs.sites_closing_at.assign(order.size(), {});
  for (size_t i = 0; i < ctx.sites().size(); ++i) {
    int last = -1;
    for (int spin : ctx.sites()[i].spins)
      if (spin >= 0) last = std::max(last, dfs.rank_of_spin[spin]);
    dfs.sites_closing_at[last].push_back(static_cast<int>(i));
  }
  dfs.run();

  BruteForceResult res;
  res.min_score = Score{dfs.best};
  res.witness = Assignment(lat);
  res.witness.colours = dfs.best_colours;
  res.nodes_explored = dfs.nodes;
  return res;
}

std::map<Dyadic, uint64_t> score_spectrum(const TileSet& ts, const SquareLattice& lat,
                                          uint64_t state_budget, int threads) {
  ScoringContext ctx(ts, lat);
  int n = lat.spin_count();
  int c = ts.colours.count;
  long double total_ld = 1;
  for (int i = 0; i < n; ++i) total_ld *= c;
  if (total_ld > static_cast<long double>(state_budget))
    throw StateSpaceTooLarge("state space too large for full spectrum enumeration");

  if (threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SIZEPHASE_THREADS")) hw = std::atoi(env);
    threads = std::max(1u, hw);
  }
  threads = std::min<uint64_t>(threads, c);

  auto order = column_major_order(lat);
  std::vector<int> rank_of_spin(n);
  for (int r = 0; r < n; ++r) rank_of_spin[order[r]] = r;
  std::vector<std::vector<int>> closing(n);
  for (size_t i = 0; i < ctx.sites().size(); ++i) {
    int last = -1;
    for (int spin : ctx.sites()[i].spins)
      if (spin >= 0) last = std::max(last, rank_of_spin[spin]);
    closing[last].push_back(static_cast<int>(i));
  }

  // Split on the first spin; per-thread partial histograms merge at the end,
  // so the result is independent of the schedule.
  std::vector<std::map<Dyadic, uint64_t>> partial(c);
  auto work = [&](int first) {
    std::vector<int> colours(n, 0);
    auto& hist = partial[first];
    // Recursive descent keeps partial sums per level so each leaf costs only
    // the sites closed by the final spins.
    auto descend = [&](auto&& self, int rank, Dyadic acc) -> void {
      if (rank == n) {
        hist[acc]++;
        return;
      }
      int spin = order[rank];
      int lo = rank == 0 ? first : 0;
      int hi = rank == 0 ? first + 1 : c;
      for (int col = lo; col < hi; ++col) {
        colours[spin] = col;
        Dyadic a = acc;
        for (int site : closing[rank]) a += ctx.site_score_fast(site, colours);
        self(self, rank + 1, a);
      }
    };
    descend(descend, 0, Dyadic(0));
  };
  if (threads == 1 || c == 1) {
    for (int f = 0; f < c; ++f) work(f);
  } else {
    std::vector<std::thread> pool;
    for (int f = 0; f < c; ++f) pool.emplace_back(work, f);
    for (auto& t : pool) t.join();
  }

  std::map<Dyadic, uint64_t> out;
  for (const auto& h : partial)
    for (const auto& [score, count] : h) out[score] += count;
  return out;
}

}  // namespace sizephase
