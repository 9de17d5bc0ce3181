#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "tsnet/community/modularity.hpp"
#include "tsnet/graph.hpp"
#include "tsnet/partition.hpp"

namespace tsnet {

/// Clauset-Newman-Moore greedy agglomeration.
///
/// Starting from singletons, merges the pair of connected communities whose union raises
/// modularity the most (exact integer comparison of 2m E_ij - D_i D_j; ties go to the
/// lexicographically smallest pair) until no connected pair remains. The partition with the highest
/// modularity along the way is returned, the earliest one on ties.
inline Partition fast_greedy(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) return Partition::singletons(n);

  const auto two_m = 2 * static_cast<std::int64_t>(g.edge_count());
  std::vector<std::map<std::size_t, std::int64_t>> links(n);  // community -> shared edge count
  std::vector<std::int64_t> degree(n);
  std::vector<bool> active(n, true);
  for (std::size_t u = 0; u < n; ++u) {
    degree[u] = static_cast<std::int64_t>(g.degree(u));
    for (std::size_t v : g.neighbors(u)) links[u][v] = 1;
  }

  struct Best {
    std::int64_t key = 0;
    std::size_t other = 0;
    bool valid = false;
  };
  auto key = [&](std::size_t i, std::size_t j, std::int64_t e) {
    return two_m * e - degree[i] * degree[j];
  };
  auto better = [](std::int64_t k, std::size_t j, const Best& b) {
    return !b.valid || k > b.key || (k == b.key && j < b.other);
  };
  std::vector<Best> best(n);
  auto recompute = [&](std::size_t i) {
    best[i] = Best{};
    for (auto [j, e] : links[i]) {
      const auto k = key(i, j, e);
      if (better(k, j, best[i])) best[i] = {k, j, true};
    }
  };
  for (std::size_t i = 0; i < n; ++i) recompute(i);

  std::int64_t q = 0;
  for (std::size_t u = 0; u < n; ++u) q -= degree[u] * degree[u];
  std::int64_t best_q = q;
  std::size_t best_step = 0;
  std::vector<std::pair<std::size_t, std::size_t>> merges;

  for (;;) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || !best[i].valid) continue;
      if (pick == n) {
        pick = i;
        continue;
      }
      const Best& b = best[i];
      const Best& p = best[pick];
      const auto lo_b = std::min(i, b.other), hi_b = std::max(i, b.other);
      const auto lo_p = std::min(pick, p.other), hi_p = std::max(pick, p.other);
      if (b.key > p.key || (b.key == p.key && std::pair(lo_b, hi_b) < std::pair(lo_p, hi_p))) {
        pick = i;
      }
    }
    if (pick == n) break;

    const std::size_t a = std::min(pick, best[pick].other);
    const std::size_t b = std::max(pick, best[pick].other);
    q += 2 * best[pick].key;
    merges.emplace_back(a, b);
    if (q > best_q) {
      best_q = q;
      best_step = merges.size();
    }

    // fold b into a
    for (auto [c, e] : links[b]) {
      if (c == a) continue;
      links[a][c] += e;
      links[c][a] += e;
      links[c].erase(b);
    }
    links[a].erase(b);
    links[b].clear();
    degree[a] += degree[b];
    active[b] = false;
    best[b] = Best{};

    recompute(a);
    for (auto [c, e] : links[a]) {
      if (best[c].other == a || best[c].other == b) {
        recompute(c);
      } else {
        const auto k = key(c, a, e);
        if (better(k, a, best[c])) best[c] = {k, a, true};
      }
    }
  }

  std::vector<int> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = static_cast<int>(v);
  // replay merges on a union-find to the best step
  std::vector<std::size_t> parent(n);
  for (std::size_t v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t s = 0; s < best_step; ++s) parent[find(merges[s].second)] = find(merges[s].first);
  for (std::size_t v = 0; v < n; ++v) label[v] = static_cast<int>(find(v));
  return Partition(label);
}

}  // namespace tsnet
