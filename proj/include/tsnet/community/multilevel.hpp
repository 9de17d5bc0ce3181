#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tsnet/community/weighted_graph.hpp"
#include "tsnet/graph.hpp"
#include "tsnet/partition.hpp"
#include "tsnet/rng.hpp"

namespace tsnet {

namespace detail {

/// One Louvain local-moving phase. Returns the community of every node (ids are node ids) and
/// whether any node moved. Gains are compared as 2m k_{a,C} - tot_C k_a, exact in integers.
inline bool louvain_local_moves(const WeightedGraph& g, Rng& rng, std::vector<int>& community) {
  const std::size_t n = g.size();
  const std::int64_t two_m = 2 * g.total_weight;
  community.resize(n);
  std::vector<std::int64_t> tot(n);
  for (std::size_t a = 0; a < n; ++a) {
    community[a] = static_cast<int>(a);
    tot[a] = g.degree[a];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));

  std::vector<std::int64_t> link(n, 0);
  std::vector<std::size_t> touched;
  bool any_move = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t a : order) {
      const auto own = static_cast<std::size_t>(community[a]);
      touched.clear();
      for (auto [b, w] : g.adj[a]) {
        const auto cb = static_cast<std::size_t>(community[b]);
        if (link[cb] == 0) touched.push_back(cb);
        link[cb] += w;
      }
      const std::int64_t k = g.degree[a];
      tot[own] -= k;
      const std::int64_t stay = two_m * link[own] - tot[own] * k;
      std::size_t target = own;
      std::int64_t target_gain = stay;
      bool found = false;
      for (std::size_t c : touched) {
        if (c == own) continue;
        const std::int64_t gain = two_m * link[c] - tot[c] * k;
        if (gain > stay && (!found || gain > target_gain || (gain == target_gain && c < target))) {
          target = c;
          target_gain = gain;
          found = true;
        }
      }
      for (std::size_t c : touched) link[c] = 0;
      tot[target] += k;
      if (target != own) {
        community[a] = static_cast<int>(target);
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

}  // namespace detail

/// Louvain method: seeded local moving followed by contraction, repeated until a level changes
/// nothing. Returns the top-level partition mapped back to the original vertices.
inline Partition multilevel(const Graph& g, RngSeed seed) {
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) return Partition::singletons(n);

  Rng rng(seed);
  auto level = detail::WeightedGraph::from(g);
  std::vector<int> membership(n);
  std::iota(membership.begin(), membership.end(), 0);
  std::vector<int> community;
  for (;;) {
    const bool moved = detail::louvain_local_moves(level, rng, community);
    const std::size_t count = detail::renumber(community);
    if (!moved || count == level.size()) break;
    for (int& c : membership) c = community[c];
    level = level.contract(community, count);
  }
  return Partition(membership);
}

}  // namespace tsnet
