#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "tsnet/graph.hpp"

namespace tsnet::detail {

/// Integer-weighted graph used by the multilevel optimizers after contraction. `self_loop[a]` is
/// the weight of edges internal to super-node a, each counted once; `degree[a]` counts it twice,
/// like any loop.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adj;  // no self entries
  std::vector<std::int64_t> self_loop;
  std::vector<std::int64_t> degree;
  std::int64_t total_weight = 0;  // m

  [[nodiscard]] std::size_t size() const noexcept { return adj.size(); }

  static WeightedGraph from(const Graph& g) {
    WeightedGraph w;
    const std::size_t n = g.vertex_count();
    w.adj.resize(n);
    w.self_loop.assign(n, 0);
    w.degree.assign(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v : g.neighbors(u)) w.adj[u].emplace_back(v, 1);
      w.degree[u] = static_cast<std::int64_t>(g.degree(u));
    }
    w.total_weight = static_cast<std::int64_t>(g.edge_count());
    return w;
  }

  /// External degree: weight of edges leaving the node.
  [[nodiscard]] std::int64_t external_degree(std::size_t a) const noexcept {
    return degree[a] - 2 * self_loop[a];
  }

  /// Collapses each community (dense ids 0..c-1) into one node.
  [[nodiscard]] WeightedGraph contract(const std::vector<int>& community, std::size_t count) const {
    WeightedGraph out;
    out.adj.resize(count);
    out.self_loop.assign(count, 0);
    out.degree.assign(count, 0);
    out.total_weight = total_weight;
    std::vector<std::int64_t> acc(count, 0);
    std::vector<std::size_t> touched;
    std::vector<std::vector<std::size_t>> members(count);
    for (std::size_t a = 0; a < size(); ++a) members[community[a]].push_back(a);
    for (std::size_t c = 0; c < count; ++c) {
      touched.clear();
      for (std::size_t a : members[c]) {
        out.self_loop[c] += self_loop[a];
        out.degree[c] += degree[a];
        for (auto [b, w] : adj[a]) {
          const auto cb = static_cast<std::size_t>(community[b]);
          if (cb == c) {
            if (a < b) out.self_loop[c] += w;
            continue;
          }
          if (acc[cb] == 0) touched.push_back(cb);
          acc[cb] += w;
        }
      }
      std::sort(touched.begin(), touched.end());
      for (std::size_t cb : touched) {
        out.adj[c].emplace_back(cb, acc[cb]);
        acc[cb] = 0;
      }
    }
    return out;
  }
};

/// Relabels arbitrary community ids densely in order of first appearance.
inline std::size_t renumber(std::vector<int>& community) {
  std::vector<int> map(community.size(), -1);
  int next = 0;
  for (int& c : community) {
    if (map[c] < 0) map[c] = next++;
    c = map[c];
  }
  return static_cast<std::size_t>(next);
}

}  // namespace tsnet::detail
