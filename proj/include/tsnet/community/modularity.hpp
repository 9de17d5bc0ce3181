#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tsnet/errors.hpp"
#include "tsnet/graph.hpp"
#include "tsnet/partition.hpp"

namespace tsnet {

/// Modularity scaled by (2m)^2: sum over communities of (4m L_c - D_c^2), with L_c the internal
/// edge count and D_c the degree sum. Integer, so greedy merges compare exactly.
inline std::int64_t scaled_modularity(const Graph& g, const Partition& p) {
  const auto m = static_cast<std::int64_t>(g.edge_count());
  std::vector<std::int64_t> internal(p.community_count(), 0), degree(p.community_count(), 0);
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    degree[p[u]] += static_cast<std::int64_t>(g.degree(u));
    for (std::size_t v : g.neighbors(u))
      if (u < v && p[u] == p[v]) ++internal[p[u]];
  }
  std::int64_t q = 0;
  for (std::size_t c = 0; c < internal.size(); ++c) q += 4 * m * internal[c] - degree[c] * degree[c];
  return q;
}

/// Newman-Girvan modularity. Undefined (throws) on a graph without edges.
inline double modularity(const Graph& g, const Partition& p) {
  if (p.size() != g.vertex_count()) throw InvalidInput("partition size does not match graph");
  if (g.edge_count() == 0) throw DegenerateInput("modularity is undefined for an edgeless graph");
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  return static_cast<double>(scaled_modularity(g, p)) / (two_m * two_m);
}

}  // namespace tsnet
