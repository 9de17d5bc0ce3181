#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "tsnet/errors.hpp"
#include "tsnet/graph.hpp"
#include "tsnet/partition.hpp"

namespace tsnet {

namespace detail {

/// Row i holds the distribution of a `length`-step random walk started at i (all zeros for an
/// isolated vertex).
inline std::vector<std::vector<double>> walk_distributions(const Graph& g, int length) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.degree(i) == 0) continue;
    auto& cur = rows[i];
    cur[i] = 1.0;
    for (int s = 0; s < length; ++s) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (cur[j] == 0.0) continue;
        const double share = cur[j] / static_cast<double>(g.degree(j));
        for (std::size_t k : g.neighbors(j)) next[k] += share;
      }
      cur.swap(next);
    }
  }
  return rows;
}

/// Squared degree-weighted distance sum_k (a_k - b_k)^2 / d(k).
inline double walk_distance_sq(const Graph& g, const std::vector<double>& a,
                               const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto d = g.degree(k);
    if (d == 0) continue;
    const double diff = a[k] - b[k];
    s += diff * diff / static_cast<double>(d);
  }
  return s;
}

}  // namespace detail

/// Distance r_ij between two vertices' walk distributions (0 when i and j share a neighborhood).
inline double walktrap_vertex_distance(const Graph& g, std::size_t i, std::size_t j,
                                       int walk_length = 4) {
  const auto rows = detail::walk_distributions(g, walk_length);
  return std::sqrt(detail::walk_distance_sq(g, rows[i], rows[j]));
}

/// Pons-Latapy Walktrap. Adjacent communities are merged in order of the smallest increase in the
/// mean squared walk distance to their community (Ward criterion); the dendrogram level with the
/// highest modularity is returned.
inline Partition walktrap(const Graph& g, int walk_length = 4) {
  if (walk_length < 1) throw ParameterError("walk length must be >= 1");
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) return Partition::singletons(n);

  auto prob = detail::walk_distributions(g, walk_length);
  std::vector<std::size_t> size(n, 1);
  std::vector<std::int64_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = static_cast<std::int64_t>(g.degree(v));
  const auto two_m = 2 * static_cast<std::int64_t>(g.edge_count());
  const double inv_n = 1.0 / static_cast<double>(n);

  struct Link {
    double delta = 0.0;
    std::int64_t edges = 0;
  };
  std::vector<std::map<std::size_t, Link>> links(n);
  std::set<std::tuple<double, std::size_t, std::size_t>> queue;

  auto delta_sigma = [&](std::size_t a, std::size_t b) {
    const double sa = static_cast<double>(size[a]), sb = static_cast<double>(size[b]);
    return inv_n * sa * sb / (sa + sb) * detail::walk_distance_sq(g, prob[a], prob[b]);
  };

  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : g.neighbors(u)) {
      if (u > v) continue;
      const double d = delta_sigma(u, v);
      links[u][v] = {d, 1};
      links[v][u] = {d, 1};
      queue.emplace(d, u, v);
    }
  }

  std::int64_t q = 0;
  for (std::size_t v = 0; v < n; ++v) q -= degree[v] * degree[v];
  std::int64_t best_q = q;
  std::size_t best_step = 0;
  std::vector<std::pair<std::size_t, std::size_t>> merges;

  while (!queue.empty()) {
    const auto [dab, a, b] = *queue.begin();
    queue.erase(queue.begin());
    const std::int64_t e_ab = links[a][b].edges;
    q += 2 * (two_m * e_ab - degree[a] * degree[b]);
    merges.emplace_back(a, b);
    if (q > best_q) {
      best_q = q;
      best_step = merges.size();
    }

    const double sa = static_cast<double>(size[a]), sb = static_cast<double>(size[b]);
    // Communities adjacent to both a and b get the Lance-Williams update; the rest are recomputed
    // from the merged walk distribution.
    std::map<std::size_t, Link> merged;
    std::set<std::size_t> direct;
    for (const auto& [c, l] : links[a]) {
      if (c == b) continue;
      merged[c] = l;
      direct.insert(c);
      queue.erase({l.delta, std::min(a, c), std::max(a, c)});
    }
    for (const auto& [c, l] : links[b]) {
      if (c == a) continue;
      queue.erase({l.delta, std::min(b, c), std::max(b, c)});
      auto it = merged.find(c);
      if (it == merged.end()) {
        merged[c] = l;
        direct.insert(c);
      } else {
        const double sc = static_cast<double>(size[c]);
        it->second.delta =
            ((sa + sc) * it->second.delta + (sb + sc) * l.delta - sc * dab) / (sa + sb + sc);
        it->second.edges += l.edges;
        direct.erase(c);
      }
    }
    for (const auto& [c, l] : links[a]) links[c].erase(a);
    for (const auto& [c, l] : links[b]) links[c].erase(b);
    links[a].clear();
    links[b].clear();

    for (std::size_t k = 0; k < n; ++k) prob[a][k] = (sa * prob[a][k] + sb * prob[b][k]) / (sa + sb);
    prob[b] = {};
    size[a] += size[b];
    degree[a] += degree[b];

    for (auto& [c, l] : merged) {
      if (direct.contains(c)) l.delta = delta_sigma(a, c);
      links[a][c] = l;
      links[c][a] = l;
      queue.emplace(l.delta, std::min(a, c), std::max(a, c));
    }
  }

  std::vector<std::size_t> parent(n);
  for (std::size_t v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t s = 0; s < best_step; ++s) parent[find(merges[s].second)] = find(merges[s].first);
  std::vector<int> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = static_cast<int>(find(v));
  return Partition(label);
}

}  // namespace tsnet
