#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tsnet/distances.hpp"
#include "tsnet/errors.hpp"
#include "tsnet/partition.hpp"

namespace tsnet {

/// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  /// Builds from an edge list; self-loops are rejected and duplicates collapsed.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw InvalidInput("edge endpoint out of range");
      if (u == v) throw InvalidInput("self-loops are not allowed");
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    g.finalize();
    return g;
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept { return adj_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return m_; }
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t v) const noexcept {
    return adj_[v];
  }
  [[nodiscard]] std::size_t degree(std::size_t v) const noexcept { return adj_[v].size(); }

  [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  /// Edges (u, v) with u < v in ascending order.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (std::size_t v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph knn_graph(const DistanceMatrix&, std::size_t);
  friend Graph eps_graph(const DistanceMatrix&, double);

  void finalize() {
    m_ = 0;
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      m_ += a.size();
    }
    m_ /= 2;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::size_t m_ = 0;
};

/// How a distance matrix becomes a graph.
struct GraphMethod {
  enum class Kind { KNN, EpsNN };
  Kind kind = Kind::KNN;
  std::size_t k = 1;
  double eps = 0.0;

  static GraphMethod knn(std::size_t k) { return {Kind::KNN, k, 0.0}; }
  static GraphMethod eps_nn(double eps) { return {Kind::EpsNN, 0, eps}; }
};

/// Each vertex links to its k nearest others (ties by lower index); edges are the union of picks.
inline Graph knn_graph(const DistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.size();
  if (k < 1 || k + 1 > n) {
    throw ParameterError("k must lie in [1, " + std::to_string(n - 1) + "], got " +
                         std::to_string(k));
  }
  Graph g(n);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    const auto row = d.row(i);
    auto closer = [&](std::size_t a, std::size_t b) {
      return row[a] < row[b] || (row[a] == row[b] && a < b);
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      closer);
    for (std::size_t r = 0; r < k; ++r) {
      g.adj_[i].push_back(order[r]);
      g.adj_[order[r]].push_back(i);
    }
  }
  g.finalize();
  return g;
}

/// Edge {i, j} whenever d_ij <= eps.
inline Graph eps_graph(const DistanceMatrix& d, double eps) {
  const std::size_t n = d.size();
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = d.row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && row[j] <= eps) g.adj_[i].push_back(j);
  }
  g.finalize();
  return g;
}

inline Graph build_graph(const DistanceMatrix& d, const GraphMethod& m) {
  return m.kind == GraphMethod::Kind::KNN ? knn_graph(d, m.k) : eps_graph(d, m.eps);
}

/// Connected components, numbered by smallest contained vertex.
inline Partition components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> label(n, -1);
  std::vector<std::size_t> stack;
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : g.neighbors(u)) {
        if (label[v] < 0) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return Partition(label);
}

/// `u v` per line, u < v, ascending.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

}  // namespace tsnet
