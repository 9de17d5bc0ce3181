#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "tsnet/graph.hpp"
#include "tsnet/partition.hpp"
#include "tsnet/rng.hpp"

namespace tsnet {

struct LabelPropagationResult {
  Partition partition;
  bool converged = false;
  std::size_t sweeps = 0;
};

inline constexpr std::size_t kLabelPropagationMaxSweeps = 1000;

namespace detail {

/// Labels carried by the most neighbors of v, ascending.
inline void majority_labels(const Graph& g, std::size_t v, const std::vector<int>& label,
                            std::vector<int>& count, std::vector<int>& out) {
  out.clear();
  int top = 0;
  for (std::size_t u : g.neighbors(v)) top = std::max(top, ++count[label[u]]);
  for (std::size_t u : g.neighbors(v)) {
    if (count[label[u]] == top) {
      out.push_back(label[u]);
      count[label[u]] = -1;  // collect once
    }
  }
  for (std::size_t u : g.neighbors(v)) count[label[u]] = 0;
  std::sort(out.begin(), out.end());
}

}  // namespace detail

/// Raghavan-Albert-Kumara label propagation with asynchronous updates in seeded random order.
/// Ties among majority labels are broken uniformly at random. Stops once every vertex holds one of
/// its neighborhood's majority labels, or after `max_sweeps`.
inline LabelPropagationResult label_propagation_run(const Graph& g, RngSeed seed,
                                                    std::size_t max_sweeps =
                                                        kLabelPropagationMaxSweeps) {
  const std::size_t n = g.vertex_count();
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  if (g.edge_count() == 0) return {Partition(label), true, 0};

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<int> count(n, 0), ties;
  LabelPropagationResult result;
  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t v : order) {
      if (g.degree(v) == 0) continue;
      detail::majority_labels(g, v, label, count, ties);
      const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(ties.size()) - 1);
      label[v] = ties[static_cast<std::size_t>(pick)];
    }
    bool stable = true;
    for (std::size_t v = 0; v < n && stable; ++v) {
      if (g.degree(v) == 0) continue;
      detail::majority_labels(g, v, label, count, ties);
      stable = std::binary_search(ties.begin(), ties.end(), label[v]);
    }
    result.sweeps = sweep;
    if (stable) {
      result.converged = true;
      break;
    }
  }
  result.partition = Partition(label);
  return result;
}

inline Partition label_propagation(const Graph& g, RngSeed seed) {
  return label_propagation_run(g, seed).partition;
}

}  // namespace tsnet
