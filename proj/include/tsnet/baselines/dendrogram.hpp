#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "tsnet/errors.hpp"
#include "tsnet/partition.hpp"

namespace tsnet {

/// Binary merge tree over n leaves. Leaves have ids 0..n-1; merge s creates cluster n+s.
struct Dendrogram {
  struct Merge {
    std::size_t a = 0;
    std::size_t b = 0;
    double height = 0.0;
  };

  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Exactly k clusters: undoes the last k-1 merges.
inline Partition cut(const Dendrogram& d, std::size_t k) {
  const std::size_t n = d.leaves;
  if (k < 1 || k > n) {
    throw ParameterError("cut needs 1 <= k <= " + std::to_string(n) + ", got " + std::to_string(k));
  }
  if (d.merges.size() + 1 != n) throw InvalidInput("dendrogram must hold n-1 merges");
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t s = 0; s < n - k; ++s) {
    const auto& m = d.merges[s];
    parent[find(m.a)] = n + s;
    parent[find(m.b)] = n + s;
  }
  std::vector<int> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = static_cast<int>(find(v));
  return Partition(label);
}

}  // namespace tsnet
