#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "tsnet/baselines/dendrogram.hpp"
#include "tsnet/distances.hpp"
#include "tsnet/errors.hpp"

namespace tsnet {

namespace detail {

inline double diameter(const DistanceMatrix& d, const std::vector<std::size_t>& c) {
  double m = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) m = std::max(m, d(c[i], c[j]));
  return m;
}

inline double mean_distance(const DistanceMatrix& d, std::size_t x,
                            const std::vector<std::size_t>& group) {
  double s = 0.0;
  std::size_t cnt = 0;
  for (std::size_t y : group) {
    if (y == x) continue;
    s += d(x, y);
    ++cnt;
  }
  return cnt == 0 ? 0.0 : s / static_cast<double>(cnt);
}

/// Splinter split of one cluster into (splinter, remainder).
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> diana_split(
    const DistanceMatrix& d, const std::vector<std::size_t>& cluster) {
  std::vector<std::size_t> rest = cluster;
  std::vector<std::size_t> splinter;
  std::size_t seed_pos = 0;
  double seed_score = -1.0;
  for (std::size_t p = 0; p < rest.size(); ++p) {
    const double s = mean_distance(d, rest[p], rest);
    if (s > seed_score) {
      seed_score = s;
      seed_pos = p;
    }
  }
  splinter.push_back(rest[seed_pos]);
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(seed_pos));
  while (rest.size() > 1) {
    std::size_t pick = rest.size();
    double pick_score = 0.0;
    for (std::size_t p = 0; p < rest.size(); ++p) {
      const double s = mean_distance(d, rest[p], rest) - mean_distance(d, rest[p], splinter);
      if (s > pick_score) {
        pick_score = s;
        pick = p;
      }
    }
    if (pick == rest.size()) break;
    splinter.push_back(rest[pick]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::sort(splinter.begin(), splinter.end());
  return {splinter, rest};
}

}  // namespace detail

/// Divisive analysis (Kaufman-Rousseeuw). The cluster with the largest diameter is split by
/// growing a splinter group from its most dissimilar object; splitting continues down to
/// singletons. The splits are returned as a bottom-up dendrogram whose merge heights are the
/// diameters of the split clusters, so cut(k) reproduces the first k-1 splits.
inline Dendrogram diana(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) throw InvalidInput("diana needs n >= 2");
  struct Split {
    std::vector<std::size_t> left, right;
    double height;
  };
  std::vector<std::vector<std::size_t>> clusters(1);
  for (std::size_t i = 0; i < n; ++i) clusters[0].push_back(i);
  std::vector<double> diam{detail::diameter(d, clusters[0])};
  std::vector<Split> splits;
  while (splits.size() + 1 < n) {
    std::size_t pick = clusters.size();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (clusters[c].size() < 2) continue;
      if (pick == clusters.size() || diam[c] > diam[pick] ||
          (diam[c] == diam[pick] && clusters[c].front() < clusters[pick].front())) {
        pick = c;
      }
    }
    auto [left, right] = detail::diana_split(d, clusters[pick]);
    splits.push_back({left, right, diam[pick]});
    clusters[pick] = left;
    diam[pick] = detail::diameter(d, left);
    diam.push_back(detail::diameter(d, right));
    clusters.push_back(std::move(right));
  }

  Dendrogram out;
  out.leaves = n;
  std::map<std::vector<std::size_t>, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i) id[{i}] = i;
  for (auto it = splits.rbegin(); it != splits.rend(); ++it) {
    std::vector<std::size_t> joined = it->left;
    joined.insert(joined.end(), it->right.begin(), it->right.end());
    std::sort(joined.begin(), joined.end());
    out.merges.push_back({id.at(it->left), id.at(it->right), it->height});
    id[joined] = n + out.merges.size() - 1;
  }
  return out;
}

}  // namespace tsnet
