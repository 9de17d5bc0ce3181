#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "tsnet/baselines/dendrogram.hpp"
#include "tsnet/distances.hpp"
#include "tsnet/errors.hpp"

namespace tsnet {

enum class Linkage { Single, Complete, Average, Median, Centroid };

inline constexpr std::array<Linkage, 5> kAllLinkages = {Linkage::Single, Linkage::Complete,
                                                        Linkage::Average, Linkage::Median,
                                                        Linkage::Centroid};

inline std::string_view to_string(Linkage l) {
  switch (l) {
    case Linkage::Single: return "single";
    case Linkage::Complete: return "complete";
    case Linkage::Average: return "average";
    case Linkage::Median: return "median";
    case Linkage::Centroid: return "centroid";
  }
  return "?";
}

/// Median and centroid linkage work on squared distances; heights are reported back as roots.
inline bool uses_squared_distances(Linkage l) {
  return l == Linkage::Median || l == Linkage::Centroid;
}

/// Lance-Williams update of d(i+j, k) from d(i,k), d(j,k), d(i,j) and cluster sizes.
inline double lance_williams(Linkage l, double dik, double djk, double dij, double ni, double nj) {
  switch (l) {
    case Linkage::Single: return 0.5 * dik + 0.5 * djk - 0.5 * std::abs(dik - djk);
    case Linkage::Complete: return 0.5 * dik + 0.5 * djk + 0.5 * std::abs(dik - djk);
    case Linkage::Average: return (ni * dik + nj * djk) / (ni + nj);
    case Linkage::Median: return 0.5 * dik + 0.5 * djk - 0.25 * dij;
    case Linkage::Centroid:
      return (ni * dik + nj * djk) / (ni + nj) - ni * nj * dij / ((ni + nj) * (ni + nj));
  }
  return 0.0;
}

/// Agglomerative clustering by the Lance-Williams recurrence. Each step merges the closest pair
/// of active clusters (ties: smallest slot pair), the merged cluster keeping the lower slot.
inline Dendrogram agglomerative(const DistanceMatrix& d, Linkage linkage) {
  const std::size_t n = d.size();
  if (n < 2) throw InvalidInput("agglomerative clustering needs n >= 2");
  const bool squared = uses_squared_distances(linkage);
  std::vector<double> w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = squared ? d(i, j) * d(i, j) : d(i, j);
  std::vector<bool> active(n, true);
  std::vector<double> count(n, 1.0);
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;

  Dendrogram out;
  out.leaves = n;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j] && w[i * n + j] < best) {
          best = w[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    const double height = squared ? std::sqrt(std::max(0.0, best)) : best;
    out.merges.push_back({id[bi], id[bj], height});
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double v =
          lance_williams(linkage, w[bi * n + k], w[bj * n + k], best, count[bi], count[bj]);
      w[bi * n + k] = w[k * n + bi] = v;
    }
    count[bi] += count[bj];
    active[bj] = false;
    id[bi] = n + step;
  }
  return out;
}

}  // namespace tsnet
