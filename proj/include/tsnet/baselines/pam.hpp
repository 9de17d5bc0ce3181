#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tsnet/distances.hpp"
#include "tsnet/errors.hpp"
#include "tsnet/partition.hpp"

namespace tsnet {

struct PamResult {
  Partition partition;
  std::vector<std::size_t> medoids;  // ascending
  double cost = 0.0;                 // sum of distances to the assigned medoid
  double build_cost = 0.0;           // same, right after BUILD
};

namespace detail {

inline double medoid_cost(const DistanceMatrix& d, const std::vector<std::size_t>& medoids) {
  double c = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m : medoids) best = std::min(best, d(j, m));
    c += best;
  }
  return c;
}

}  // namespace detail

/// Partitioning Around Medoids with the deterministic BUILD start and steepest-descent SWAP.
inline PamResult pam_run(const DistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.size();
  if (k < 1 || k > n) {
    throw ParameterError("PAM needs 1 <= k <= " + std::to_string(n) + ", got " + std::to_string(k));
  }
  std::vector<bool> is_medoid(n, false);
  std::vector<std::size_t> medoids;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

  // BUILD
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = n;
    double pick_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (is_medoid[i]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        gain += step == 0 ? -d(j, i) : std::max(nearest[j] - d(j, i), 0.0);
      }
      if (gain > pick_gain) {
        pick_gain = gain;
        pick = i;
      }
    }
    is_medoid[pick] = true;
    medoids.push_back(pick);
    for (std::size_t j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], d(j, pick));
  }
  PamResult r;
  r.build_cost = detail::medoid_cost(d, medoids);
  double cost = r.build_cost;

  // SWAP
  std::vector<double> second(n);
  std::vector<std::size_t> owner(n);
  for (;;) {
    for (std::size_t j = 0; j < n; ++j) {
      double b1 = std::numeric_limits<double>::infinity(), b2 = b1;
      std::size_t o = 0;
      for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
        const double v = d(j, medoids[mi]);
        if (v < b1) {
          b2 = b1;
          b1 = v;
          o = mi;
        } else if (v < b2) {
          b2 = v;
        }
      }
      nearest[j] = b1;
      second[j] = b2;
      owner[j] = o;
    }
    double best_delta = 0.0;
    std::size_t best_m = 0, best_h = n;
    for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
      for (std::size_t h = 0; h < n; ++h) {
        if (is_medoid[h]) continue;
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double dh = d(j, h);
          delta += owner[j] == mi ? std::min(second[j], dh) - nearest[j]
                                  : std::min(nearest[j], dh) - nearest[j];
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_m = mi;
          best_h = h;
        }
      }
    }
    if (best_h == n || best_delta > -1e-12 * std::max(1.0, cost)) break;
    is_medoid[medoids[best_m]] = false;
    is_medoid[best_h] = true;
    medoids[best_m] = best_h;
    cost = detail::medoid_cost(d, medoids);
  }

  std::sort(medoids.begin(), medoids.end());
  std::vector<int> label(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = 0;
    for (std::size_t mi = 1; mi < medoids.size(); ++mi)
      if (d(j, medoids[mi]) < d(j, medoids[best])) best = mi;
    label[j] = static_cast<int>(best);
  }
  for (std::size_t mi = 0; mi < medoids.size(); ++mi) label[medoids[mi]] = static_cast<int>(mi);
  r.partition = Partition(label);
  r.medoids = medoids;
  r.cost = detail::medoid_cost(d, medoids);
  return r;
}

inline Partition pam(const DistanceMatrix& d, std::size_t k) { return pam_run(d, k).partition; }

}  // namespace tsnet
