#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tsnet/baselines/baselines.hpp"
#include "tsnet/community/detect.hpp"
#include "tsnet/detail/parallel.hpp"
#include "tsnet/distances.hpp"
#include "tsnet/errors.hpp"
#include "tsnet/graph.hpp"
#include "tsnet/partition.hpp"
#include "tsnet/rng.hpp"

namespace tsnet {

/// (TP + TN) / (n(n-1)/2), from the contingency table.
inline double rand_index(const Partition& p, const Partition& truth) {
  if (p.size() != truth.size()) throw InvalidInput("rand index: partitions differ in size");
  const std::size_t n = p.size();
  if (n < 2) throw InvalidInput("rand index needs n >= 2");
  auto pairs = [](std::uint64_t c) { return c * (c - 1) / 2; };
  std::map<std::pair<int, int>, std::uint64_t> joint;
  for (std::size_t v = 0; v < n; ++v) ++joint[{p[v], truth[v]}];
  std::uint64_t same_both = 0;
  for (const auto& [key, c] : joint) same_both += pairs(c);
  std::uint64_t same_p = 0, same_t = 0;
  for (auto c : p.community_sizes()) same_p += pairs(c);
  for (auto c : truth.community_sizes()) same_t += pairs(c);
  const std::uint64_t total = pairs(n);
  // TN = total - same_p - same_t + same_both
  const std::uint64_t agree = same_both + (total - same_p - same_t + same_both);
  return static_cast<double>(agree) / static_cast<double>(total);
}

struct SweepRecord {
  double param = 0.0;  // k, epsilon, or number of clusters for baselines
  Partition partition;
  std::size_t communities = 0;
  double rand_index = 0.0;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // ascending parameter
  std::size_t best = 0;              // max RI, smallest parameter on ties

  [[nodiscard]] const SweepRecord& best_record() const { return records.at(best); }
};

inline constexpr std::size_t kEpsSteps = 100;

namespace detail {

inline SweepResult finish_sweep(std::vector<SweepRecord> records) {
  SweepResult r;
  r.records = std::move(records);
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    if (r.records[i].rand_index > r.records[r.best].rand_index) r.best = i;
  }
  return r;
}

}  // namespace detail

/// The epsilon grid: min+(D) + j (max(D) - min+(D)) / 100 for j = 0..100, where min+ is the smallest
/// off-diagonal distance. The last point is max(D) exactly. A zero range gives one point.
inline std::vector<double> eps_grid(const DistanceMatrix& d) {
  const double lo = d.min_off_diagonal();
  const double hi = d.max_value();
  if (!(hi > lo)) return {lo};
  std::vector<double> grid(kEpsSteps + 1);
  const double step = (hi - lo) / static_cast<double>(kEpsSteps);
  for (std::size_t j = 0; j < kEpsSteps; ++j) grid[j] = lo + static_cast<double>(j) * step;
  grid[kEpsSteps] = hi;
  return grid;
}

/// Per-point seed so randomized algorithms are reproducible yet decorrelated across the sweep.
inline RngSeed point_seed(RngSeed base, std::size_t index) { return derive_seed(base, index); }

/// Seed for one (dataset, measure, algorithm) combination.
inline RngSeed experiment_seed(std::uint64_t user_seed, const std::string& dataset,
                               const std::string& measure, const std::string& algorithm) {
  return {splitmix64(user_seed ^ fnv1a(dataset + "|" + measure + "|" + algorithm))};
}

/// k-NN sweep, k = 1..n-1.
inline SweepResult sweep_k(const DistanceMatrix& d, CommunityAlgorithm algo, RngSeed seed,
                           const Partition& truth, unsigned jobs = 1) {
  const std::size_t n = d.size();
  if (truth.size() != n) throw InvalidInput("sweep: label count does not match matrix size");
  std::vector<SweepRecord> records(n - 1);
  detail::parallel_for(n - 1, jobs, [&](std::size_t i) {
    const std::size_t k = i + 1;
    try {
      auto p = detect(knn_graph(d, k), algo, point_seed(seed, i));
      const double ri = rand_index(p, truth);
      const auto c = p.community_count();
      records[i] = {static_cast<double>(k), std::move(p), c, ri};
    } catch (const Error& e) {
      throw Error("k=" + std::to_string(k) + ": " + e.what());
    }
  });
  return detail::finish_sweep(std::move(records));
}

/// epsilon-NN sweep over eps_grid(d).
inline SweepResult sweep_eps(const DistanceMatrix& d, CommunityAlgorithm algo, RngSeed seed,
                             const Partition& truth, unsigned jobs = 1) {
  if (truth.size() != d.size()) throw InvalidInput("sweep: label count does not match matrix size");
  const auto grid = eps_grid(d);
  std::vector<SweepRecord> records(grid.size());
  detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    try {
      auto p = detect(eps_graph(d, grid[i]), algo, point_seed(seed, i));
      const double ri = rand_index(p, truth);
      const auto c = p.community_count();
      records[i] = {grid[i], std::move(p), c, ri};
    } catch (const Error& e) {
      throw Error("eps=" + std::to_string(grid[i]) + ": " + e.what());
    }
  });
  return detail::finish_sweep(std::move(records));
}

inline constexpr std::size_t kPamMaxClusters = 50;

/// Rival methods under the same best-RI protocol: hierarchical baselines are cut at every
/// k = 1..n, PAM runs for k = 1..min(n, 50).
inline SweepResult sweep_baseline(const DistanceMatrix& d, BaselineAlgorithm algo,
                                  const Partition& truth, unsigned jobs = 1) {
  const std::size_t n = d.size();
  if (truth.size() != n) throw InvalidInput("sweep: label count does not match matrix size");
  std::optional<Dendrogram> tree;
  std::size_t kmax = n;
  if (algo == BaselineAlgorithm::Pam) {
    kmax = std::min(n, kPamMaxClusters);
  } else {
    tree = hierarchy(d, algo);
  }
  std::vector<SweepRecord> records(kmax);
  detail::parallel_for(kmax, jobs, [&](std::size_t i) {
    const std::size_t k = i + 1;
    auto p = tree ? cut(*tree, k) : pam(d, k);
    const double ri = rand_index(p, truth);
    const auto c = p.community_count();
    records[i] = {static_cast<double>(k), std::move(p), c, ri};
  });
  return detail::finish_sweep(std::move(records));
}

struct SummaryRow {
  std::string measure, method, algorithm;
  std::size_t count = 0;
  double median = 0.0, mean = 0.0, std = 0.0;
  bool degenerate = false;  // fewer than two values, std reported as 0
};

struct BestResult {
  std::string dataset, measure, method, algorithm;
  double rand_index = 0.0;
};

/// Median, mean and sample standard deviation of best RIs per (measure, method, algorithm).
inline std::vector<SummaryRow> summarize(const std::vector<BestResult>& results) {
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> groups;
  for (const auto& r : results) groups[{r.measure, r.method, r.algorithm}].push_back(r.rand_index);
  std::vector<SummaryRow> out;
  for (auto& [key, v] : groups) {
    if (v.empty()) continue;
    SummaryRow row;
    std::tie(row.measure, row.method, row.algorithm) = key;
    row.count = v.size();
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    row.median = v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2.0;
    double s = 0.0;
    for (double x : v) s += x;
    row.mean = s / static_cast<double>(v.size());
    if (v.size() < 2) {
      row.degenerate = true;
    } else {
      double ss = 0.0;
      for (double x : v) ss += (x - row.mean) * (x - row.mean);
      row.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace tsnet
