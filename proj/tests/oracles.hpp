#pragma once
// Brute-force reference implementations used only by tests. Each one recomputes a quantity from its
// definition rather than from the library's algorithm.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

/// Minimum cost over every monotone warping path, by explicit path enumeration.
inline double dtw(const std::vector<double>& x, const std::vector<double>& y) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = x.size(), m = y.size();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j,
                                                                  double cost) {
    cost += std::abs(x[i] - y[j]);
    if (i == n - 1 && j == m - 1) {
      best = std::min(best, cost);
      return;
    }
    if (i + 1 < n) walk(i + 1, j, cost);
    if (j + 1 < m) walk(i, j + 1, cost);
    if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, cost);
  };
  walk(0, 0, 0.0);
  return best;
}

/// Number of monotone warping paths (Delannoy number), used to check the enumeration is complete.
inline std::size_t warping_path_count(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> c(n, std::vector<std::size_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == 0 || j == 0) {
        c[i][j] = 1;
        continue;
      }
      c[i][j] = c[i - 1][j] + c[i][j - 1] + c[i - 1][j - 1];
    }
  }
  return c[n - 1][m - 1];
}

/// Fraction of unordered pairs on which two labelings agree, by pair enumeration.
inline double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t agree = 0, total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      ++total;
      if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
    }
  }
  return static_cast<double>(agree) / static_cast<double>(total);
}

using Adjacency = std::vector<std::vector<int>>;

inline Adjacency adjacency(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Adjacency a(n, std::vector<int>(n, 0));
  for (auto [u, v] : edges) a[u][v] = a[v][u] = 1;
  return a;
}

/// Newman-Girvan Q summed over ordered vertex pairs straight from the definition.
inline double modularity(const Adjacency& a, const std::vector<int>& c) {
  const std::size_t n = a.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (c[i] != c[j]) continue;
      q += a[i][j] / two_m - k[i] * k[j] / (two_m * two_m);
    }
  }
  return q;
}

/// Calls f on every set partition of {0..n-1} as a restricted growth string.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> rgs(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_label) {
    if (i == n) {
      f(rgs);
      return;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
      rgs[i] = l;
      rec(i + 1, std::max(max_label, l));
    }
  };
  if (n == 0) return;
  rgs[0] = 0;
  rec(1, 0);
}

inline double max_modularity(const Adjacency& a) {
  double best = -1.0;
  for_each_partition(a.size(), [&](const std::vector<int>& c) { best = std::max(best, modularity(a, c)); });
  return best;
}

inline double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

/// Two-level map equation written as q H(Q) + sum_c p_c H(P_c) on degree-proportional visit rates.
inline double map_equation(const Adjacency& a, const std::vector<int>& c) {
  const std::size_t n = a.size();
  int modules = 0;
  for (int l : c) modules = std::max(modules, l + 1);
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  std::vector<double> exit(modules, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] && c[i] != c[j]) exit[c[i]] += 1.0 / two_m;
  double q = 0.0;
  for (double e : exit) q += e;
  double index_codebook = 0.0;
  if (q > 0.0)
    for (double e : exit) index_codebook += entropy_term(e / q);
  double total = q * index_codebook;
  for (int m = 0; m < modules; ++m) {
    double pc = exit[m];
    for (std::size_t i = 0; i < n; ++i)
      if (c[i] == m) pc += k[i] / two_m;
    if (pc <= 0.0) continue;
    double h = entropy_term(exit[m] / pc);
    for (std::size_t i = 0; i < n; ++i)
      if (c[i] == m) h += entropy_term(k[i] / two_m / pc);
    total += pc * h;
  }
  return total;
}

/// Periodogram (1/t)|sum_j s_j e^{-i 2 pi k j / t}|^2 for k = 1..floor(t/2), by direct summation.
inline std::vector<double> periodogram(const std::vector<double>& s) {
  const std::size_t t = s.size();
  std::vector<double> out;
  for (std::size_t k = 1; k <= t / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * j) / static_cast<double>(t);
      acc += s[j] * std::polar(1.0, angle);
    }
    out.push_back(std::norm(acc) / static_cast<double>(t));
  }
  return out;
}

inline double intper(const std::vector<double>& x, const std::vector<double>& y) {
  auto cum = [](const std::vector<double>& s) {
    auto p = periodogram(s);
    double total = 0.0;
    for (double v : p) total += v;
    double run = 0.0;
    for (double& v : p) {
      run += v;
      v = run / total;
    }
    return p;
  };
  const auto fx = cum(x), fy = cum(y);
  double d = 0.0;
  for (std::size_t k = 0; k < fx.size(); ++k) d += std::abs(fx[k] - fy[k]);
  return d;
}

using Matrix = std::vector<std::vector<double>>;

/// Single-linkage 2-cut: drop the heaviest edge of a Prim minimum spanning tree.
inline std::vector<int> mst_two_cut(const Matrix& d) {
  const std::size_t n = d.size();
  std::vector<bool> in(n, false);
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, n);
  key[0] = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> tree;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && (u == n || key[v] < key[u])) u = v;
    in[u] = true;
    if (parent[u] != n) tree.emplace_back(parent[u], u);
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && d[u][v] < key[v]) {
        key[v] = d[u][v];
        parent[v] = u;
      }
  }
  std::size_t heaviest = 0;
  for (std::size_t e = 1; e < tree.size(); ++e)
    if (d[tree[e].first][tree[e].second] > d[tree[heaviest].first][tree[heaviest].second]) heaviest = e;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e = 0; e < tree.size(); ++e) {
    if (e == heaviest) continue;
    adj[tree[e].first].push_back(tree[e].second);
    adj[tree[e].second].push_back(tree[e].first);
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : adj[u])
        if (label[v] < 0) {
          label[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  return label;
}

/// Agglomerative merge heights for n <= 7, recomputing every cluster distance from the members
/// (single/complete/average) or by a full-matrix Lance-Williams pass on squared distances
/// (median/centroid). Merges the lexicographically first minimal pair of cluster representatives.
struct Merge {
  std::set<std::size_t> a, b;
  double height;
};

inline std::vector<Merge> agglomerate(const Matrix& d, const std::string& linkage) {
  const std::size_t n = d.size();
  std::vector<std::set<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i});
  const bool squared = linkage == "median" || linkage == "centroid";
  Matrix lw(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lw[i][j] = squared ? d[i][j] * d[i][j] : d[i][j];

  auto between = [&](std::size_t x, std::size_t y) {
    if (squared) return lw[x][y];
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
    for (auto i : clusters[x])
      for (auto j : clusters[y]) {
        lo = std::min(lo, d[i][j]);
        hi = std::max(hi, d[i][j]);
        sum += d[i][j];
      }
    if (linkage == "single") return lo;
    if (linkage == "complete") return hi;
    return sum / static_cast<double>(clusters[x].size() * clusters[y].size());
  };

  std::vector<bool> alive(n, true);
  std::vector<Merge> merges;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bx = n, by = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (alive[x] && alive[y] && between(x, y) < best) {
          best = between(x, y);
          bx = x;
          by = y;
        }
    merges.push_back({clusters[bx], clusters[by], squared ? std::sqrt(best) : best});
    if (squared) {
      const double ni = static_cast<double>(clusters[bx].size()), nj = static_cast<double>(clusters[by].size());
      for (std::size_t k = 0; k < n; ++k) {
        if (!alive[k] || k == bx || k == by) continue;
        double v;
        if (linkage == "median") {
          v = 0.5 * lw[bx][k] + 0.5 * lw[by][k] - 0.25 * lw[bx][by];
        } else {
          v = ni / (ni + nj) * lw[bx][k] + nj / (ni + nj) * lw[by][k] -
              ni * nj / ((ni + nj) * (ni + nj)) * lw[bx][by];
        }
        lw[bx][k] = lw[k][bx] = v;
      }
    }
    clusters[bx].insert(clusters[by].begin(), clusters[by].end());
    alive[by] = false;
  }
  return merges;
}

/// Lowest total distance-to-nearest-medoid over every k-subset of points.
inline double pam_optimal_cost(const Matrix& d, std::size_t k) {
  const std::size_t n = d.size();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < n; ++m)
        if (pick[m]) nearest = std::min(nearest, d[i][m]);
      cost += nearest;
    }
    best = std::min(best, cost);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

/// Random symmetric matrix with zero diagonal and distinct positive entries (almost surely).
inline Matrix random_matrix(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.1, 10.0);
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = u(gen);
  return d;
}

inline std::vector<std::pair<std::size_t, std::size_t>> random_edges(std::size_t n, double p,
                                                                     std::mt19937_64& gen) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(gen)) e.emplace_back(i, j);
  return e;
}

/// Canonical relabeling (first appearance order), independent of the library's Partition.
inline std::vector<int> canonical(const std::vector<int>& labels) {
  std::vector<int> out(labels.size());
  std::vector<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](auto& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], static_cast<int>(seen.size()));
      out[i] = seen.back().second;
    } else {
      out[i] = it->second;
    }
  }
  return out;
}

}  // namespace oracle
