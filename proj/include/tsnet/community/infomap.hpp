#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tsnet/community/weighted_graph.hpp"
#include "tsnet/errors.hpp"
#include "tsnet/graph.hpp"
#include "tsnet/partition.hpp"
#include "tsnet/rng.hpp"

namespace tsnet {

namespace detail {

inline double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

/// Map-equation bookkeeping in integer edge-weight units; flows are weights / 2m.
struct MapState {
  double inv_two_m = 0.0;
  std::vector<std::int64_t> exit;  // per module, boundary weight
  std::vector<std::int64_t> flow;  // per module, degree sum
  std::int64_t total_exit = 0;

  [[nodiscard]] double term(std::int64_t e, std::int64_t f) const {
    return -2.0 * plogp(static_cast<double>(e) * inv_two_m) +
           plogp(static_cast<double>(e + f) * inv_two_m);
  }
};

/// Seeded local moving on the map equation; returns whether any node moved.
inline bool infomap_local_moves(const WeightedGraph& g, Rng& rng, std::vector<int>& module) {
  const std::size_t n = g.size();
  MapState s;
  s.inv_two_m = 1.0 / static_cast<double>(2 * g.total_weight);
  s.exit.resize(n);
  s.flow.resize(n);
  module.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    module[a] = static_cast<int>(a);
    s.exit[a] = g.external_degree(a);
    s.flow[a] = g.degree[a];
    s.total_exit += s.exit[a];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));

  std::vector<std::int64_t> link(n, 0);
  std::vector<std::size_t> touched;
  bool any_move = false;
  constexpr double kMinImprovement = 1e-12;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t a : order) {
      const auto own = static_cast<std::size_t>(module[a]);
      touched.clear();
      for (auto [b, w] : g.adj[a]) {
        const auto mb = static_cast<std::size_t>(module[b]);
        if (link[mb] == 0) touched.push_back(mb);
        link[mb] += w;
      }
      const std::int64_t ext = g.external_degree(a);
      const std::int64_t k = g.degree[a];
      const std::int64_t own_exit = s.exit[own] - ext + 2 * link[own];
      const std::int64_t own_flow = s.flow[own] - k;
      const double base_exit_term = plogp(static_cast<double>(s.total_exit) * s.inv_two_m);

      std::size_t target = own;
      double target_delta = -kMinImprovement;
      std::int64_t target_exit = 0;
      for (std::size_t m : touched) {
        if (m == own) continue;
        const std::int64_t new_exit = s.exit[m] + ext - 2 * link[m];
        const std::int64_t total = s.total_exit - s.exit[own] - s.exit[m] + own_exit + new_exit;
        const double delta = plogp(static_cast<double>(total) * s.inv_two_m) - base_exit_term +
                             s.term(own_exit, own_flow) + s.term(new_exit, s.flow[m] + k) -
                             s.term(s.exit[own], s.flow[own]) - s.term(s.exit[m], s.flow[m]);
        if (delta < target_delta || (target != own && delta == target_delta && m < target)) {
          target = m;
          target_delta = delta;
          target_exit = new_exit;
        }
      }
      if (target != own) {
        s.total_exit += own_exit + target_exit - s.exit[own] - s.exit[target];
        s.exit[own] = own_exit;
        s.flow[own] = own_flow;
        s.exit[target] = target_exit;
        s.flow[target] += k;
        module[a] = static_cast<int>(target);
        moved = true;
        any_move = true;
      }
      for (std::size_t m : touched) link[m] = 0;
    }
  }
  return any_move;
}

inline Partition infomap_trial(const Graph& g, RngSeed seed) {
  const std::size_t n = g.vertex_count();
  Rng rng(seed);
  auto level = WeightedGraph::from(g);
  std::vector<int> membership(n);
  std::iota(membership.begin(), membership.end(), 0);
  std::vector<int> module;
  for (;;) {
    const bool moved = infomap_local_moves(level, rng, module);
    const std::size_t count = renumber(module);
    if (!moved || count == level.size()) break;
    for (int& c : membership) c = module[c];
    level = level.contract(module, count);
  }
  return Partition(membership);
}

}  // namespace detail

/// Two-level map equation L(M) = q H(Q) + sum_i p_i H(P_i) in bits, for the stationary random walk
/// on an undirected graph (visit rates proportional to degree).
inline double map_equation(const Graph& g, const Partition& p) {
  if (p.size() != g.vertex_count()) throw InvalidInput("partition size does not match graph");
  if (g.edge_count() == 0) throw DegenerateInput("map equation undefined for an edgeless graph");
  using detail::plogp;
  const double inv_two_m = 1.0 / (2.0 * static_cast<double>(g.edge_count()));
  std::vector<double> exit(p.community_count(), 0.0), flow(p.community_count(), 0.0);
  double node_entropy_term = 0.0;
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    const double pu = static_cast<double>(g.degree(u)) * inv_two_m;
    flow[p[u]] += pu;
    node_entropy_term += plogp(pu);
    for (std::size_t v : g.neighbors(u))
      if (p[u] != p[v]) exit[p[u]] += inv_two_m;
  }
  double q = 0.0, exit_terms = 0.0, module_terms = 0.0;
  for (std::size_t c = 0; c < exit.size(); ++c) {
    q += exit[c];
    exit_terms += plogp(exit[c]);
    module_terms += plogp(exit[c] + flow[c]);
  }
  return plogp(q) - 2.0 * exit_terms - node_entropy_term + module_terms;
}

struct InfomapResult {
  Partition partition;
  double codelength = 0.0;
};

/// Two-level Infomap: Louvain-style moves and contraction on the map equation, repeated for
/// `trials` seeded restarts. The shortest code wins (ties: fewer modules, then canonical labels).
/// The singleton partition and the one-module-per-component partition are always among the
/// candidates.
inline InfomapResult infomap_run(const Graph& g, RngSeed seed, int trials = 10) {
  if (trials < 1) throw ParameterError("infomap needs at least one trial");
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) return {Partition::singletons(n), 0.0};

  std::vector<Partition> candidates;
  for (int t = 0; t < trials; ++t) {
    candidates.push_back(detail::infomap_trial(g, derive_seed(seed, static_cast<std::uint64_t>(t))));
  }
  candidates.push_back(Partition::singletons(n));
  candidates.push_back(components(g));

  InfomapResult best{candidates.front(), map_equation(g, candidates.front())};
  constexpr double kTie = 1e-12;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double l = map_equation(g, candidates[i]);
    const auto& p = candidates[i];
    const bool shorter = l < best.codelength - kTie;
    const bool tie = std::abs(l - best.codelength) <= kTie;
    const auto pc = p.community_count(), bc = best.partition.community_count();
    if (shorter || (tie && (pc < bc || (pc == bc && p.labels() < best.partition.labels())))) {
      best = {p, l};
    }
  }
  return best;
}

inline Partition infomap(const Graph& g, RngSeed seed, int trials = 10) {
  return infomap_run(g, seed, trials).partition;
}

}  // namespace tsnet
