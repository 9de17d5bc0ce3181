#pragma once

#include <array>
#include <string>
#include <string_view>

#include "tsnet/community/fast_greedy.hpp"
#include "tsnet/community/infomap.hpp"
#include "tsnet/community/label_propagation.hpp"
#include "tsnet/community/modularity.hpp"
#include "tsnet/community/multilevel.hpp"
#include "tsnet/community/walktrap.hpp"
#include "tsnet/errors.hpp"

namespace tsnet {

enum class CommunityAlgorithm { FastGreedy, Multilevel, Walktrap, Infomap, LabelPropagation };

inline constexpr std::array<CommunityAlgorithm, 5> kAllCommunityAlgorithms = {
    CommunityAlgorithm::FastGreedy, CommunityAlgorithm::Multilevel, CommunityAlgorithm::Walktrap,
    CommunityAlgorithm::Infomap, CommunityAlgorithm::LabelPropagation};

inline std::string_view to_string(CommunityAlgorithm a) {
  switch (a) {
    case CommunityAlgorithm::FastGreedy: return "fg";
    case CommunityAlgorithm::Multilevel: return "ml";
    case CommunityAlgorithm::Walktrap: return "wt";
    case CommunityAlgorithm::Infomap: return "im";
    case CommunityAlgorithm::LabelPropagation: return "lp";
  }
  return "?";
}

/// Accepts the short names (fg, ml, wt, im, lp) and the long ones (fast_greedy, multilevel, ...).
inline bool try_parse_community_algorithm(std::string_view name, CommunityAlgorithm& out) {
  struct Alias {
    std::string_view name;
    CommunityAlgorithm algo;
  };
  static constexpr std::array<Alias, 10> aliases = {{
      {"fg", CommunityAlgorithm::FastGreedy},
      {"fast_greedy", CommunityAlgorithm::FastGreedy},
      {"ml", CommunityAlgorithm::Multilevel},
      {"multilevel", CommunityAlgorithm::Multilevel},
      {"wt", CommunityAlgorithm::Walktrap},
      {"walktrap", CommunityAlgorithm::Walktrap},
      {"im", CommunityAlgorithm::Infomap},
      {"infomap", CommunityAlgorithm::Infomap},
      {"lp", CommunityAlgorithm::LabelPropagation},
      {"label_propagation", CommunityAlgorithm::LabelPropagation},
  }};
  for (const auto& a : aliases) {
    if (a.name == name) {
      out = a.algo;
      return true;
    }
  }
  return false;
}

inline CommunityAlgorithm parse_community_algorithm(std::string_view name) {
  CommunityAlgorithm a{};
  if (!try_parse_community_algorithm(name, a)) {
    throw ParameterError("unknown community detection algorithm '" + std::string(name) + "'");
  }
  return a;
}

/// Walk length 4 for Walktrap and 10 trials for Infomap.
inline Partition detect(const Graph& g, CommunityAlgorithm algo, RngSeed seed = {}) {
  switch (algo) {
    case CommunityAlgorithm::FastGreedy: return fast_greedy(g);
    case CommunityAlgorithm::Multilevel: return multilevel(g, seed);
    case CommunityAlgorithm::Walktrap: return walktrap(g, 4);
    case CommunityAlgorithm::Infomap: return infomap(g, seed, 10);
    case CommunityAlgorithm::LabelPropagation: return label_propagation(g, seed);
  }
  throw ParameterError("unhandled community algorithm");
}

}  // namespace tsnet
