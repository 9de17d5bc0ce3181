#pragma once

#include <array>
#include <string>
#include <string_view>

#include "tsnet/baselines/agglomerative.hpp"
#include "tsnet/baselines/dendrogram.hpp"
#include "tsnet/baselines/diana.hpp"
#include "tsnet/baselines/pam.hpp"

namespace tsnet {

/// Rival clustering methods that work directly on a distance matrix.
enum class BaselineAlgorithm { Pam, Single, Complete, Average, Median, Centroid, Diana };

inline constexpr std::array<BaselineAlgorithm, 7> kAllBaselines = {
    BaselineAlgorithm::Pam,    BaselineAlgorithm::Single,   BaselineAlgorithm::Complete,
    BaselineAlgorithm::Average, BaselineAlgorithm::Median, BaselineAlgorithm::Centroid,
    BaselineAlgorithm::Diana};

inline std::string_view to_string(BaselineAlgorithm a) {
  switch (a) {
    case BaselineAlgorithm::Pam: return "pam";
    case BaselineAlgorithm::Single: return "single";
    case BaselineAlgorithm::Complete: return "complete";
    case BaselineAlgorithm::Average: return "average";
    case BaselineAlgorithm::Median: return "median";
    case BaselineAlgorithm::Centroid: return "centroid";
    case BaselineAlgorithm::Diana: return "diana";
  }
  return "?";
}

inline bool try_parse_baseline(std::string_view name, BaselineAlgorithm& out) {
  for (auto a : kAllBaselines) {
    if (to_string(a) == name) {
      out = a;
      return true;
    }
  }
  return false;
}

inline Linkage linkage_of(BaselineAlgorithm a) {
  switch (a) {
    case BaselineAlgorithm::Single: return Linkage::Single;
    case BaselineAlgorithm::Complete: return Linkage::Complete;
    case BaselineAlgorithm::Average: return Linkage::Average;
    case BaselineAlgorithm::Median: return Linkage::Median;
    case BaselineAlgorithm::Centroid: return Linkage::Centroid;
    default: throw ParameterError("'" + std::string(to_string(a)) + "' is not a linkage");
  }
}

/// Full hierarchy for the hierarchical baselines (not PAM).
inline Dendrogram hierarchy(const DistanceMatrix& d, BaselineAlgorithm a) {
  return a == BaselineAlgorithm::Diana ? diana(d) : agglomerative(d, linkage_of(a));
}

}  // namespace tsnet
