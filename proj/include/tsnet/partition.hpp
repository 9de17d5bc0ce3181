#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsnet/errors.hpp"

namespace tsnet {

/// Assignment of every vertex to a community id. Always kept canonical: ids are dense 0..c-1 and
/// numbered in order of each community's smallest member, so equal clusterings compare equal.
class Partition {
 public:
  Partition() = default;

  /// Any integer labels; they are canonicalized.
  explicit Partition(const std::vector<int>& labels) : labels_(canonical(labels)) {
    for (int v : labels_) count_ = std::max(count_, static_cast<std::size_t>(v) + 1);
  }

  static Partition singletons(std::size_t n) {
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<int>(i);
    return Partition(l);
  }

  static Partition single_community(std::size_t n) { return Partition(std::vector<int>(n, 0)); }

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t community_count() const noexcept { return count_; }
  [[nodiscard]] int operator[](std::size_t v) const noexcept { return labels_[v]; }
  [[nodiscard]] const std::vector<int>& labels() const noexcept { return labels_; }

  [[nodiscard]] std::vector<std::vector<std::size_t>> communities() const {
    std::vector<std::vector<std::size_t>> out(count_);
    for (std::size_t v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(v);
    return out;
  }

  [[nodiscard]] std::vector<std::size_t> community_sizes() const {
    std::vector<std::size_t> out(count_, 0);
    for (int c : labels_) ++out[c];
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

  static std::vector<int> canonical(const std::vector<int>& labels) {
    std::unordered_map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t v = 0; v < labels.size(); ++v) {
      auto [it, inserted] = remap.try_emplace(labels[v], static_cast<int>(remap.size()));
      out[v] = it->second;
    }
    return out;
  }

 private:
  std::vector<int> labels_;
  std::size_t count_ = 0;
};

/// One `vertex community` pair per line.
inline void write_partition(std::ostream& os, const Partition& p) {
  for (std::size_t v = 0; v < p.size(); ++v) os << v << ' ' << p[v] << '\n';
}

}  // namespace tsnet
