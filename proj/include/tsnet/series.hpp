#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsnet/errors.hpp"

namespace tsnet {

/// An ordered sequence of at least two finite real values.
class TimeSeries {
 public:
  TimeSeries() = default;

  explicit TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
      throw InvalidInput("time series needs at least 2 values, got " +
                         std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw InvalidInput("non-finite value at position " + std::to_string(i));
      }
    }
  }

  TimeSeries(std::initializer_list<double> values) : TimeSeries(std::vector<double>(values)) {}

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::span<const double> view() const noexcept { return values_; }
  operator std::span<const double>() const noexcept { return values_; }  // NOLINT

  [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
  [[nodiscard]] auto end() const noexcept { return values_.end(); }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> values_;
};

/// A collection of series with optional integer class labels (dense, 0-based after loading).
class Dataset {
 public:
  Dataset() = default;

  explicit Dataset(std::vector<TimeSeries> series, std::optional<std::vector<int>> labels = {})
      : series_(std::move(series)), labels_(std::move(labels)) {
    if (series_.size() < 2) {
      throw InvalidInput("dataset needs at least 2 series, got " + std::to_string(series_.size()));
    }
    if (labels_ && labels_->size() != series_.size()) {
      throw InvalidInput("label count " + std::to_string(labels_->size()) +
                         " does not match series count " + std::to_string(series_.size()));
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return series_.size(); }
  [[nodiscard]] const TimeSeries& operator[](std::size_t i) const noexcept { return series_[i]; }
  [[nodiscard]] const std::vector<TimeSeries>& series() const noexcept { return series_; }
  [[nodiscard]] bool has_labels() const noexcept { return labels_.has_value(); }
  [[nodiscard]] const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }

  /// Common length when all series agree, 0 otherwise.
  [[nodiscard]] std::size_t uniform_length() const noexcept {
    const std::size_t t = series_.front().size();
    for (const auto& s : series_) {
      if (s.size() != t) return 0;
    }
    return t;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<TimeSeries> series_;
  std::optional<std::vector<int>> labels_;
};

/// Z-score with population variance. Constant input maps to all zeros.
inline std::vector<double> z_normalize(std::span<const double> x) {
  if (x.empty()) throw InvalidInput("cannot normalize an empty series");
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw InvalidInput("non-finite value at position " + std::to_string(i));
    }
    mean += x[i];
  }
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  const double sd = std::sqrt(var);

  std::vector<double> out(x.size(), 0.0);
  // Rounding noise on a constant series can leave sd at a few ulps of |mean|.
  if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) return out;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) / sd;
  return out;
}

inline TimeSeries z_normalize(const TimeSeries& s) { return TimeSeries(z_normalize(s.view())); }

inline Dataset normalize_dataset(const Dataset& ds) {
  std::vector<TimeSeries> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    try {
      out.push_back(z_normalize(ds[i]));
    } catch (const InvalidInput& e) {
      throw InvalidInput("series " + std::to_string(i) + ": " + e.what());
    }
  }
  return Dataset(std::move(out), ds.labels());
}

}  // namespace tsnet
