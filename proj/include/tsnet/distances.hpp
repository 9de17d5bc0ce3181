#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsnet/detail/fft.hpp"
#include "tsnet/detail/parallel.hpp"
#include "tsnet/errors.hpp"
#include "tsnet/series.hpp"

namespace tsnet {

enum class MeasureKind { L1, ED, LInf, DTW, STS, DISSIM, CID, DWT, COR, INTPER };

inline constexpr std::array<MeasureKind, 10> kAllMeasures = {
    MeasureKind::L1,  MeasureKind::ED,  MeasureKind::LInf, MeasureKind::DTW, MeasureKind::STS,
    MeasureKind::DISSIM, MeasureKind::CID, MeasureKind::DWT, MeasureKind::COR, MeasureKind::INTPER};

inline std::string_view to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::L1: return "l1";
    case MeasureKind::ED: return "ed";
    case MeasureKind::LInf: return "linf";
    case MeasureKind::DTW: return "dtw";
    case MeasureKind::STS: return "sts";
    case MeasureKind::DISSIM: return "dissim";
    case MeasureKind::CID: return "cid";
    case MeasureKind::DWT: return "dwt";
    case MeasureKind::COR: return "cor";
    case MeasureKind::INTPER: return "intper";
  }
  return "?";
}

inline MeasureKind parse_measure_kind(std::string_view name) {
  for (MeasureKind k : kAllMeasures) {
    if (to_string(k) == name) return k;
  }
  throw ParameterError("unknown distance measure '" + std::string(name) + "'");
}

/// A distance function plus its settings. Only DWT is parameterized (retained level); when the
/// level is unset it defaults to floor(log2(t)/2) for the series at hand.
struct DistanceMeasure {
  MeasureKind kind = MeasureKind::ED;
  std::optional<int> dwt_level;

  [[nodiscard]] std::string name() const {
    std::string s(to_string(kind));
    if (kind == MeasureKind::DWT && dwt_level) s += ":" + std::to_string(*dwt_level);
    return s;
  }

  /// Accepts "dtw", "ed", ... and "dwt:<level>".
  static DistanceMeasure parse(std::string_view text) {
    DistanceMeasure m;
    const auto colon = text.find(':');
    m.kind = parse_measure_kind(text.substr(0, colon));
    if (colon != std::string_view::npos) {
      if (m.kind != MeasureKind::DWT) {
        throw ParameterError("measure '" + std::string(text) + "' takes no parameter");
      }
      const std::string level(text.substr(colon + 1));
      std::size_t used = 0;
      int v = -1;
      try {
        v = std::stoi(level, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != level.size() || v < 0) {
        throw ParameterError("invalid DWT level '" + level + "'");
      }
      m.dwt_level = v;
    }
    return m;
  }

  friend bool operator==(const DistanceMeasure&, const DistanceMeasure&) = default;
};

namespace detail {

inline void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
  if (x.empty()) throw InvalidInput("empty series");
}

}  // namespace detail

/// (sum |x_i - y_i|^p)^(1/p); p = infinity gives the max norm.
inline double lp_distance(std::span<const double> x, std::span<const double> y, double p) {
  detail::require_same_length(x, y);
  if (!(p > 0)) throw ParameterError("Lp norm needs p > 0");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
  }
  double s = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
    return s;
  }
  if (p == 2.0) {
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
  }
  for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i] - y[i]), p);
  return std::pow(s, 1.0 / p);
}

/// Unconstrained DTW with absolute local cost and steps (1,0), (0,1), (1,1). Two-row DP.
inline double dtw_distance(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw InvalidInput("DTW on an empty series");
  const std::size_t m = y.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = inf;
    const double xi = x[i - 1];
    for (std::size_t j = 1; j <= m; ++j) {
      const double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
      cur[j] = std::abs(xi - y[j - 1]) + best;
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

/// Euclidean distance between first-difference sequences (unit sampling).
inline double sts_distance(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double d = (x[k + 1] - x[k]) - (y[k + 1] - y[k]);
    s += d * d;
  }
  return std::sqrt(s);
}

/// Trapezoidal integral of |x(t) - y(t)| over unit-spaced samples.
inline double dissim_distance(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    s += (std::abs(x[k] - y[k]) + std::abs(x[k + 1] - y[k + 1])) / 2.0;
  }
  return s;
}

/// Complexity estimate: root-sum-square of consecutive differences.
inline double complexity_estimate(std::span<const double> s) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) acc += (s[i + 1] - s[i]) * (s[i + 1] - s[i]);
  return std::sqrt(acc);
}

inline double cid_distance(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  const double cx = complexity_estimate(x);
  const double cy = complexity_estimate(y);
  const double hi = std::max(cx, cy);
  const double lo = std::min(cx, cy);
  double cf = 1.0;
  if (hi > 0.0) cf = hi / std::max(lo, 1e-12);
  return lp_distance(x, y, 2.0) * cf;
}

/// Largest Haar level available after zero-padding a length-t series to a power of two.
inline int haar_max_level(std::size_t t) {
  int j = 0;
  for (std::size_t p = 1; p < t; p <<= 1) ++j;
  return j;
}

inline int dwt_default_level(std::size_t t) {
  int floor_log2 = 0;
  for (std::size_t v = t; v > 1; v >>= 1) ++floor_log2;
  return floor_log2 / 2;
}

/// Orthonormal Haar approximation coefficients at `level` of the zero-padded series.
inline std::vector<double> haar_approximation(std::span<const double> s, int level) {
  const int max_level = haar_max_level(s.size());
  if (level < 0 || level > max_level) {
    throw ParameterError("DWT level " + std::to_string(level) + " outside [0, " +
                         std::to_string(max_level) + "]");
  }
  std::vector<double> a(detail::next_pow2(s.size()), 0.0);
  std::copy(s.begin(), s.end(), a.begin());
  const double r = 1.0 / std::sqrt(2.0);
  for (int l = 0; l < level; ++l) {
    const std::size_t half = a.size() / 2;
    for (std::size_t i = 0; i < half; ++i) a[i] = (a[2 * i] + a[2 * i + 1]) * r;
    a.resize(half);
  }
  return a;
}

inline double dwt_distance(std::span<const double> x, std::span<const double> y,
                           std::optional<int> level = {}) {
  detail::require_same_length(x, y);
  const int l = level.value_or(dwt_default_level(x.size()));
  const auto ax = haar_approximation(x, l);
  const auto ay = haar_approximation(y, l);
  return lp_distance(ax, ay, 2.0);
}

/// sqrt(2 (1 - rho)) with rho the Pearson correlation.
inline double cor_distance(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw DegenerateInput("Pearson correlation undefined for a constant series");
  }
  const double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return std::sqrt(2.0 * (1.0 - rho));
}

/// Periodogram at Fourier frequencies 2 pi k / t, k = 1..floor(t/2).
inline std::vector<double> periodogram(std::span<const double> s) {
  const auto spectrum = detail::dft(s);
  const std::size_t t = s.size();
  std::vector<double> p(t / 2);
  for (std::size_t k = 1; k <= t / 2; ++k) p[k - 1] = std::norm(spectrum[k]) / static_cast<double>(t);
  return p;
}

/// Running sum of the periodogram normalized by its total; ends at 1.
inline std::vector<double> cumulative_periodogram(std::span<const double> s) {
  if (s.size() < 4) throw InvalidInput("integrated periodogram needs length >= 4");
  auto p = periodogram(s);
  double total = 0.0;
  for (double v : p) total += v;
  // A constant series has only rounding residue outside DC.
  double energy = 0.0;
  for (double v : s) energy += v * v;
  if (!(total > 1e-24 * std::max(1.0, energy))) {
    throw DegenerateInput("integrated periodogram undefined for zero spectral power");
  }
  double acc = 0.0;
  for (double& v : p) {
    acc += v;
    v = acc / total;
  }
  p.back() = 1.0;
  return p;
}

inline double intper_distance(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  const auto fx = cumulative_periodogram(x);
  const auto fy = cumulative_periodogram(y);
  double s = 0.0;
  for (std::size_t k = 0; k < fx.size(); ++k) s += std::abs(fx[k] - fy[k]);
  return s;
}

inline double distance(const DistanceMeasure& m, std::span<const double> x,
                       std::span<const double> y) {
  switch (m.kind) {
    case MeasureKind::L1: return lp_distance(x, y, 1.0);
    case MeasureKind::ED: return lp_distance(x, y, 2.0);
    case MeasureKind::LInf: return lp_distance(x, y, std::numeric_limits<double>::infinity());
    case MeasureKind::DTW: return dtw_distance(x, y);
    case MeasureKind::STS: return sts_distance(x, y);
    case MeasureKind::DISSIM: return dissim_distance(x, y);
    case MeasureKind::CID: return cid_distance(x, y);
    case MeasureKind::DWT: return dwt_distance(x, y, m.dwt_level);
    case MeasureKind::COR: return cor_distance(x, y);
    case MeasureKind::INTPER: return intper_distance(x, y);
  }
  throw ParameterError("unhandled measure");
}

/// Symmetric n x n matrix with zero diagonal, tagged with the measure that produced it.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, DistanceMeasure measure)
      : n_(n), values_(n * n, 0.0), measure_(measure) {}

  /// Builds from a full row-major matrix, validating the invariants.
  static DistanceMatrix from_values(std::size_t n, std::vector<double> values,
                                    DistanceMeasure measure = {}) {
    if (values.size() != n * n) throw InvalidInput("distance matrix needs n*n values");
    DistanceMatrix d(n, measure);
    d.values_ = std::move(values);
    for (std::size_t i = 0; i < n; ++i) {
      if (d(i, i) != 0.0) throw InvalidInput("distance matrix diagonal must be zero");
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = d(i, j);
        if (!std::isfinite(v) || v < 0.0) {
          throw InvalidInput("distance matrix entries must be finite and nonnegative");
        }
        if (v != d(j, i)) throw InvalidInput("distance matrix must be symmetric");
      }
    }
    return d;
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * n_ + j];
  }
  [[nodiscard]] const DistanceMeasure& measure() const noexcept { return measure_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(values_).subspan(i * n_, n_);
  }

  /// Sets d_ij and d_ji together so symmetry holds exactly.
  void set(std::size_t i, std::size_t j, double v) noexcept {
    values_[i * n_ + j] = v;
    values_[j * n_ + i] = v;
  }

  /// Smallest off-diagonal entry.
  [[nodiscard]] double min_off_diagonal() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) m = std::min(m, (*this)(i, j));
    return m;
  }

  [[nodiscard]] double max_value() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, v);
    return m;
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
  DistanceMeasure measure_;
};

inline bool is_lock_step(MeasureKind k) { return k != MeasureKind::DTW; }

/// All pairwise distances; only the upper triangle is evaluated. Rows are distributed over `jobs`
/// threads; results do not depend on the thread count.
inline DistanceMatrix distance_matrix(const Dataset& ds, const DistanceMeasure& m,
                                      unsigned jobs = 1) {
  const std::size_t n = ds.size();
  if (is_lock_step(m.kind)) {
    for (std::size_t j = 1; j < n; ++j) {
      if (ds[j].size() != ds[0].size()) {
        throw InvalidInput("distance between series 0 and " + std::to_string(j) + ": " +
                           LengthMismatch(ds[0].size(), ds[j].size()).what());
      }
    }
  }
  DistanceMatrix d(n, m);
  detail::parallel_for(n, jobs, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = 0.0;
      const auto where = [&](const Error& e) {
        return "distance between series " + std::to_string(i) + " and " + std::to_string(j) +
               ": " + e.what();
      };
      try {
        v = distance(m, ds[i], ds[j]);
      } catch (const DegenerateInput& e) {
        throw DegenerateInput(where(e));
      } catch (const ParameterError& e) {
        throw ParameterError(where(e));
      } catch (const Error& e) {
        throw InvalidInput(where(e));
      }
      d.set(i, j, v);
    }
  });
  return d;
}

}  // namespace tsnet
