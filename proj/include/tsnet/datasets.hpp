#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <vector>

#include "tsnet/errors.hpp"
#include "tsnet/rng.hpp"
#include "tsnet/series.hpp"

namespace tsnet {

namespace detail {

inline bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; }

inline std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_separator(line[i])) ++i;
    if (i > start) cells.push_back(line.substr(start, i - start));
  }
  return cells;
}

inline bool parse_double(std::string_view cell, double& out) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

}  // namespace detail

/// Parses UCR text: one record per line, integer class label first, then the values. Cells may be
/// separated by commas, spaces or tabs; CRLF is accepted. Labels are remapped to dense ids in
/// order of first appearance.
inline Dataset parse_ucr(std::istream& in, const std::string& origin = "<stream>") {
  std::vector<TimeSeries> series;
  std::vector<int> labels;
  std::unordered_map<long long, int> remap;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cells = detail::split_cells(line);
    if (cells.empty()) continue;
    auto fail = [&](const std::string& what) {
      return FormatError(origin + ":" + std::to_string(line_no) + ": " + what);
    };
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw fail("expected " + std::to_string(width) + " cells, found " +
                 std::to_string(cells.size()));
    }
    if (cells.size() < 3) throw fail("a record needs a label and at least 2 values");
    double raw_label = 0.0;
    if (!detail::parse_double(cells[0], raw_label) || !std::isfinite(raw_label) ||
        raw_label != std::floor(raw_label)) {
      throw fail("label '" + std::string(cells[0]) + "' is not an integer");
    }
    std::vector<double> values(cells.size() - 1);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (!detail::parse_double(cells[c], values[c - 1]) || !std::isfinite(values[c - 1])) {
        throw fail("cell " + std::to_string(c + 1) + " '" + std::string(cells[c]) +
                   "' is not a finite number");
      }
    }
    const auto key = static_cast<long long>(raw_label);
    auto [it, inserted] = remap.try_emplace(key, static_cast<int>(remap.size()));
    labels.push_back(it->second);
    series.emplace_back(std::move(values));
  }
  if (series.empty()) throw FormatError(origin + ": no records");
  if (series.size() < 2) throw FormatError(origin + ": a dataset needs at least 2 records");
  return Dataset(std::move(series), std::move(labels));
}

inline Dataset load_ucr(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file " + path.string());
  return parse_ucr(in, path.string());
}

/// Writes UCR text with comma separators and shortest round-trip number formatting, so
/// parse_ucr(write_ucr(ds)) reproduces every value bit for bit. Unlabeled data gets label 0.
inline void write_ucr(std::ostream& out, const Dataset& ds) {
  char buf[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out << (ds.has_labels() ? (*ds.labels())[i] : 0);
    for (double v : ds[i]) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
      out << ',' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

inline void save_ucr(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset file " + path.string());
  write_ucr(out, ds);
  if (!out) throw IoError("failed writing " + path.string());
}

/// Content hash (FNV-1a over the UCR text) used to key cached distance matrices.
inline std::uint64_t dataset_hash(const Dataset& ds) {
  std::ostringstream os;
  write_ucr(os, ds);
  return fnv1a(os.str());
}

/// Knobs for the synthetic generators. Setting both to zero gives the noiseless shapes.
struct GeneratorOptions {
  double noise_sd = 1.0;      // additive Gaussian noise
  double amplitude_sd = 1.0;  // CBF amplitude is 6 + amplitude_sd * N(0,1)
};

enum class CbfClass { Cylinder = 0, Bell = 1, Funnel = 2 };

/// Cylinder-Bell-Funnel. Onset a ~ U{16..32}, duration b - a ~ U{32..min(96, t - a)} on the time
/// axis 1..t. Classes are emitted in blocks: cylinders, bells, funnels (labels 0, 1, 2).
inline Dataset generate_cbf(std::size_t per_class, std::size_t t = 128, RngSeed seed = {},
                            GeneratorOptions opt = {}) {
  if (per_class < 1) throw ParameterError("CBF needs per_class >= 1");
  if (t < 64) throw ParameterError("CBF needs t >= 64 to fit onset and duration");
  Rng rng(seed);
  std::vector<TimeSeries> series;
  std::vector<int> labels;
  for (int cls = 0; cls < 3; ++cls) {
    for (std::size_t r = 0; r < per_class; ++r) {
      const auto a = rng.uniform_int(16, 32);
      const auto dur = rng.uniform_int(32, std::min<std::int64_t>(96, static_cast<std::int64_t>(t) - a));
      const auto b = a + dur;
      const double amp = 6.0 + opt.amplitude_sd * rng.normal();
      std::vector<double> v(t);
      for (std::size_t i = 0; i < t; ++i) {
        const auto time = static_cast<std::int64_t>(i) + 1;
        double shape = 0.0;
        if (time >= a && time <= b) {
          const double frac = static_cast<double>(time - a) / static_cast<double>(b - a);
          switch (static_cast<CbfClass>(cls)) {
            case CbfClass::Cylinder: shape = 1.0; break;
            case CbfClass::Bell: shape = frac; break;
            case CbfClass::Funnel: shape = 1.0 - frac; break;
          }
        }
        v[i] = amp * shape + opt.noise_sd * rng.normal();
      }
      series.emplace_back(std::move(v));
      labels.push_back(cls);
    }
  }
  return Dataset(std::move(series), std::move(labels));
}

/// Where the two step patterns of one Two-Patterns series sit.
struct PatternWindows {
  std::size_t start1, length1, start2, length2;
};

/// Two-Patterns: classes UU, UD, DU, DD (labels 0..3). An up step is -5 over the first half of its
/// window and +5 over the second; a down step the reverse. Window lengths are uniform in
/// [t/8, t/4]; the first start is uniform over the prefix that still leaves room for the second,
/// the second start uniform over what remains. Outside the windows the series is N(0,1) noise.
inline Dataset generate_two_patterns(std::size_t per_class, std::size_t t = 128, RngSeed seed = {},
                                     GeneratorOptions opt = {},
                                     std::vector<PatternWindows>* windows = nullptr) {
  if (per_class < 1) throw ParameterError("Two-Patterns needs per_class >= 1");
  const std::size_t lo = t / 8, hi = t / 4;
  if (lo < 2) throw ParameterError("Two-Patterns needs t >= 16 to fit two patterns");
  Rng rng(seed);
  std::vector<TimeSeries> series;
  std::vector<int> labels;
  for (int cls = 0; cls < 4; ++cls) {
    const bool first_up = cls == 0 || cls == 1;
    const bool second_up = cls == 0 || cls == 2;
    for (std::size_t r = 0; r < per_class; ++r) {
      const auto l1 = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
      const auto l2 = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
      const auto s1 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(t - l1 - l2)));
      const auto s2 = static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(s1 + l1), static_cast<std::int64_t>(t - l2)));
      std::vector<double> v(t);
      for (std::size_t i = 0; i < t; ++i) v[i] = opt.noise_sd * rng.normal();
      auto stamp = [&](std::size_t start, std::size_t len, bool up) {
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < len; ++i) {
          const bool first_half = i < half;
          v[start + i] = (first_half == up) ? -5.0 : 5.0;
        }
      };
      stamp(s1, l1, first_up);
      stamp(s2, l2, second_up);
      if (windows) windows->push_back({s1, l1, s2, l2});
      series.emplace_back(std::move(v));
      labels.push_back(cls);
    }
  }
  return Dataset(std::move(series), std::move(labels));
}

}  // namespace tsnet
