#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "tsnet/distances.hpp"
#include "tsnet/errors.hpp"

namespace tsnet {

// Distance-matrix cache file, little-endian:
//   bytes 0..7   magic "TSNETDM1"
//   u64          n
//   u32          measure tag (MeasureKind ordinal)
//   i32          DWT level, -1 when unset
//   f64 * n(n-1)/2   upper triangle, row-major (i < j)

inline constexpr char kMatrixMagic[8] = {'T', 'S', 'N', 'E', 'T', 'D', 'M', '1'};

namespace detail {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw FormatError("distance matrix cache truncated");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace detail

inline void write_matrix(std::ostream& out, const DistanceMatrix& d) {
  out.write(kMatrixMagic, sizeof kMatrixMagic);
  detail::put_le<std::uint64_t>(out, d.size());
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.measure().kind));
  detail::put_le<std::int32_t>(out, d.measure().dwt_level.value_or(-1));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) detail::put_le<double>(out, d(i, j));
}

inline DistanceMatrix read_matrix(std::istream& in) {
  char magic[sizeof kMatrixMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMatrixMagic, sizeof magic) != 0) {
    throw FormatError("not a distance matrix cache (bad magic)");
  }
  const auto n = detail::get_le<std::uint64_t>(in);
  const auto tag = detail::get_le<std::uint32_t>(in);
  const auto level = detail::get_le<std::int32_t>(in);
  if (tag >= kAllMeasures.size()) throw FormatError("unknown measure tag in cache");
  if (n < 2 || n > (1u << 20)) throw FormatError("implausible matrix size in cache");
  DistanceMeasure m{static_cast<MeasureKind>(tag), {}};
  if (level >= 0) m.dwt_level = level;
  DistanceMatrix d(static_cast<std::size_t>(n), m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = detail::get_le<double>(in);
      if (!std::isfinite(v) || v < 0.0) throw FormatError("invalid distance in cache");
      d.set(i, j, v);
    }
  return d;
}

inline void save_matrix(const std::filesystem::path& path, const DistanceMatrix& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_matrix(out, d);
  if (!out) throw IoError("failed writing " + path.string());
}

inline DistanceMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_matrix(in);
}

/// Cache file name for (dataset content hash, measure).
inline std::string matrix_cache_name(std::uint64_t dataset_hash, const DistanceMeasure& m) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << dataset_hash << '_';
  std::string name = m.name();
  for (char& c : name)
    if (c == ':') c = '-';
  os << name << ".dm";
  return os.str();
}

}  // namespace tsnet
