#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "eplab/spectral/field.hpp"

namespace eplab::snapshot {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

inline constexpr std::array<char, 4> kMagic{'E', 'P', 'L', 'B'};
inline constexpr std::uint32_t kVersion = 1;

struct Snapshot {
  SpectralField field;
  double time = 0.0;
};

namespace detail {
template <class T>
void put(std::ostream& os, T v) { os.write(reinterpret_cast<const char*>(&v), sizeof(T)); }
template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error("snapshot: truncated stream");
  return v;
}
}  // namespace detail

/// Layout: "EPLB", u32 version, 3 x u32 dims, f64 box_length, f64 time,
/// u8 representation, u8 real flag, then interleaved (re, im) f64, row-major.
inline void write(std::ostream& os, const SpectralField& f, double time) {
  os.write(kMagic.data(), 4);
  detail::put<std::uint32_t>(os, kVersion);
  const auto n = static_cast<std::uint32_t>(f.grid().n());
  for (int a = 0; a < 3; ++a) detail::put<std::uint32_t>(os, n);
  detail::put<double>(os, f.grid().box_length());
  detail::put<double>(os, time);
  detail::put<std::uint8_t>(os, static_cast<std::uint8_t>(f.representation()));
  detail::put<std::uint8_t>(os, f.is_real() ? 1 : 0);
  for (const auto& v : f.values()) {
    detail::put<double>(os, v.real());
    detail::put<double>(os, v.imag());
  }
  if (!os) throw Error("snapshot: write failed");
}

inline Snapshot read(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), 4);
  if (!is || magic != kMagic) throw Error("snapshot: bad magic");
  const auto version = detail::get<std::uint32_t>(is);
  if (version != kVersion) throw Error("snapshot: unsupported version " + std::to_string(version));
  std::array<std::uint32_t, 3> dims{};
  for (auto& d : dims) d = detail::get<std::uint32_t>(is);
  if (dims[0] != dims[1] || dims[1] != dims[2]) throw Error("snapshot: non-cubic dims");
  const double box = detail::get<double>(is);
  const double time = detail::get<double>(is);
  const auto rep = detail::get<std::uint8_t>(is);
  const auto real = detail::get<std::uint8_t>(is);
  if (rep > 1) throw Error("snapshot: bad representation flag");
  Grid3 g(dims[0], box);
  std::vector<cplx> vals(g.size());
  for (auto& v : vals) {
    const double re = detail::get<double>(is);
    const double im = detail::get<double>(is);
    v = {re, im};
  }
  return {SpectralField(g, std::move(vals), static_cast<Representation>(rep), real != 0), time};
}

inline void save(const std::string& path, const SpectralField& f, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("snapshot: cannot open " + path);
  write(os, f, time);
}

inline Snapshot load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("snapshot: cannot open " + path);
  return read(is);
}

}  // namespace eplab::snapshot
