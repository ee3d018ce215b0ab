#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "eplab/error.hpp"

namespace eplab {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// Japanese bracket sqrt(1 + x^2).
inline double jbracket(double x) { return std::sqrt(1.0 + x * x); }
inline double jbracket(const Vec3& v) { return std::sqrt(1.0 + dot(v, v)); }

/// Cubic periodic grid with n points per axis on [0, L)^3.
///
/// Storage is row-major, index = (i * n + j) * n + k. Frequency index m maps to
/// the signed wavenumber (2 pi / L) * (m < n/2 ? m : m - n); the index n/2 is
/// the unpaired Nyquist mode and is kept at zero amplitude by every multiplier.
class Grid3 {
 public:
  Grid3(std::size_t n, double box_length) : n_(n), box_length_(box_length) {
    if (n < 8 || (n & (n - 1)) != 0) {
      throw InvalidArgument("Grid3: dims must be a power of two >= 8");
    }
    if (!(box_length > 0.0) || !std::isfinite(box_length)) {
      throw InvalidArgument("Grid3: box_length must be positive and finite");
    }
  }

  std::size_t n() const { return n_; }
  std::size_t size() const { return n_ * n_ * n_; }
  double box_length() const { return box_length_; }
  double dx() const { return box_length_ / static_cast<double>(n_); }
  double cell_volume() const { const double h = dx(); return h * h * h; }
  double volume() const { return box_length_ * box_length_ * box_length_; }
  double dk() const { return 2.0 * std::numbers::pi / box_length_; }
  double nyquist() const { return dk() * static_cast<double>(n_ / 2); }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * n_ + j) * n_ + k; }

  std::array<std::size_t, 3> unravel(std::size_t idx) const {
    return {idx / (n_ * n_), (idx / n_) % n_, idx % n_};
  }

  long signed_index(std::size_t m) const {
    return m < n_ / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n_);
  }

  /// Lattice index of -m (mod n).
  std::size_t negate(std::size_t m) const { return (n_ - m) % n_; }

  std::size_t negate_index(std::size_t idx) const {
    const auto [i, j, k] = unravel(idx);
    return index(negate(i), negate(j), negate(k));
  }

  bool is_nyquist(std::size_t idx) const {
    const auto [i, j, k] = unravel(idx);
    const std::size_t h = n_ / 2;
    return i == h || j == h || k == h;
  }

  Vec3 frequency(std::size_t idx) const {
    const auto [i, j, k] = unravel(idx);
    const double s = dk();
    return {s * signed_index(i), s * signed_index(j), s * signed_index(k)};
  }

  Vec3 position(std::size_t idx) const {
    const auto [i, j, k] = unravel(idx);
    const double h = dx();
    return {h * i, h * j, h * k};
  }

  /// 2/3-rule retained set: every signed index strictly below n/3 in magnitude.
  bool in_dealias_band(std::size_t idx) const {
    const auto [i, j, k] = unravel(idx);
    const long cut = static_cast<long>(n_) / 3;
    auto ok = [&](std::size_t m) { const long s = signed_index(m); return s <= cut && s >= -cut; };
    return ok(i) && ok(j) && ok(k);
  }

  bool operator==(const Grid3& o) const { return n_ == o.n_ && box_length_ == o.box_length_; }

 private:
  std::size_t n_;
  double box_length_;
};

}  // namespace eplab
