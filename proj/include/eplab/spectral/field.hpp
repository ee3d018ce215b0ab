#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "eplab/spectral/fft.hpp"
#include "eplab/spectral/grid.hpp"

namespace eplab {

using cplx = std::complex<double>;

enum class Representation : unsigned char { physical = 0, frequency = 1 };

/// Complex scalar field on a periodic grid, held in one of two representations.
///
/// Frequency data uses the convention f(x) = sum_k fhat(k) e^{i k.x}; a field
/// flagged `real` keeps Hermitian-symmetric frequency data.
class SpectralField {
 public:
  SpectralField(Grid3 grid, Representation rep, bool real = false)
      : grid_(grid), values_(grid.size(), cplx{0.0, 0.0}), rep_(rep), real_(real) {}

  SpectralField(Grid3 grid, std::vector<cplx> values, Representation rep, bool real = false)
      : grid_(grid), values_(std::move(values)), rep_(rep), real_(real) {
    if (values_.size() != grid_.size()) throw InvalidArgument("SpectralField: value count does not match grid");
  }

  static SpectralField zeros(const Grid3& g, Representation rep = Representation::frequency, bool real = true) {
    return SpectralField(g, rep, real);
  }

  /// Samples a real function of position.
  static SpectralField from_function(const Grid3& g, const std::function<double(const Vec3&)>& f) {
    SpectralField out(g, Representation::physical, true);
    for (std::size_t i = 0; i < g.size(); ++i) out.values_[i] = f(g.position(i));
    return out;
  }

  const Grid3& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_real() const { return real_; }
  void set_real(bool r) { real_ = r; }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  SpectralField& to_frequency() {
    if (rep_ == Representation::frequency) return *this;
    fft::forward3(values_, static_cast<int>(grid_.n()));
    rep_ = Representation::frequency;
    return *this;
  }

  SpectralField& to_physical() {
    if (rep_ == Representation::physical) return *this;
    fft::backward3(values_, static_cast<int>(grid_.n()));
    if (real_) {
      for (auto& v : values_) v = {v.real(), 0.0};
    }
    rep_ = Representation::physical;
    return *this;
  }

  SpectralField in(Representation target) const {
    SpectralField copy = *this;
    if (target == Representation::frequency) copy.to_frequency();
    else copy.to_physical();
    return copy;
  }

  SpectralField frequency() const { return in(Representation::frequency); }
  SpectralField physical() const { return in(Representation::physical); }

  /// Frequency data of the complex conjugate field: conj(fhat(-k)).
  SpectralField conjugate() const {
    SpectralField out(grid_, rep_, real_);
    if (rep_ == Representation::physical) {
      for (std::size_t i = 0; i < size(); ++i) out.values_[i] = std::conj(values_[i]);
    } else {
      for (std::size_t i = 0; i < size(); ++i) out.values_[i] = std::conj(values_[grid_.negate_index(i)]);
    }
    return out;
  }

  /// Real part as a real field, in the current representation.
  SpectralField real_part() const { return combine_with_conjugate(0.5, false); }
  /// Imaginary part as a real field, in the current representation.
  SpectralField imag_part() const { return combine_with_conjugate(0.5, true); }

  SpectralField& zero_nyquist() {
    if (rep_ != Representation::frequency) to_frequency();
    for (std::size_t i = 0; i < size(); ++i) {
      if (grid_.is_nyquist(i)) values_[i] = 0.0;
    }
    return *this;
  }

  /// Truncates to the 2/3-rule band (frequency representation).
  SpectralField& dealias() {
    to_frequency();
    for (std::size_t i = 0; i < size(); ++i) {
      if (!grid_.in_dealias_band(i)) values_[i] = 0.0;
    }
    return *this;
  }

  SpectralField& operator+=(const SpectralField& o) { check_compatible(o); for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i]; real_ = real_ && o.real_; return *this; }
  SpectralField& operator-=(const SpectralField& o) { check_compatible(o); for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i]; real_ = real_ && o.real_; return *this; }
  SpectralField& operator*=(cplx s) { for (auto& v : values_) v *= s; if (s.imag() != 0.0) real_ = false; return *this; }
  SpectralField& operator*=(double s) { for (auto& v : values_) v *= s; return *this; }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  /// a += s * b, with both in the same representation.
  SpectralField& axpy(cplx s, const SpectralField& b) {
    check_compatible(b);
    for (std::size_t i = 0; i < size(); ++i) values_[i] += s * b.values_[i];
    if (s.imag() != 0.0 || !b.real_) real_ = false;
    return *this;
  }

  /// Largest Hermitian-symmetry defect |fhat(-k) - conj(fhat(k))|.
  double hermitian_defect() const {
    const SpectralField f = frequency();
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      worst = std::max(worst, std::abs(f.values_[grid_.negate_index(i)] - std::conj(f.values_[i])));
    }
    return worst;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  void check_compatible(const SpectralField& o) const {
    if (!(grid_ == o.grid_)) throw InvalidArgument("SpectralField: grid mismatch");
    if (rep_ != o.rep_) throw InvalidArgument("SpectralField: representation mismatch");
  }

 private:
  SpectralField combine_with_conjugate(double scale, bool imaginary) const {
    SpectralField out(grid_, rep_, true);
    if (rep_ == Representation::physical) {
      for (std::size_t i = 0; i < size(); ++i) out.values_[i] = imaginary ? values_[i].imag() : values_[i].real();
      return out;
    }
    for (std::size_t i = 0; i < size(); ++i) {
      const cplx c = std::conj(values_[grid_.negate_index(i)]);
      out.values_[i] = imaginary ? scale * (values_[i] - c) / cplx{0.0, 1.0} : scale * (values_[i] + c);
    }
    return out;
  }

  Grid3 grid_;
  std::vector<cplx> values_;
  Representation rep_;
  bool real_;
};

/// Relative L2 distance computed on grid values (representation-independent by Plancherel).
inline double relative_l2_difference(const SpectralField& a, const SpectralField& b) {
  const SpectralField fa = a.frequency();
  const SpectralField fb = b.frequency();
  fa.check_compatible(fb);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    num += std::norm(fa[i] - fb[i]);
    den += std::norm(fb[i]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

}  // namespace eplab
