#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "eplab/spectral/multiplier.hpp"
#include "eplab/symbols/symbols.hpp"

namespace eplab {

/// Frequency data of C^{eps} f: f itself for +, conj(f) for -.
inline SpectralField conjugated(const SpectralField& f, Sign s) {
  SpectralField h = f.frequency();
  return s == Sign::plus ? h : h.conjugate();
}

struct DirectOptions {
  /// Restrict inputs and output to the 2/3-rule band (alias-free sum).
  bool dealias = false;
  /// Largest admissible total mode count (O(modes^2) work).
  std::size_t max_modes = 32 * 32 * 32;
};

namespace detail {

struct Support {
  std::vector<std::uint32_t> index;
  std::vector<std::array<std::uint32_t, 3>> axes;
};

inline Support support_of(const Grid3& g, const std::vector<cplx>* data, const std::vector<bool>* mask, bool dealias) {
  Support s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (data && (*data)[i] == cplx{}) continue;
    if (mask && !(*mask)[i]) continue;
    if (dealias && !g.in_dealias_band(i)) continue;
    const auto u = g.unravel(i);
    s.index.push_back(static_cast<std::uint32_t>(i));
    s.axes.push_back({static_cast<std::uint32_t>(u[0]), static_cast<std::uint32_t>(u[1]), static_cast<std::uint32_t>(u[2])});
  }
  return s;
}

inline std::size_t add_indices(const Grid3& g, const std::array<std::uint32_t, 3>& a, const std::array<std::uint32_t, 3>& b) {
  const std::size_t n = g.n();
  return g.index((a[0] + b[0]) % n, (a[1] + b[1]) % n, (a[2] + b[2]) % n);
}

inline void guard(const Grid3& g, const DirectOptions& o) {
  if (g.size() > o.max_modes) throw CostGuard("direct pseudo-product: grid exceeds the mode-count guard");
}

}  // namespace detail

/// T_m[C^{eps1} f, C^{eps2} g] by explicit summation over frequency pairs:
/// out(k_i + k_j) += m(k_i, k_j) F(k_i) G(k_j), the sum folded periodically.
inline SpectralField pseudo_product_direct(const BilinearSymbolSpec& spec, const ConjPair& eps, const SpectralField& f,
                                           const SpectralField& g, const DirectOptions& opt = {}) {
  if (!(f.grid() == g.grid())) throw InvalidArgument("direct pseudo-product: grid mismatch");
  const Grid3& grid = f.grid();
  detail::guard(grid, opt);
  const SpectralField fe = conjugated(f, eps.first);
  const SpectralField ge = conjugated(g, eps.second);
  const auto sf = detail::support_of(grid, &fe.values(), nullptr, opt.dealias);
  const auto sg = detail::support_of(grid, &ge.values(), nullptr, opt.dealias);
  std::vector<Vec3> kf(sf.index.size()), kg(sg.index.size());
  for (std::size_t a = 0; a < kf.size(); ++a) kf[a] = grid.frequency(sf.index[a]);
  for (std::size_t b = 0; b < kg.size(); ++b) kg[b] = grid.frequency(sg.index[b]);

  SpectralField out(grid, Representation::frequency, false);
  auto& ov = out.values();
  for (std::size_t a = 0; a < kf.size(); ++a) {
    const cplx fa = fe[sf.index[a]];
    for (std::size_t b = 0; b < kg.size(); ++b) {
      const std::size_t o = detail::add_indices(grid, sf.axes[a], sg.axes[b]);
      if (opt.dealias && !grid.in_dealias_band(o)) continue;
      ov[o] += eval_symbol(spec, kf[a], kg[b]) * fa * ge[sg.index[b]];
    }
  }
  return out;
}

/// Precomputed sparse kernel of T_m restricted to fixed input supports and an
/// output window; reused when the same operator is applied many times.
class BilinearKernel {
 public:
  BilinearKernel(const BilinearSymbolSpec& spec, const Grid3& grid, const std::vector<bool>& left_support,
                 const std::vector<bool>& right_support, const std::vector<bool>& out_support,
                 const DirectOptions& opt = {})
      : grid_(grid) {
    detail::guard(grid, opt);
    const auto sf = detail::support_of(grid, nullptr, &left_support, opt.dealias);
    const auto sg = detail::support_of(grid, nullptr, &right_support, opt.dealias);
    for (std::size_t a = 0; a < sf.index.size(); ++a) {
      const Vec3 ka = grid.frequency(sf.index[a]);
      for (std::size_t b = 0; b < sg.index.size(); ++b) {
        const std::size_t o = detail::add_indices(grid, sf.axes[a], sg.axes[b]);
        if (!out_support[o] || (opt.dealias && !grid.in_dealias_band(o))) continue;
        const double w = eval_symbol(spec, ka, grid.frequency(sg.index[b]));
        if (w == 0.0) continue;
        left_.push_back(sf.index[a]);
        right_.push_back(sg.index[b]);
        out_.push_back(static_cast<std::uint32_t>(o));
        weight_.push_back(w);
      }
    }
  }

  std::size_t entries() const { return weight_.size(); }

  /// Inputs are frequency data already conjugated per eps.
  SpectralField apply(const SpectralField& left_hat, const SpectralField& right_hat) const {
    SpectralField out(grid_, Representation::frequency, false);
    auto& ov = out.values();
    const auto& l = left_hat.values();
    const auto& r = right_hat.values();
    for (std::size_t e = 0; e < weight_.size(); ++e) ov[out_[e]] += weight_[e] * l[left_[e]] * r[right_[e]];
    return out;
  }

 private:
  Grid3 grid_;
  std::vector<std::uint32_t> left_, right_, out_;
  std::vector<double> weight_;
};

inline std::vector<bool> full_support(const Grid3& g) { return std::vector<bool>(g.size(), true); }

inline std::vector<bool> nonzero_support(const SpectralField& f, double tol = 0.0) {
  const SpectralField h = f.frequency();
  std::vector<bool> s(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) s[i] = std::abs(h[i]) > tol;
  return s;
}

inline std::vector<bool> band_support(const Grid3& g, const Band& b) {
  std::vector<bool> s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) s[i] = !g.is_nyquist(i) && b(g.frequency(i)) != 0.0;
  return s;
}

/// One term outer( left(f) * right(g) ) of a separable expansion.
struct SeparableTerm {
  Multiplier outer;
  Multiplier left;
  Multiplier right;
  cplx coeff{1.0, 0.0};
};

using Expansion = std::vector<SeparableTerm>;

/// Sum over terms of outer( left(C^{eps1} f) . right(C^{eps2} g) ), each
/// factor truncated to the 2/3 band before the pointwise product and the
/// product truncated again before the outer multiplier.
inline SpectralField pseudo_product_separable(const Expansion& expansion, const SpectralField& f, const SpectralField& g,
                                              const ConjPair& eps = {}) {
  const Grid3& grid = f.grid();
  if (!(grid == g.grid())) throw InvalidArgument("separable pseudo-product: grid mismatch");
  const SpectralField fe = conjugated(f, eps.first).dealias();
  const SpectralField ge = conjugated(g, eps.second).dealias();
  SpectralField out(grid, Representation::frequency, false);
  for (const auto& term : expansion) {
    SpectralField a = apply_multiplier(fe, term.left);
    SpectralField b = apply_multiplier(ge, term.right);
    a.set_real(false);
    b.set_real(false);
    a.to_physical();
    b.to_physical();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    a.to_frequency().dealias();
    SymbolTable(grid, term.outer).apply_in_place(a);
    out.axpy(term.coeff, a);
  }
  return out;
}

namespace expansions {

inline Expansion one() { return {{mult::identity(), mult::identity(), mult::identity()}}; }

/// m_p = sum_j (-R_j <D>)[ (|D|/<D>) f . R_j g ].
inline Expansion mp(bool swapped = false) {
  Expansion e;
  for (int j = 0; j < 3; ++j) {
    Multiplier outer = mult::compose(mult::riesz(j), mult::jbracket_op());
    SeparableTerm t{outer, mult::abs_over_jbracket(), mult::riesz(j), {-1.0, 0.0}};
    if (swapped) std::swap(t.left, t.right);
    e.push_back(t);
  }
  return e;
}

/// m_t = sum_{j,k} (zeta_j/|zeta|) [ (xi1_j xi1_k / |xi1|) f . (xi2_k / |xi2|) g ].
inline Expansion mt(bool swapped = false) {
  auto dir = [](int j) {
    return Multiplier{"dir" + std::to_string(j), [j](const Vec3& x) { return cplx{x[j] / norm(x), 0.0}; }, true};
  };
  auto quad = [](int j, int k) {
    return Multiplier{"q" + std::to_string(j) + std::to_string(k),
                      [j, k](const Vec3& x) { return cplx{x[j] * x[k] / norm(x), 0.0}; }, true};
  };
  Expansion e;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      SeparableTerm t{dir(j), quad(j, k), dir(k)};
      if (swapped) std::swap(t.left, t.right);
      e.push_back(t);
    }
  }
  return e;
}

inline Expansion for_kind(SymbolKind k) {
  switch (k) {
    case SymbolKind::mp: return mp(false);
    case SymbolKind::mp_swapped: return mp(true);
    case SymbolKind::mt: return mt(false);
    case SymbolKind::mt_swapped: return mt(true);
    case SymbolKind::one: return one();
    case SymbolKind::custom: break;
  }
  throw InvalidArgument("no separable expansion for this symbol kind");
}

}  // namespace expansions

}  // namespace eplab
