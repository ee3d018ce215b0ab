#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "eplab/spectral/grid.hpp"

namespace eplab {

enum class Sign : int { plus = 1, minus = -1 };

inline double as_double(Sign s) { return static_cast<double>(static_cast<int>(s)); }

/// Conjugation pair eps = (eps1, eps2): slot k receives f when eps_k = +
/// and conj(f) when eps_k = -.
struct ConjPair {
  Sign first = Sign::plus;
  Sign second = Sign::plus;

  static constexpr std::array<ConjPair, 4> all() {
    return {{{Sign::plus, Sign::plus}, {Sign::plus, Sign::minus}, {Sign::minus, Sign::plus}, {Sign::minus, Sign::minus}}};
  }

  std::string label() const {
    return std::string("(") + (first == Sign::plus ? "+" : "-") + "," + (second == Sign::plus ? "+" : "-") + ")";
  }

  bool operator==(const ConjPair&) const = default;
};

inline ConjPair parse_conj_pair(const std::string& s) {
  for (const auto& e : ConjPair::all()) {
    if (s == e.label() || s == e.label().substr(1, 3)) return e;
  }
  if (s == "++") return ConjPair::all()[0];
  if (s == "+-") return ConjPair::all()[1];
  if (s == "-+") return ConjPair::all()[2];
  if (s == "--") return ConjPair::all()[3];
  throw InvalidArgument("unknown conjugation pair '" + s + "'");
}

/// phi_eps(xi1, xi2) = -<xi1 + xi2> + eps1 <xi1> + eps2 <xi2>.
inline double eval_phase(const ConjPair& eps, const Vec3& xi1, const Vec3& xi2) {
  return -jbracket(xi1 + xi2) + as_double(eps.first) * jbracket(xi1) + as_double(eps.second) * jbracket(xi2);
}

enum class SymbolKind { mp, mt, mp_swapped, mt_swapped, one, custom };

inline std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::mp: return "mp";
    case SymbolKind::mt: return "mt";
    case SymbolKind::mp_swapped: return "mp_swapped";
    case SymbolKind::mt_swapped: return "mt_swapped";
    case SymbolKind::one: return "one";
    case SymbolKind::custom: return "custom";
  }
  return "?";
}

inline SymbolKind parse_symbol_kind(const std::string& s) {
  for (auto k : {SymbolKind::mp, SymbolKind::mt, SymbolKind::mp_swapped, SymbolKind::mt_swapped, SymbolKind::one}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidArgument("unknown symbol kind '" + s + "'");
}

/// A bilinear symbol, optionally divided by the phase phi_eps (normal-form variant).
struct BilinearSymbolSpec {
  SymbolKind kind = SymbolKind::one;
  std::optional<ConjPair> divisor{};
  std::function<double(const Vec3&, const Vec3&)> custom{};

  static BilinearSymbolSpec of(SymbolKind k) { return {k, std::nullopt, {}}; }
  static BilinearSymbolSpec normal_form(SymbolKind k, ConjPair eps) { return {k, eps, {}}; }

  std::string label() const {
    return to_string(kind) + (divisor ? "/phi" + divisor->label() : std::string());
  }
};

namespace detail {

// Cosine of the angle between a and b; 0 when either vanishes.
inline double direction_cos(const Vec3& a, const Vec3& b) {
  const double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

inline double mp(const Vec3& x1, const Vec3& x2) {
  const Vec3 s = x1 + x2;
  return norm(x1) * jbracket(s) / jbracket(x1) * direction_cos(x2, s);
}

inline double mt(const Vec3& x1, const Vec3& x2) {
  const Vec3 s = x1 + x2;
  return norm(x1) * direction_cos(x1, s) * direction_cos(x1, x2);
}

}  // namespace detail

/// m_p(xi1, xi2) = |xi1| <xi1+xi2>/<xi1> [xi2.(xi1+xi2)] / (|xi2| |xi1+xi2|)
/// m_t(xi1, xi2) = |xi1| [xi1.(xi1+xi2) / (|xi1||xi1+xi2|)] [xi1.xi2 / (|xi1||xi2|)]
/// Direction quotients with a vanishing vector evaluate to 0.
inline double eval_symbol(const BilinearSymbolSpec& spec, const Vec3& xi1, const Vec3& xi2) {
  double m = 0.0;
  switch (spec.kind) {
    case SymbolKind::mp: m = detail::mp(xi1, xi2); break;
    case SymbolKind::mt: m = detail::mt(xi1, xi2); break;
    case SymbolKind::mp_swapped: m = detail::mp(xi2, xi1); break;
    case SymbolKind::mt_swapped: m = detail::mt(xi2, xi1); break;
    case SymbolKind::one: m = 1.0; break;
    case SymbolKind::custom:
      if (!spec.custom) throw InvalidArgument("custom symbol without a callable");
      m = spec.custom(xi1, xi2);
      if (!std::isfinite(m)) throw DegenerateInput("custom symbol is not finite at the evaluation point");
      break;
  }
  if (spec.divisor) {
    const double phi = eval_phase(*spec.divisor, xi1, xi2);
    if (phi == 0.0) throw DegenerateInput("phase vanishes at the evaluation point");
    m /= phi;
  }
  return m;
}

}  // namespace eplab
