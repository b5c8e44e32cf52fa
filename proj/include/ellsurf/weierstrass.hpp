#pragma once

// Minimal Weierstrass models y^2 = x^3 + a4(t) x + a6(t) over P^1_Q on the
// two affine charts U = Spec Q[t] and U' = Spec Q[s], s = 1/t.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/factor.hpp"
#include "ellsurf/ratfunc.hpp"

namespace ellsurf {

/// Delta = -16 (4 a4^3 + 27 a6^2).
inline QPoly discriminant_of(const QPoly& a4, const QPoly& a6) {
  QPoly inner = a4.pow(3) * Rat(4) + a6.pow(2) * Rat(27);
  return inner * Rat(-16);
}

/// j = -1728 (4 a4)^3 / Delta, in lowest terms.
inline QFunc j_invariant_of(const QPoly& a4, const QPoly& delta) {
  return QFunc((a4 * Rat(4)).pow(3) * Rat(-1728), delta);
}

/// Data of the model on the chart at infinity, in the coordinate s = 1/t.
struct ChartData {
  QPoly a4, a6, delta;
  QFunc j;
};

class WeierstrassSurface;
WeierstrassSurface minimal_model(const QFunc& a4_raw, const QFunc& a6_raw);

class WeierstrassSurface {
 public:
  const QPoly& a4() const { return a4_; }
  const QPoly& a6() const { return a6_; }
  int d() const { return d_; }
  const QPoly& delta() const { return delta_; }
  const QFunc& j() const { return j_; }
  const ChartData& at_infinity() const { return inf_; }

  /// P(x) = x^3 + a4 x + a6 evaluated at a rational function.
  QFunc weierstrass_cubic(const QFunc& x) const { return x.pow(3) + x * QFunc(a4_) + QFunc(a6_); }

 private:
  friend WeierstrassSurface minimal_model(const QFunc&, const QFunc&);
  WeierstrassSurface(QPoly a4, QPoly a6, int d);

  QPoly a4_, a6_;
  int d_ = 0;
  QPoly delta_;
  QFunc j_;
  ChartData inf_;
};

/// a_i' (s) = s^(i d) a_i(1/s); Delta' = s^(12 d) Delta(1/s). Applying it to
/// the result with the same d gives back the input.
inline ChartData chart_change(const QPoly& a4, const QPoly& a6, int d) {
  ChartData c;
  c.a4 = a4.reversed(4 * d);
  c.a6 = a6.reversed(6 * d);
  c.delta = discriminant_of(c.a4, c.a6);
  c.j = j_invariant_of(c.a4, c.delta);
  return c;
}

inline ChartData chart_change(const WeierstrassSurface& s) { return chart_change(s.a4(), s.a6(), s.d()); }

/// Smallest d >= 0 with deg a_i <= i d for i = 4, 6.
inline int weight_bound(const QPoly& a4, const QPoly& a6) {
  auto ceil_div = [](int n, int k) { return n <= 0 ? 0 : (n + k - 1) / k; };
  return std::max(ceil_div(a4.degree(), 4), ceil_div(a6.degree(), 6));
}

inline WeierstrassSurface::WeierstrassSurface(QPoly a4, QPoly a6, int d)
    : a4_(std::move(a4)), a6_(std::move(a6)), d_(d) {
  delta_ = discriminant_of(a4_, a6_);
  j_ = j_invariant_of(a4_, delta_);
  inf_ = chart_change(a4_, a6_, d_);
}

/// Returns (Delta, j).
inline std::pair<QPoly, QFunc> discriminant_and_j(const WeierstrassSurface& s) { return {s.delta(), s.j()}; }

/// Global minimal model over U. Clears denominators with u = 1/L (L the
/// monic lcm of the denominators) and strips every irreducible q with
/// v_q(a4) >= 4 and v_q(a6) >= 6.
inline WeierstrassSurface minimal_model(const QFunc& a4_raw, const QFunc& a6_raw) {
  QFunc inner = a4_raw.pow(3) * Rat(4) + a6_raw.pow(2) * Rat(27);
  if (inner.is_zero())
    throw DomainError(ErrorKind::SingularGenericFibre, "discriminant vanishes identically (4 a4^3 + 27 a6^2 = 0)");

  QPoly L = lcm(a4_raw.den(), a6_raw.den());
  QFunc a4f = a4_raw * QFunc(L.pow(4));
  QFunc a6f = a6_raw * QFunc(L.pow(6));
  ensure(a4f.is_polynomial() && a6f.is_polynomial(), "denominator clearing left a denominator");
  QPoly a4 = a4f.num(), a6 = a6f.num();

  QPoly common = a4.is_zero() ? a6 : a6.is_zero() ? a4 : gcd(a4, a6);
  if (common.degree() >= 1) {
    for (const auto& fac : factor_over_rationals(common).factors) {
      QPoly q = fac.poly.monic();
      int v4 = poly_valuation(a4, q), v6 = poly_valuation(a6, q);
      int e = std::min(v4 == kInfiniteValuation ? kInfiniteValuation : v4 / 4,
                       v6 == kInfiniteValuation ? kInfiniteValuation : v6 / 6);
      if (e <= 0) continue;
      auto ue = static_cast<unsigned>(e);
      if (!a4.is_zero()) a4 = exact_div(a4, q.pow(4 * ue));
      if (!a6.is_zero()) a6 = exact_div(a6, q.pow(6 * ue));
    }
  }

  int d = weight_bound(a4, a6);
  if (d == 0)
    throw DomainError(ErrorKind::NoSingularFibre,
                      "minimal model (a4, a6) = (" + a4.str() + ", " + a6.str() + ") is constant: no singular fibre");
  return WeierstrassSurface(std::move(a4), std::move(a6), d);
}

inline WeierstrassSurface minimal_model(const QPoly& a4, const QPoly& a6) { return minimal_model(QFunc(a4), QFunc(a6)); }

}  // namespace ellsurf
