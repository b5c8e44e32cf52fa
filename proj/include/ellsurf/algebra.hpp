#pragma once

// gcd, resultants, discriminants and squarefree decomposition.

#include <tuple>
#include <utility>
#include <vector>

#include "ellsurf/poly.hpp"
#include "ellsurf/zpoly.hpp"

namespace ellsurf {

namespace detail {

template <class F>
Poly<F> euclid_gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Primitive PRS over Z keeps coefficient growth bounded for Q inputs.
inline QPoly rational_gcd(const QPoly& a, const QPoly& b) {
  using namespace zpoly;
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  ZPoly A = primitive_form(a).second, B = primitive_form(b).second;
  if (deg(A) < deg(B)) std::swap(A, B);
  while (!B.empty()) {
    ZPoly R = prem(A, B);
    A = std::move(B);
    if (!R.empty()) R = scale_div(R, content(R));
    B = std::move(R);
  }
  return to_q(A).monic();
}

}  // namespace detail

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(const Poly<F>& a, const Poly<F>& b) {
  if constexpr (std::is_same_v<F, Rat>) {
    return detail::rational_gcd(a, b);
  } else {
    return detail::euclid_gcd(a, b);
  }
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> ext_gcd(const Poly<F>& a, const Poly<F>& b) {
  auto ctx = a.context();
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0 = Poly<F>::constant(ctx, 1), s1(ctx);
  Poly<F> t0(ctx), t1 = Poly<F>::constant(ctx, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = r0.one_elem() / r0.lead();
  return {r0 * inv, s0 * inv, t0 * inv};
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>(a.context());
  return exact_div(a * b, gcd(a, b)).monic();
}

namespace detail {

template <class F>
F field_resultant(Poly<F> a, Poly<F> b) {
  F one = a.one_elem();
  F acc = one;
  for (;;) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      F r = one;
      for (int i = 0; i < da; ++i) r *= b.lead();
      return acc * r;
    }
    if (da == 0) {
      F r = one;
      for (int i = 0; i < db; ++i) r *= a.lead();
      return acc * r;
    }
    if (da < db) {
      if (da % 2 == 1 && db % 2 == 1) acc = -acc;
      std::swap(a, b);
      continue;
    }
    // Res(a,b) = (-1)^(da db) Res(b,a) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
    Poly<F> r = a % b;
    if (r.is_zero()) return a.zero_elem();
    if (da % 2 == 1 && db % 2 == 1) acc = -acc;
    for (int i = 0; i < da - r.degree(); ++i) acc *= b.lead();
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace detail

/// Res(a,b) = lc(a)^deg b * prod over roots x of a of b(x).
template <class F>
F resultant(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) throw DomainError(ErrorKind::ZeroInput, "resultant of zero polynomial");
  if constexpr (std::is_same_v<F, Rat>) {
    auto [ua, za] = zpoly::primitive_form(a);
    auto [ub, zb] = zpoly::primitive_form(b);
    Rat r(zpoly::resultant(za, zb));
    return r * pow(ua, static_cast<unsigned long>(b.degree())) * pow(ub, static_cast<unsigned long>(a.degree()));
  } else {
    return detail::field_resultant(a, b);
  }
}

/// (-1)^(n(n-1)/2) Res(a, a') / lc(a).
template <class F>
F discriminant(const Poly<F>& a) {
  if (a.degree() < 1) throw DomainError(ErrorKind::ConstantInput, "discriminant of a constant");
  int n = a.degree();
  if (n == 1) return a.one_elem();
  Poly<F> da = a.derivative();
  if (da.is_zero()) return a.zero_elem();
  F r = resultant(a, da);
  // In characteristic p | n the derivative loses degree; the Sylvester
  // resultant at formal degree n-1 picks up lc(a)^(n-1-deg a').
  for (int i = da.degree(); i < n - 1; ++i) r *= a.lead();
  r /= a.lead();
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

template <class F>
bool is_squarefree(const Poly<F>& a) {
  if (a.is_zero()) return false;
  if (a.degree() <= 0) return true;
  return gcd(a, a.derivative()).degree() == 0;
}

template <class F>
struct SquarefreePart {
  Poly<F> poly;  // monic, squarefree
  int multiplicity;
};

namespace detail {

// Yun's algorithm, characteristic 0 or degree below the characteristic.
template <class F>
std::vector<SquarefreePart<F>> yun(const Poly<F>& monic_a) {
  std::vector<SquarefreePart<F>> out;
  Poly<F> da = monic_a.derivative();
  Poly<F> g = gcd(monic_a, da);
  Poly<F> b = exact_div(monic_a, g);
  Poly<F> c = exact_div(da, g);
  Poly<F> d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly<F> h = gcd(b, d);
    if (h.degree() > 0) out.push_back({h, i});
    b = exact_div(b, h);
    c = exact_div(d, h);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

// p-th root of a polynomial whose derivative vanishes (F_p: a^(1/p) = a).
inline FpPoly pth_root(const FpPoly& a) {
  std::uint64_t p = a.context().p;
  std::vector<FpElem> v;
  for (int i = 0; i <= a.degree(); i += static_cast<int>(p)) v.push_back(a.coeff(i));
  return FpPoly(a.context(), std::move(v));
}

// Squarefree decomposition over F_p for any degree (Musser / Yun with
// p-th power extraction).
inline std::vector<SquarefreePart<FpElem>> fp_squarefree(const FpPoly& monic_a) {
  std::vector<SquarefreePart<FpElem>> out;
  auto p = static_cast<int>(monic_a.context().p);
  auto add = [&out](const FpPoly& q, int m) {
    if (q.degree() <= 0) return;
    for (auto& part : out) {
      if (part.multiplicity == m) {
        part.poly = part.poly * q;
        return;
      }
    }
    out.push_back({q, m});
  };
  std::vector<std::pair<FpPoly, int>> stack{{monic_a, 1}};
  while (!stack.empty()) {
    auto [f, scale] = stack.back();
    stack.pop_back();
    if (f.degree() <= 0) continue;
    FpPoly df = f.derivative();
    if (df.is_zero()) {
      stack.push_back({pth_root(f), scale * p});
      continue;
    }
    FpPoly c = gcd(f, df);
    FpPoly w = exact_div(f, c);
    int i = 1;
    while (w.degree() > 0) {
      FpPoly y = gcd(w, c);
      FpPoly z = exact_div(w, y);
      add(z.monic(), i * scale);
      ++i;
      w = y;
      c = exact_div(c, y);
    }
    if (c.degree() > 0) stack.push_back({pth_root(c.monic()), scale * p});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.multiplicity < y.multiplicity; });
  for (auto& part : out) part.poly = part.poly.monic();
  return out;
}

}  // namespace detail

/// Pairwise coprime monic squarefree parts with multiplicities, sorted by
/// multiplicity: a = lc(a) * prod part^mult.
template <class F>
std::vector<SquarefreePart<F>> squarefree_decomposition(const Poly<F>& a) {
  if (a.is_zero()) throw DomainError(ErrorKind::ZeroInput, "squarefree decomposition of zero");
  if (a.degree() == 0) return {};
  if constexpr (std::is_same_v<F, Rat>) {
    return detail::yun(a.monic());
  } else {
    return detail::fp_squarefree(a.monic());
  }
}

}  // namespace ellsurf
