#pragma once

// Integer polynomials as plain coefficient vectors (ascending). Used where
// fractions must be avoided: subresultant sequences, Hensel lifting and
// recombination.

#include <utility>
#include <vector>

#include "ellsurf/poly.hpp"

namespace ellsurf::zpoly {

using ZPoly = std::vector<Integer>;

inline void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }
inline Integer lead(const ZPoly& a) { return a.empty() ? Integer(0) : a.back(); }

inline Integer content(const ZPoly& a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

inline ZPoly scale_div(ZPoly a, const Integer& d) {
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  return a;
}

inline ZPoly scale(ZPoly a, const Integer& s) {
  for (auto& c : a) c *= s;
  trim(a);
  return a;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline ZPoly sub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline ZPoly add(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline ZPoly prem(ZPoly a, const ZPoly& b) {
  int db = deg(b);
  if (deg(a) < db) return a;
  int delta = deg(a) - db + 1;
  const Integer& lb = b.back();
  while (!a.empty() && deg(a) >= db) {
    Integer la = a.back();
    int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(shift + j)] -= la * b[static_cast<std::size_t>(j)];
    trim(a);
    --delta;
  }
  if (delta > 0) a = scale(std::move(a), pow(lb, static_cast<unsigned long>(delta)));
  return a;
}

/// Primitive integer form of a rational polynomial: a = unit * prim with
/// prim primitive and lc(prim) > 0.
inline std::pair<Rat, ZPoly> primitive_form(const QPoly& a) {
  if (a.is_zero()) return {Rat(0), {}};
  Integer l = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly z;
  z.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) z.push_back(Integer(c.get_num() * (l / c.get_den())));
  Integer g = content(z);
  if (z.back() < 0) g = -g;
  z = scale_div(std::move(z), g);
  return {make_rat(g, l), z};
}

inline QPoly to_q(const ZPoly& a) {
  std::vector<Rat> v;
  v.reserve(a.size());
  for (const auto& c : a) v.emplace_back(c);
  return QPoly(QQ{}, std::move(v));
}

/// Subresultant PRS resultant of integer polynomials, Res(a,b) =
/// lc(a)^deg b * prod_{a(x)=0} b(x).
inline Integer resultant(ZPoly A, ZPoly B) {
  trim(A);
  trim(B);
  if (A.empty() || B.empty()) return 0;
  Integer a = content(A), b = content(B);
  A = scale_div(std::move(A), a);
  B = scale_div(std::move(B), b);
  Integer t = pow(a, static_cast<unsigned long>(deg(B))) * pow(b, static_cast<unsigned long>(deg(A)));
  Integer g = 1, h = 1;
  int s = 1;
  if (deg(A) < deg(B)) {
    std::swap(A, B);
    if (deg(A) % 2 == 1 && deg(B) % 2 == 1) s = -s;
  }
  if (deg(B) == 0) return s * t * pow(B[0], static_cast<unsigned long>(deg(A)));
  for (;;) {
    int delta = deg(A) - deg(B);
    if (deg(A) % 2 == 1 && deg(B) % 2 == 1) s = -s;
    ZPoly R = prem(A, B);
    A = std::move(B);
    if (R.empty()) return 0;
    Integer divisor = g * pow(h, static_cast<unsigned long>(delta));
    B = scale_div(std::move(R), divisor);
    g = lead(A);
    // h <- g^delta / h^(delta-1); exact.
    if (delta == 0) {
      // h unchanged
    } else {
      Integer num = pow(g, static_cast<unsigned long>(delta));
      Integer den = pow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (deg(B) <= 0) break;
  }
  int da = deg(A);
  Integer num = pow(B[0], static_cast<unsigned long>(da));
  Integer den = pow(h, static_cast<unsigned long>(da - 1));
  Integer hh;
  mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return s * t * hh;
}

// Arithmetic modulo m (non-negative representatives).

inline ZPoly mod(ZPoly a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(a);
  return a;
}

/// Symmetric representatives in (-m/2, m/2].
inline ZPoly symmetric(ZPoly a, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  trim(a);
  return a;
}

/// Division by a polynomial whose leading coefficient is invertible mod m.
inline std::pair<ZPoly, ZPoly> divmod_mod(ZPoly a, const ZPoly& b, const Integer& m) {
  a = mod(std::move(a), m);
  int db = deg(b);
  if (deg(a) < db) return {{}, a};
  Integer inv;
  Integer lb = b.back();
  mpz_invert(inv.get_mpz_t(), lb.get_mpz_t(), m.get_mpz_t());
  ZPoly q(static_cast<std::size_t>(deg(a) - db + 1), Integer(0));
  for (int i = deg(a); i >= db; --i) {
    Integer c = a[static_cast<std::size_t>(i)] * inv;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& r = a[static_cast<std::size_t>(i - db + j)];
      r -= c * b[static_cast<std::size_t>(j)];
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    }
  }
  a.resize(static_cast<std::size_t>(db));
  trim(a);
  trim(q);
  return {q, a};
}

inline ZPoly from_fp(const FpPoly& a) {
  ZPoly z;
  for (const auto& c : a.coeffs()) z.emplace_back(static_cast<unsigned long>(c.residue()));
  return z;
}

inline FpPoly to_fp(const ZPoly& a, std::uint64_t p) {
  std::vector<FpElem> v;
  Integer pp(static_cast<unsigned long>(p));
  for (const auto& c : a) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
    v.push_back(FpElem::from_residue(r.get_ui(), p));
  }
  return FpPoly({p}, std::move(v));
}

}  // namespace ellsurf::zpoly
