#pragma once

// Sections of the reduced surface y^2 = x^3 + a4 x + a6 over F_p(t), found by
// exhaustive search over x = A / B^2.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

/// y^2 = x^3 + a4 x + a6 holds exactly in F_p(t). y carries the normalized
/// sign; (x, -y) is the negation.
struct SectionModP {
  FpFunc x;
  FpFunc y;

  SectionModP negated() const { return {x, -y}; }
};

/// Reductions of a4 and a6 at p.
struct ReducedCoefficients {
  std::uint64_t p;
  FpPoly a4, a6;

  FpFunc cubic(const FpFunc& x) const { return x.pow(3) + x * FpFunc(a4) + FpFunc(a6); }
};

inline ReducedCoefficients reduce_coefficients(const WeierstrassSurface& s, std::uint64_t p) {
  require_odd_prime(p);
  try {
    return {p, reduce_mod_p(s.a4(), p), reduce_mod_p(s.a6(), p)};
  } catch (const DomainError& e) {
    throw DomainError(ErrorKind::ReductionFails, "coefficients do not reduce mod " + std::to_string(p) + ": " + e.what());
  }
}

inline std::optional<SectionModP> is_section_x(const ReducedCoefficients& rc, const FpFunc& x) {
  auto y = is_perfect_square(rc.cubic(x));
  if (!y) return std::nullopt;
  return SectionModP{x, *y};
}

/// Throws ReductionFails when a4 or a6 is not p-integral.
inline std::optional<SectionModP> is_section_x(const WeierstrassSurface& s, std::uint64_t p, const FpFunc& x) {
  return is_section_x(reduce_coefficients(s, p), x);
}

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

struct SearchBounds {
  int num_deg = -1;  // -1: 2 d + 2 den_deg
  int den_deg = 0;
  std::uint64_t budget = kDefaultSearchBudget;
};

namespace detail {

// Visits the coefficient vectors (leading coefficient first) of every
// polynomial over F_p of degree exactly k, monic when requested, in
// increasing lexicographic order. k = -1 visits the zero polynomial.
template <class Fn>
void for_each_poly_of_degree(std::uint64_t p, int k, bool monic, Fn&& fn) {
  std::vector<std::uint64_t> digits;
  if (k < 0) {
    fn(digits);
    return;
  }
  digits.assign(static_cast<std::size_t>(k) + 1, 0);
  digits[0] = 1;
  for (;;) {
    fn(digits);
    std::size_t i = digits.size();
    while (i-- > 0) {
      std::uint64_t limit = (i == 0 && monic) ? 2 : p;
      if (++digits[i] < limit) break;
      digits[i] = i == 0 ? 1 : 0;
      if (i == 0) return;
    }
  }
}

inline FpPoly from_digits(const std::vector<std::uint64_t>& top_first, std::uint64_t p) {
  std::vector<FpElem> c;
  for (std::size_t i = top_first.size(); i-- > 0;) c.push_back(FpElem::from_residue(top_first[i], p));
  return FpPoly({p}, std::move(c));
}

inline std::vector<std::uint64_t> values_at_points(const FpPoly& f, std::uint64_t p, std::uint64_t np) {
  std::vector<std::uint64_t> v(np, 0);
  for (std::uint64_t t = 0; t < np; ++t) {
    std::uint64_t acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = (acc * t + f.coeff(i).residue()) % p;
    v[t] = acc;
  }
  return v;
}

inline std::uint64_t saturating_pow(std::uint64_t p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > UINT64_MAX / p) return UINT64_MAX;
    r *= p;
  }
  return r;
}

}  // namespace detail

/// Number of (A, B) pairs the search would visit before the coprimality
/// filter.
inline std::uint64_t search_space_size(std::uint64_t p, int num_deg, int den_deg) {
  std::uint64_t a = detail::saturating_pow(p, num_deg + 1), total = 0;
  for (int k = 0; k <= den_deg; ++k) {
    std::uint64_t b = detail::saturating_pow(p, k);
    if (b != 0 && a > UINT64_MAX / b) return UINT64_MAX;
    if (total > UINT64_MAX - a * b) return UINT64_MAX;
    total += a * b;
  }
  return total;
}

/// Every x = A / B^2 (B monic, gcd(A, B) = 1, deg A <= num_deg, deg B <=
/// den_deg) with x^3 + a4 x + a6 a square, ordered by (B, A) with polynomials
/// compared by degree and then coefficients from the top. A value check at
/// small t in F_p discards most candidates before the exact test.
inline std::vector<SectionModP> search_sections(const WeierstrassSurface& s, std::uint64_t p, SearchBounds bounds = {}) {
  auto rc = reduce_coefficients(s, p);
  if (bounds.den_deg < 0) throw InputError("den_deg must be >= 0");
  int num_deg = bounds.num_deg >= 0 ? bounds.num_deg : 2 * s.d() + 2 * bounds.den_deg;
  std::uint64_t size = search_space_size(p, num_deg, bounds.den_deg);
  if (size > bounds.budget)
    throw DomainError(ErrorKind::BudgetExceeded, "search space of " + (size == UINT64_MAX ? std::string("> 2^64") : std::to_string(size)) +
                                                     " candidates exceeds budget " + std::to_string(bounds.budget));

  // Filter on at most 64 points; a square table for small p, Euler's
  // criterion otherwise.
  const std::uint64_t np = std::min<std::uint64_t>(p, 64);
  std::vector<char> sq_table;
  if (p <= (1u << 16)) {
    sq_table.assign(p, 0);
    for (std::uint64_t r = 0; r < p; ++r) sq_table[r * r % p] = 1;
  }
  auto is_sq = [&](std::uint64_t n) { return sq_table.empty() ? FpElem::from_residue(n, p).is_square() : sq_table[n] != 0; };
  auto a4v = detail::values_at_points(rc.a4, p, np), a6v = detail::values_at_points(rc.a6, p, np);

  std::vector<SectionModP> out;
  for (int kb = 0; kb <= bounds.den_deg; ++kb) {
    detail::for_each_poly_of_degree(p, kb, true, [&](const std::vector<std::uint64_t>& bd) {
      FpPoly B = detail::from_digits(bd, p);
      auto bv = detail::values_at_points(B, p, np);
      std::vector<std::uint64_t> b4(np), b6(np);
      for (std::uint64_t t = 0; t < np; ++t) {
        std::uint64_t b2 = bv[t] * bv[t] % p;
        b4[t] = b2 * b2 % p;
        b6[t] = b4[t] * b2 % p;
      }
      FpPoly B2 = B * B;
      for (int ka = -1; ka <= num_deg; ++ka) {
        detail::for_each_poly_of_degree(p, ka, false, [&](const std::vector<std::uint64_t>& ad) {
          // A^3 + a4 A B^4 + a6 B^6 is the numerator of P(A / B^2) times B^6.
          for (std::uint64_t t = 0; t < np; ++t) {
            std::uint64_t a = 0;
            for (auto c : ad) a = (a * t + c) % p;
            std::uint64_t n = (a * a % p * a + a4v[t] * a % p * b4[t] + a6v[t] * b6[t]) % p;
            if (!is_sq(n)) return;
          }
          FpPoly A = detail::from_digits(ad, p);
          if (kb > 0 && gcd(A, B).degree() > 0) return;
          if (auto sec = is_section_x(rc, FpFunc(A, B2))) out.push_back(std::move(*sec));
        });
      }
    });
  }
  return out;
}

}  // namespace ellsurf
