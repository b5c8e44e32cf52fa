#pragma once

// Arbitrary-precision integers and rationals (GMP), p-adic valuations and
// integer factorization used by the bad-prime sieve.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/error.hpp"

namespace ellsurf {

using Integer = mpz_class;
/// Canonical rational: mpq_class keeps gcd(num, den) = 1 and den > 0 after
/// every arithmetic operation.
using Rat = mpq_class;

/// Valuation of zero.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

inline Rat make_rat(const Integer& num, const Integer& den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  Integer n(static_cast<unsigned long>(p));
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

inline void require_odd_prime(std::uint64_t p) {
  if (p < 3 || p > (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw InputError("modulus must be an odd prime below 2^31, got " + std::to_string(p));
  }
}

/// v_p(n); kInfiniteValuation for n = 0.
inline int valuation(const Integer& n, std::uint64_t p) {
  if (n == 0) return kInfiniteValuation;
  Integer m = abs(n);
  Integer pp(static_cast<unsigned long>(p));
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
    ++v;
  }
  return v;
}

inline int valuation(const Rat& q, std::uint64_t p) {
  if (q == 0) return kInfiniteValuation;
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow(const Rat& base, unsigned long e) {
  return make_rat(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
}

/// Prime factorization of |n|. Factors that trial division and Pollard-Brent
/// rho could not split within budget land in `unfactored` (composite).
struct IntegerFactorization {
  std::map<Integer, int> primes;
  std::vector<Integer> unfactored;

  /// True when p divides the factored integer, including via an unfactored
  /// cofactor.
  bool divisible_by(const Integer& p) const {
    if (primes.count(p)) return true;
    return std::any_of(unfactored.begin(), unfactored.end(), [&](const Integer& c) {
      return mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()) != 0;
    });
  }
};

namespace detail {

inline bool probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's variant; returns a nontrivial factor or 0 on budget exhaustion.
inline Integer pollard_brent(const Integer& n, unsigned long seed, std::size_t budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = seed % 1000 + 2, c = seed % 97 + 1, m = 128;
  Integer g = 1, r = 1, q = 1, x, ys;
  std::size_t steps = 0;
  auto f = [&](const Integer& v) {
    Integer w = v * v + c;
    mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
    return w;
  };
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      Integer lim = std::min<Integer>(m, Integer(r - k));
      for (Integer i = 0; i < lim; ++i) {
        y = f(y);
        Integer diff = abs(Integer(x - y));
        q = q * diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      steps += lim.get_ui();
      if (steps > budget) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Integer diff = abs(Integer(x - ys));
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

inline void split_cofactor(const Integer& n, IntegerFactorization& out, std::size_t budget) {
  if (n == 1) return;
  if (probable_prime(n)) {
    out.primes[n] += 1;
    return;
  }
  for (unsigned long seed = 1; seed <= 2; ++seed) {
    Integer d = pollard_brent(n, seed, budget);
    if (d != 0 && d != 1 && d != n) {
      split_cofactor(d, out, budget);
      split_cofactor(Integer(n / d), out, budget);
      return;
    }
  }
  out.unfactored.push_back(n);
}

}  // namespace detail

inline IntegerFactorization factor_integer(const Integer& value, std::size_t rho_budget = 40000) {
  IntegerFactorization out;
  Integer n = abs(value);
  if (n <= 1) return out;
  for (unsigned long d = 2; d < 20000; d += (d == 2 ? 1 : 2)) {
    if (Integer(d) * d > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        ++e;
      }
      out.primes[Integer(d)] += e;
    }
  }
  if (n > 1) {
    IntegerFactorization rest;
    detail::split_cofactor(n, rest, rho_budget);
    for (const auto& [p, e] : rest.primes) out.primes[p] += e;
    for (auto& c : rest.unfactored) out.unfactored.push_back(c);
    std::sort(out.unfactored.begin(), out.unfactored.end());
  }
  return out;
}

}  // namespace ellsurf
