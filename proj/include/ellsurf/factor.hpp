#pragma once

// Irreducible factorization over F_p (Cantor-Zassenhaus) and over Q
// (Zassenhaus: factor modulo a good prime, Hensel lift past the Mignotte
// bound, recombine).

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ellsurf/algebra.hpp"
#include "ellsurf/zpoly.hpp"

namespace ellsurf {

template <class F>
struct Factor {
  Poly<F> poly;
  int multiplicity;
};

/// unit * prod poly^multiplicity. Over F_p the factors are monic; over Q they
/// are primitive integer polynomials with positive leading coefficient.
template <class F>
struct Factorization {
  F unit;
  std::vector<Factor<F>> factors;

  Poly<F> expand(typename Poly<F>::Context ctx) const {
    Poly<F> r = Poly<F>::constant(ctx, unit);
    for (const auto& f : factors) r *= f.poly.pow(static_cast<unsigned>(f.multiplicity));
    return r;
  }
};

namespace detail {

inline void sort_factors(std::vector<Factor<FpElem>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.poly != b.poly) return a.poly < b.poly;
    return a.multiplicity < b.multiplicity;
  });
}

// x^e mod f by square-and-multiply over the bits of a big exponent.
inline FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& f) {
  FpPoly r = FpPoly::constant(f.context(), 1) % f, b = base % f;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % f;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % f;
  }
  return r;
}

// Equal-degree splitting of a monic squarefree f whose irreducible factors
// all have degree d (p odd).
inline void equal_degree_split(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() <= d) {
    out.push_back(f);
    return;
  }
  std::uint64_t p = f.context().p;
  Integer e = (pow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coin(0, p - 1);
  for (;;) {
    std::vector<FpElem> c;
    for (int i = 0; i < f.degree(); ++i) c.push_back(FpElem::from_residue(coin(rng), p));
    FpPoly a(f.context(), std::move(c));
    if (a.degree() < 1) continue;
    FpPoly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(exact_div(f, g), d, rng, out);
      return;
    }
    FpPoly b = powmod(a, e, f) - FpPoly::constant(f.context(), 1);
    g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

// Distinct-degree then equal-degree factorization of a monic squarefree f.
inline std::vector<FpPoly> factor_squarefree_fp(FpPoly f, std::mt19937_64& rng) {
  std::vector<FpPoly> out;
  auto ctx = f.context();
  Integer p(static_cast<unsigned long>(ctx.p));
  FpPoly x = FpPoly::t(ctx);
  FpPoly h = x % f;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, p, f);
    FpPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      equal_degree_split(g, d, rng, out);
      f = exact_div(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back(f.monic());
  return out;
}

}  // namespace detail

/// Complete factorization over F_p. The seed drives the equal-degree
/// splitting; the sorted result does not depend on it.
inline Factorization<FpElem> factor_mod_p(const FpPoly& a, std::uint64_t seed = 0) {
  if (a.is_zero()) throw DomainError(ErrorKind::ZeroInput, "factorization of zero");
  Factorization<FpElem> out{a.lead(), {}};
  std::mt19937_64 rng(seed);
  for (const auto& part : squarefree_decomposition(a)) {
    for (auto& q : detail::factor_squarefree_fp(part.poly, rng)) out.factors.push_back({q.monic(), part.multiplicity});
  }
  detail::sort_factors(out.factors);
  return out;
}

/// True when a (degree >= 1) has no nontrivial factor over F_p.
inline bool is_irreducible_mod_p(const FpPoly& a) {
  if (a.degree() < 1) return false;
  auto f = factor_mod_p(a);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

namespace detail {

using zpoly::ZPoly;

struct HenselState {
  ZPoly g, h, s, t;
};

// One quadratic Hensel step modulo m -> m^2 (von zur Gathen & Gerhard 15.10):
// f = g h mod m, s g + t h = 1 mod m, h monic.
inline HenselState hensel_step(const ZPoly& f, HenselState st, const Integer& m) {
  using namespace zpoly;
  Integer m2 = m * m;
  ZPoly e = mod(sub(f, mul(st.g, st.h)), m2);
  auto [q, r] = divmod_mod(mul(st.s, e), st.h, m2);
  ZPoly g2 = mod(add(add(st.g, mul(st.t, e)), mul(q, st.g)), m2);
  ZPoly h2 = mod(add(st.h, r), m2);
  ZPoly b = mod(sub(add(mul(st.s, g2), mul(st.t, h2)), ZPoly{Integer(1)}), m2);
  auto [c, d] = divmod_mod(mul(st.s, b), h2, m2);
  ZPoly s2 = mod(sub(st.s, d), m2);
  ZPoly t2 = mod(sub(sub(st.t, mul(st.t, b)), mul(c, g2)), m2);
  return {g2, h2, s2, t2};
}

// Lift monic factors u_i of f mod p (f = lc(f) prod u_i mod p) to monic
// factors modulo p^(2^k) >= bound. Returns the final modulus.
inline Integer hensel_lift(const ZPoly& f, const std::vector<FpPoly>& u, std::uint64_t p, const Integer& bound,
                           std::vector<ZPoly>& out) {
  using namespace zpoly;
  Integer pp(static_cast<unsigned long>(p));
  Integer modulus = pp;
  while (modulus < bound) modulus *= modulus;

  struct Job {
    ZPoly f;
    std::vector<FpPoly> u;
  };
  std::vector<Job> jobs{{mod(f, modulus), u}};
  while (!jobs.empty()) {
    Job job = std::move(jobs.back());
    jobs.pop_back();
    if (job.u.size() == 1) {
      Integer inv, l = job.f.back();
      mpz_invert(inv.get_mpz_t(), l.get_mpz_t(), modulus.get_mpz_t());
      out.push_back(mod(scale(job.f, inv), modulus));
      continue;
    }
    std::size_t half = job.u.size() / 2;
    auto ctx = u.front().context();
    FpPoly left = FpPoly::constant(ctx, 1), right = FpPoly::constant(ctx, 1);
    for (std::size_t i = 0; i < half; ++i) left *= job.u[i];
    for (std::size_t i = half; i < job.u.size(); ++i) right *= job.u[i];
    FpPoly fbar = to_fp(job.f, p);
    right = right * fbar.lead();
    auto [one, s, t] = ext_gcd(right, left);
    ensure(one.degree() == 0, "Hensel factors not coprime");
    HenselState st{from_fp(right), from_fp(left), from_fp(s), from_fp(t)};
    for (Integer m = pp; m < modulus; m *= m) st = hensel_step(job.f, st, m);
    st.g = mod(st.g, modulus);
    st.h = mod(st.h, modulus);
    jobs.push_back({st.h, std::vector<FpPoly>(job.u.begin(), job.u.begin() + static_cast<long>(half))});
    jobs.push_back({st.g, std::vector<FpPoly>(job.u.begin() + static_cast<long>(half), job.u.end())});
  }
  return modulus;
}

inline std::uint64_t next_prime(std::uint64_t p) {
  do {
    ++p;
  } while (!is_prime(p));
  return p;
}

// Factor a primitive squarefree integer polynomial with positive leading
// coefficient into irreducibles over Z.
inline std::vector<ZPoly> zassenhaus(const ZPoly& f, std::uint64_t seed) {
  using namespace zpoly;
  int n = deg(f);
  if (n <= 1) return {f};

  // Pick the prime with the fewest modular factors among the first few
  // admissible ones.
  std::uint64_t best_p = 0;
  std::vector<FpPoly> best;
  std::mt19937_64 rng(seed);
  int tried = 0;
  for (std::uint64_t p = 3; tried < 6; p = next_prime(p)) {
    Integer pp(static_cast<unsigned long>(p));
    if (mpz_divisible_p(f.back().get_mpz_t(), pp.get_mpz_t())) continue;
    FpPoly fb = to_fp(f, p);
    if (!is_squarefree(fb)) continue;
    ++tried;
    auto fs = factor_squarefree_fp(fb.monic(), rng);
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best = std::move(fs);
    }
    if (best.size() == 1) return {f};
  }
  std::sort(best.begin(), best.end());

  // Mignotte: any factor's coefficients are bounded by 2^n ||f||_2; the
  // lc-scaled candidate needs modulus > 2 |lc| 2^n ||f||_2.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = 2 * abs(f.back()) * pow(Integer(2), static_cast<unsigned long>(n)) * norm;

  std::vector<ZPoly> lifted;
  Integer modulus = hensel_lift(f, best, best_p, bound, lifted);
  std::sort(lifted.begin(), lifted.end(), [](const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });

  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      Integer l = rest.back();
      ZPoly g{l}, h{l};
      std::vector<bool> in(lifted.size(), false);
      for (auto i : idx) in[i] = true;
      for (std::size_t i = 0; i < lifted.size(); ++i) {
        if (in[i])
          g = mod(mul(g, lifted[i]), modulus);
        else
          h = mod(mul(h, lifted[i]), modulus);
      }
      g = symmetric(g, modulus);
      h = symmetric(h, modulus);
      if (mul(g, h) == scale(rest, l)) {
        ZPoly pg = scale_div(g, content(g));
        if (pg.back() < 0) pg = scale(pg, Integer(-1));
        ZPoly ph = scale_div(h, content(h));
        if (ph.back() < 0) ph = scale(ph, Integer(-1));
        result.push_back(pg);
        rest = ph;
        std::vector<ZPoly> remaining;
        for (std::size_t i = 0; i < lifted.size(); ++i)
          if (!in[i]) remaining.push_back(lifted[i]);
        lifted = std::move(remaining);
        found = true;
        break;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == lifted.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (deg(rest) > 0) result.push_back(rest);
  return result;
}

}  // namespace detail

/// Irreducible factorization over Q: rational unit times primitive integer
/// factors with positive leading coefficient, sorted by (degree, coeffs).
inline Factorization<Rat> factor_over_rationals(const QPoly& a, std::uint64_t seed = 0) {
  if (a.is_zero()) throw DomainError(ErrorKind::ZeroInput, "factorization of zero");
  Factorization<Rat> out{Rat(0), {}};
  for (const auto& part : squarefree_decomposition(a)) {
    auto z = zpoly::primitive_form(part.poly).second;
    for (auto& q : detail::zassenhaus(z, seed)) out.factors.push_back({zpoly::to_q(q), part.multiplicity});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.poly != y.poly) return x.poly < y.poly;
    return x.multiplicity < y.multiplicity;
  });
  QPoly prod = QPoly::constant(QQ{}, 1);
  for (const auto& f : out.factors) prod *= f.poly.pow(static_cast<unsigned>(f.multiplicity));
  out.unit = a.lead() / prod.lead();
  return out;
}

}  // namespace ellsurf
