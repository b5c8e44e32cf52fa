#pragma once

// Good-reduction conditions for a prime p: every one of a4, a6, Delta, j on
// both charts must keep its factorization type mod p, and p must not be 2
// or 3. The sieve computes a finite set of primes outside which this holds.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ellsurf/kodaira.hpp"

namespace ellsurf {

/// (degree, multiplicity) pairs; multiplicities of denominator factors are
/// negative.
struct FactorizationType {
  int unit_valuation = 0;
  std::vector<std::pair<int, int>> parts;

  friend bool operator==(const FactorizationType&, const FactorizationType&) = default;
};

/// Irreducible factorization of a rational function, numerator and
/// denominator separately. unit() is the p-adic unit of the primitive form.
struct FactoredFunction {
  std::string name;
  QFunc f;
  Factorization<Rat> num, den;

  bool is_zero() const { return f.is_zero(); }
  Rat unit() const { return num.unit / den.unit; }

  /// Factors with signed multiplicity (denominator negative).
  std::vector<Factor<Rat>> all_factors() const {
    std::vector<Factor<Rat>> out = num.factors;
    for (const auto& g : den.factors) out.push_back({g.poly, -g.multiplicity});
    return out;
  }

  FactorizationType type_over_q(std::uint64_t p) const {
    FactorizationType t;
    t.unit_valuation = valuation(unit(), p);
    for (const auto& g : all_factors()) t.parts.emplace_back(g.poly.degree(), g.multiplicity);
    std::sort(t.parts.begin(), t.parts.end());
    return t;
  }
};

inline FactoredFunction factor_function(std::string name, const QFunc& f) {
  FactoredFunction out{std::move(name), f, {Rat(0), {}}, {Rat(1), {}}};
  if (f.is_zero()) return out;
  out.num = factor_over_rationals(f.num());
  out.den = factor_over_rationals(f.den());
  return out;
}

/// The eight functions the conditions are stated for, factored once.
struct FactoredSurface {
  std::vector<FactoredFunction> functions;
};

inline FactoredSurface factor_surface(const WeierstrassSurface& s) {
  const auto& inf = s.at_infinity();
  FactoredSurface out;
  out.functions.push_back(factor_function("a4", QFunc(s.a4())));
  out.functions.push_back(factor_function("a6", QFunc(s.a6())));
  out.functions.push_back(factor_function("delta", QFunc(s.delta())));
  out.functions.push_back(factor_function("j", s.j()));
  out.functions.push_back(factor_function("a4'", QFunc(inf.a4)));
  out.functions.push_back(factor_function("a6'", QFunc(inf.a6)));
  out.functions.push_back(factor_function("delta'", QFunc(inf.delta)));
  out.functions.push_back(factor_function("j'", inf.j));
  return out;
}

struct FunctionDiagnostic {
  std::string name;
  bool integral = true;
  bool preserved = true;
  std::string reason;  // empty when preserved
  FactorizationType over_q;
  std::optional<FactorizationType> over_fp;  // set when the function is p-integral
};

namespace detail {

inline FactorizationType fp_type(const FpFunc& f, std::uint64_t seed) {
  FactorizationType t;
  if (f.is_zero()) return t;
  for (const auto& g : factor_mod_p(f.num(), seed).factors) t.parts.emplace_back(g.poly.degree(), g.multiplicity);
  for (const auto& g : factor_mod_p(f.den(), seed).factors) t.parts.emplace_back(g.poly.degree(), -g.multiplicity);
  std::sort(t.parts.begin(), t.parts.end());
  return t;
}

}  // namespace detail

/// Checks each clause directly on the reductions: unit, leading
/// coefficients, separability, pairwise coprimality.
inline FunctionDiagnostic diagnose(const FactoredFunction& ff, std::uint64_t p, bool with_fp_type = true) {
  FunctionDiagnostic d;
  d.name = ff.name;
  if (ff.is_zero()) {
    d.over_fp = FactorizationType{};
    return d;
  }
  d.over_q = ff.type_over_q(p);
  auto fail = [&](std::string why) {
    if (d.preserved) d.reason = std::move(why);
    d.preserved = false;
  };
  const std::string ps = std::to_string(p);
  if (d.over_q.unit_valuation < 0) {
    d.integral = false;
    fail("not " + ps + "-integral: unit " + to_string(ff.unit()) + " has negative valuation");
    return d;
  }
  if (d.over_q.unit_valuation > 0) fail("unit " + to_string(ff.unit()) + " vanishes mod " + ps);

  auto factors = ff.all_factors();
  std::vector<std::optional<FpPoly>> red;
  for (const auto& g : factors) {
    if (valuation(g.poly.lead(), p) > 0) {
      fail("leading coefficient of factor " + g.poly.str() + " vanishes mod " + ps);
      red.emplace_back();
      continue;
    }
    FpPoly r = reduce_mod_p(g.poly, p);
    if (gcd(r, r.derivative()).degree() > 0) fail("reduction of factor " + g.poly.str() + " is inseparable mod " + ps);
    red.emplace_back(std::move(r));
  }
  for (std::size_t i = 0; i < red.size(); ++i) {
    for (std::size_t k = i + 1; k < red.size(); ++k) {
      if (!red[i] || !red[k]) continue;
      if (gcd(*red[i], *red[k]).degree() > 0)
        fail("reductions of " + factors[i].poly.str() + " and " + factors[k].poly.str() + " share a factor mod " + ps);
    }
  }
  if (with_fp_type) d.over_fp = detail::fp_type(reduce_mod_p(ff.f, p), 0);
  return d;
}

/// Factorization types over Q and F_p and whether the type is maintained.
/// Throws NonIntegral when f is not p-integral.
inline std::tuple<FactorizationType, FactorizationType, bool> factorization_type(const QFunc& f, std::uint64_t p) {
  require_odd_prime(p);
  auto d = diagnose(factor_function("f", f), p);
  if (!d.integral) throw DomainError(ErrorKind::NonIntegral, d.reason);
  return {d.over_q, *d.over_fp, d.preserved};
}

struct StarReport {
  std::uint64_t p = 0;
  bool pass = false;
  bool residue_char_ok = false;  // p is not 2 or 3
  std::vector<FunctionDiagnostic> diagnostics;
  /// Over Q the ramification index is 1 <= p - 1, so the second condition
  /// coincides with the first.
  bool specialization_ok = false;
  std::string specialization_note;
};

inline StarReport check_star(const FactoredSurface& fs, std::uint64_t p, bool with_fp_types = true) {
  if (p < 2 || !is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
  StarReport r;
  r.p = p;
  r.residue_char_ok = p != 2 && p != 3;
  bool all = r.residue_char_ok;
  if (p != 2) {
    for (const auto& ff : fs.functions) {
      r.diagnostics.push_back(diagnose(ff, p, with_fp_types));
      all = all && r.diagnostics.back().preserved;
    }
  }
  r.pass = all;
  r.specialization_ok = all;
  r.specialization_note = "K = Q: ramification index e = 1 <= p - 1, so the Neron-Severi specialization condition holds exactly when the good-reduction check passes";
  return r;
}

inline StarReport check_star(const WeierstrassSurface& s, std::uint64_t p) { return check_star(factor_surface(s), p); }

enum class CertificateKind {
  ResidueCharacteristic,
  Denominator,
  LeadingCoefficient,
  FactorDiscriminant,
  FactorResultant,
  UnitValuation,
};

inline std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::ResidueCharacteristic: return "residue-char";
    case CertificateKind::Denominator: return "denominator";
    case CertificateKind::LeadingCoefficient: return "leading-coefficient";
    case CertificateKind::FactorDiscriminant: return "discriminant-of-factor";
    case CertificateKind::FactorResultant: return "resultant-of-factor-pair";
    case CertificateKind::UnitValuation: return "unit-valuation";
  }
  return "?";
}

struct Certificate {
  CertificateKind kind;
  std::string function;  // empty for residue-char
  std::string detail;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Primes (with the divisibility that convicted them) outside of which the
/// conditions hold. `unfactored` lists composite cofactors of certificate
/// integers that could not be split; every prime dividing one is treated as
/// bad by contains().
struct BadPrimeSet {
  std::map<Integer, std::vector<Certificate>> reasons;
  std::vector<std::pair<Integer, Certificate>> unfactored;

  std::vector<Integer> primes() const {
    std::vector<Integer> out;
    for (const auto& [p, _] : reasons) out.push_back(p);
    return out;
  }

  bool contains(const Integer& p) const {
    if (reasons.count(p)) return true;
    return std::any_of(unfactored.begin(), unfactored.end(),
                       [&](const auto& u) { return mpz_divisible_p(u.first.get_mpz_t(), p.get_mpz_t()) != 0; });
  }
};

namespace detail {

inline void convict(BadPrimeSet& out, const Integer& n, const Certificate& c) {
  auto fac = factor_integer(n);
  for (const auto& [q, _] : fac.primes) {
    auto& v = out.reasons[q];
    if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
  }
  for (const auto& u : fac.unfactored) out.unfactored.emplace_back(u, c);
}

}  // namespace detail

inline BadPrimeSet bad_primes(const FactoredSurface& fs) {
  BadPrimeSet out;
  out.reasons[2].push_back({CertificateKind::ResidueCharacteristic, "", "p = 2"});
  out.reasons[3].push_back({CertificateKind::ResidueCharacteristic, "", "p = 3"});
  for (const auto& ff : fs.functions) {
    if (ff.is_zero()) continue;
    const std::string& fn = ff.name;
    for (const QPoly* part : {&ff.f.num(), &ff.f.den()}) {
      for (const auto& c : part->coeffs()) {
        if (c.get_den() != 1)
          detail::convict(out, c.get_den(), {CertificateKind::Denominator, fn, "denominator of coefficient " + to_string(c)});
      }
    }
    Rat u = ff.unit();
    detail::convict(out, u.get_num(), {CertificateKind::UnitValuation, fn, "unit " + to_string(u)});
    detail::convict(out, u.get_den(), {CertificateKind::UnitValuation, fn, "unit " + to_string(u)});
    auto factors = ff.all_factors();
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const QPoly& g = factors[i].poly;
      detail::convict(out, g.lead().get_num(), {CertificateKind::LeadingCoefficient, fn, "lc(" + g.str() + ")"});
      if (g.degree() >= 2) {
        Rat disc = discriminant(g);
        ensure(disc.get_den() == 1 && disc != 0, "discriminant of an irreducible integer factor");
        detail::convict(out, disc.get_num(),
                        {CertificateKind::FactorDiscriminant, fn, "disc(" + g.str() + ") = " + to_string(disc)});
      }
      for (std::size_t k = i + 1; k < factors.size(); ++k) {
        const QPoly& h = factors[k].poly;
        Rat res = resultant(g, h);
        ensure(res.get_den() == 1 && res != 0, "resultant of distinct irreducible integer factors");
        detail::convict(out, res.get_num(),
                        {CertificateKind::FactorResultant, fn,
                         "Res(" + g.str() + ", " + h.str() + ") = " + to_string(res)});
      }
    }
  }
  return out;
}

inline BadPrimeSet bad_primes(const WeierstrassSurface& s) { return bad_primes(factor_surface(s)); }

}  // namespace ellsurf
