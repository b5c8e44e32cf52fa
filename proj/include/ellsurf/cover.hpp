#pragma once

// Double covers attached to a section of the reduction: lift x = f0/f1 to
// Q(t), adjoin g with g^2 = G = P(f), and check that the special fibre of the
// cover splits into the two branches g = +-gbar.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/sections.hpp"
#include "ellsurf/sieve.hpp"

namespace ellsurf {

/// f = (f0 + p * lambda) / f1.
struct Lift {
  QPoly f0, f1;
  std::uint64_t p = 0;
  int lambda = 0;

  QPoly shifted_numerator() const {
    return f0 + QPoly::constant(QQ{}, Rat(static_cast<long>(p)) * Rat(lambda));
  }
  QFunc f() const { return QFunc(shifted_numerator(), f1); }
};

namespace detail {

inline QPoly balanced_lift(const FpPoly& a) {
  std::vector<Rat> c;
  for (const auto& e : a.coeffs()) c.emplace_back(static_cast<long>(e.balanced()));
  return QPoly(QQ{}, std::move(c));
}

}  // namespace detail

/// Coefficient-wise lift with balanced representatives; lambda = 0.
inline Lift lift_x(const FpFunc& x, std::uint64_t p) {
  Lift l{detail::balanced_lift(x.num()), detail::balanced_lift(x.den()), p, 0};
  ensure(l.f1.degree() == x.den().degree() && l.f0.degree() == x.num().degree(), "lift changed a degree");
  ensure(l.f0.is_zero() ? l.f1.degree() == 0 : gcd(l.f0, l.f1).degree() == 0, "lift of a reduced fraction is not coprime");
  return l;
}

/// J = (f0 + p lambda)^3 + a4 f1^2 (f0 + p lambda) + a6 f1^3 = f1^3 P(f).
inline QPoly lift_cubic(const WeierstrassSurface& s, const Lift& l) {
  QPoly n = l.shifted_numerator();
  return n.pow(3) + s.a4() * l.f1.pow(2) * n + s.a6() * l.f1.pow(3);
}

/// Why a given lambda is rejected; empty when accepted.
inline std::string lambda_rejection(const WeierstrassSurface& s, const Lift& l) {
  QPoly J = lift_cubic(s, l);
  if (J.is_zero()) return "J = 0";
  if (J.degree() > 0 && gcd(J, J.derivative()).degree() > 0) return "J = " + J.str() + " is not squarefree";
  if (gcd(J, l.f1).degree() > 0) return "J and f1 share a factor";
  auto k = squarefree_kernel(s.weierstrass_cubic(l.f()));
  if (k.S.degree() < 1) return "squarefree kernel of G is constant";
  return "";
}

/// Smallest lambda in [0, lambda_max] whose J is nonzero, squarefree, coprime
/// to f1 and gives G a nonconstant squarefree kernel.
inline Lift lambda_scan(const WeierstrassSurface& s, Lift lift, int lambda_max) {
  if (lambda_max < 0) throw InputError("lambda_max must be >= 0");
  for (int lam = 0; lam <= lambda_max; ++lam) {
    lift.lambda = lam;
    if (lambda_rejection(s, lift).empty()) return lift;
  }
  throw DomainError(ErrorKind::ScanExhausted, "no lambda in [0, " + std::to_string(lambda_max) + "] gives a squarefree J");
}

inline constexpr int kDefaultLambdaMax = 100;

/// A zero (order > 0) or pole (order < 0) of gbar. place is a monic
/// irreducible polynomial over F_p, or nullopt for infinity.
struct DivisorPoint {
  std::optional<FpPoly> place;
  int order = 0;

  bool at_infinity() const { return !place.has_value(); }
  std::string place_str() const { return place ? place->str() : "inf"; }
};

struct SpecialFibreReport {
  bool split = false;
  FpFunc g_bar;
  std::vector<DivisorPoint> intersection;
  bool involution_swap = false;
};

struct CoverData {
  WeierstrassSurface surface;
  std::uint64_t p = 0;
  SectionModP section;
  Lift lift;
  QFunc G;
  QPoly J;
  SquarefreeKernel kernel;
  int genus = 0;
  std::string two_section;
  std::vector<std::string> warnings;
};

/// Zeros and poles of a rational function over F_p, infinity last.
inline std::vector<DivisorPoint> divisor_of(const FpFunc& g) {
  std::vector<DivisorPoint> out;
  if (g.is_zero()) return out;
  for (const auto& f : factor_mod_p(g.num()).factors) out.push_back({f.poly, f.multiplicity});
  for (const auto& f : factor_mod_p(g.den()).factors) out.push_back({f.poly, -f.multiplicity});
  std::sort(out.begin(), out.end(), [](const DivisorPoint& a, const DivisorPoint& b) { return *a.place < *b.place; });
  int at_inf = g.den().degree() - g.num().degree();
  if (at_inf != 0) out.push_back({std::nullopt, at_inf});
  return out;
}

inline SpecialFibreReport special_fibre(const CoverData& c) {
  SpecialFibreReport r;
  FpFunc Gbar = reduce_mod_p(c.G, c.p);
  auto root = is_perfect_square(Gbar);
  r.split = root.has_value() && !Gbar.is_zero();
  if (!r.split) return r;
  r.g_bar = *root;
  r.intersection = divisor_of(r.g_bar);
  // The involution g -> -g exchanges the branches g = gbar and g = -gbar,
  // which are distinct because gbar != 0 and p is odd.
  r.involution_swap = r.g_bar != -r.g_bar;
  return r;
}

/// Every structural claim about a cover, rechecked from its stored data.
/// Returns the failed checks.
inline std::vector<std::string> cover_failures(const CoverData& c) {
  std::vector<std::string> bad;
  const auto& s = c.surface;
  QFunc f = c.lift.f();
  if (lift_cubic(s, c.lift) != c.J) bad.push_back("J differs from f1^3 P(f)");
  if (QFunc(c.J) != c.G * QFunc(c.lift.f1.pow(3))) bad.push_back("G differs from J / f1^3");
  if (s.weierstrass_cubic(f) != c.G) bad.push_back("G differs from P(f)");
  if (c.J.is_zero() || (c.J.degree() > 0 && gcd(c.J, c.J.derivative()).degree() > 0)) bad.push_back("J not squarefree");
  if (gcd(c.J, c.lift.f1).degree() > 0) bad.push_back("J not coprime to f1");
  if (c.kernel.S.degree() < 1) bad.push_back("squarefree kernel is constant");
  if (c.kernel.v.is_zero() || QFunc(c.kernel.S) * c.kernel.v * c.kernel.v * c.kernel.c != c.G) bad.push_back("kernel does not reconstruct G");
  if (c.kernel.S.degree() >= 1 && c.genus != (c.kernel.S.degree() - 1) / 2) bad.push_back("genus formula");
  try {
    if (reduce_mod_p(f, c.p) != c.section.x) bad.push_back("lift does not reduce to x");
    if (reduce_mod_p(c.G, c.p) != c.section.y * c.section.y) bad.push_back("G does not reduce to gbar^2");
  } catch (const DomainError& e) {
    bad.push_back(std::string("reduction failed: ") + e.what());
  }
  if (c.lift.f0.degree() != c.section.x.num().degree() || c.lift.f1.degree() != c.section.x.den().degree())
    bad.push_back("lift degrees differ from the reduction");
  return bad;
}

/// Refuses a prime failing the good-reduction check unless forced (BadPrimeRefused); returns the
/// warnings a forced construction carries.
inline std::vector<std::string> admit_prime(const WeierstrassSurface& s, std::uint64_t p, bool force) {
  require_odd_prime(p);
  auto star = check_star(s, p);
  if (star.pass) return {};
  std::string why = star.residue_char_ok ? "" : "residue characteristic " + std::to_string(p);
  for (const auto& d : star.diagnostics)
    if (!d.preserved && why.empty()) why = d.name + ": " + d.reason;
  if (!force)
    throw DomainError(ErrorKind::BadPrimeRefused, "p = " + std::to_string(p) + " fails the good-reduction check (" + why + "); pass --force to proceed");
  return {"bad prime " + std::to_string(p) + " forced: good-reduction check fails (" + why + "); the torsion conclusion is not justified at this prime"};
}

namespace detail {

inline std::pair<CoverData, SpecialFibreReport> assemble_cover(const WeierstrassSurface& s, std::uint64_t p,
                                                               const SectionModP& sec, int lambda_max,
                                                               std::vector<std::string> warnings) {
  auto rc = reduce_coefficients(s, p);
  if (sec.x.context().p != p || rc.cubic(sec.x) != sec.y * sec.y)
    throw DomainError(ErrorKind::NotASection, "y^2 != x^3 + a4 x + a6 mod " + std::to_string(p) + " for x = " + sec.x.str());
  if (sec.y.is_zero())
    throw DomainError(ErrorKind::TwoTorsionDegenerate, "gbar = 0: x = " + sec.x.str() + " is a 2-torsion section");

  Lift lift = lambda_scan(s, lift_x(sec.x, p), lambda_max);
  CoverData c{s, p, sec, lift, s.weierstrass_cubic(lift.f()), lift_cubic(s, lift), {}, 0, "", std::move(warnings)};
  c.kernel = squarefree_kernel(c.G);
  c.genus = (c.kernel.S.degree() - 1) / 2;
  c.two_section = "x = " + c.lift.f().str() + ", y^2 = " + c.G.str();
  auto failures = cover_failures(c);
  if (!failures.empty()) throw InvariantViolation("cover invariant failed: " + failures.front());
  auto report = special_fibre(c);
  ensure(report.split && report.g_bar * report.g_bar == sec.y * sec.y, "special fibre does not split as gbar^2");
  return {std::move(c), std::move(report)};
}

}  // namespace detail

/// Checks, in order: good reduction at p unless forced (BadPrimeRefused), the section
/// equation (NotASection), gbar != 0 (TwoTorsionDegenerate); then lifts,
/// scans lambda and assembles the cover.
inline std::pair<CoverData, SpecialFibreReport> build_cover(const WeierstrassSurface& s, std::uint64_t p,
                                                            const SectionModP& sec, int lambda_max = kDefaultLambdaMax,
                                                            bool force = false) {
  auto warnings = admit_prime(s, p, force);
  return detail::assemble_cover(s, p, sec, lambda_max, std::move(warnings));
}

/// Same, with y recomputed from x.
inline std::pair<CoverData, SpecialFibreReport> build_cover(const WeierstrassSurface& s, std::uint64_t p, const FpFunc& x,
                                                            int lambda_max = kDefaultLambdaMax, bool force = false) {
  auto warnings = admit_prime(s, p, force);
  auto sec = is_section_x(s, p, x);
  if (!sec)
    throw DomainError(ErrorKind::NotASection, "x^3 + a4 x + a6 is not a square mod " + std::to_string(p) + " for x = " + x.str());
  return detail::assemble_cover(s, p, *sec, lambda_max, std::move(warnings));
}

struct TorsionWitness {
  std::uint64_t p = 0;
  SectionModP section;
  int multiplier = 2;
  std::vector<std::string> rationale;
  bool caveat_n = false;
  std::string caveat;
};

/// Emitted only for a cover whose invariants all recheck; throws InvalidCover
/// otherwise.
inline TorsionWitness torsion_witness(const CoverData& c, const SpecialFibreReport& r, const FibreConfiguration& cfg) {
  auto failures = cover_failures(c);
  if (!r.split) failures.push_back("special fibre does not split");
  if (!r.involution_swap) failures.push_back("involution does not swap the branches");
  if (r.split && r.g_bar * r.g_bar != c.section.y * c.section.y) failures.push_back("gbar^2 differs from P(x)");
  if (!failures.empty()) {
    std::string all;
    for (const auto& f : failures) all += (all.empty() ? "" : "; ") + f;
    throw DomainError(ErrorKind::InvalidCover, all);
  }
  TorsionWitness w;
  w.p = c.p;
  w.section = c.section;
  w.rationale = {
      "cover: the normalization psi of P^1 over Z_(p) in Q(t)(g), g^2 = G, is finite and flat of degree 2; "
      "G is not a square over Qbar(t) since its squarefree kernel " + c.kernel.S.str() + " is nonconstant",
      "special fibre: G reduces to gbar^2 with gbar = " + r.g_bar.str() +
          ", so the fibre over p is two components g = +-gbar exchanged by g -> -g; "
          "so the flat closure of the generic cycle meets the special fibre in a principal divisor and its class there is 0",
      "push-pull: psi_* psi^* [D] = 2 [D], and psi^* [D] vanishes, so 2 [D] = 0",
  };
  w.caveat_n = cfg.has_reducible_fibre();
  if (w.caveat_n)
    w.caveat = "the surface has reducible singular fibres whose components may not be defined over Q; "
               "the class is only shown to be killed by 2N for some N not computed here";
  return w;
}

}  // namespace ellsurf
