#pragma once

// Rational functions num/den in lowest terms with monic denominator.

#include <string>
#include <utility>

#include "ellsurf/algebra.hpp"

namespace ellsurf {

template <class F>
class RatFunc {
 public:
  using P = Poly<F>;
  using Context = typename P::Context;

  RatFunc() = default;
  explicit RatFunc(Context ctx) : num_(ctx), den_(P::constant(ctx, 1)) {}
  RatFunc(P num) : num_(std::move(num)), den_(P::constant(num_.context(), 1)) {}  // NOLINT: polynomials embed
  RatFunc(P num, P den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  Context context() const { return num_.context(); }
  const P& num() const { return num_; }
  const P& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc operator-() const { return RatFunc(-num_, den_, Normalized{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError(ErrorKind::ZeroInput, "rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RatFunc operator*(const RatFunc& a, const F& s) { return RatFunc(a.num_ * s, a.den_, Normalized{}); }
  RatFunc pow(unsigned e) const { return RatFunc(num_.pow(e), den_.pow(e), Normalized{}); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  struct Normalized {};
  RatFunc(P num, P den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw DomainError(ErrorKind::ZeroInput, "zero denominator");
    if (num_.is_zero()) {
      den_ = P::constant(num_.context(), 1);
      return;
    }
    P g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    F l = den_.lead();
    if (!(l == den_.one_elem())) {
      F inv = den_.one_elem() / l;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  P num_;
  P den_;
};

using QFunc = RatFunc<Rat>;
using FpFunc = RatFunc<FpElem>;

template <class F>
std::ostream& operator<<(std::ostream& os, const RatFunc<F>& f) {
  return os << f.str();
}

/// Gauss valuation of a rational polynomial: min coefficient valuation.
inline int gauss_valuation(const QPoly& a, std::uint64_t p) {
  int v = kInfiniteValuation;
  for (const auto& c : a.coeffs()) v = std::min(v, valuation(c, p));
  return v;
}

inline int gauss_valuation(const QFunc& a, std::uint64_t p) {
  if (a.is_zero()) return kInfiniteValuation;
  return gauss_valuation(a.num(), p) - gauss_valuation(a.den(), p);
}

/// Coefficient-wise reduction of a p-integral polynomial.
inline FpPoly reduce_mod_p(const QPoly& a, std::uint64_t p) {
  auto ctx = GF(p);
  std::vector<FpElem> v;
  Integer pp(static_cast<unsigned long>(p));
  for (const auto& c : a.coeffs()) {
    if (mpz_divisible_p(c.get_den().get_mpz_t(), pp.get_mpz_t()))
      throw DomainError(ErrorKind::NonIntegral, "coefficient " + to_string(c) + " is not " + std::to_string(p) + "-integral");
    Integer n, d(c.get_den()), inv;
    mpz_fdiv_r(n.get_mpz_t(), c.get_num().get_mpz_t(), pp.get_mpz_t());
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
    Integer r = n * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
    v.push_back(FpElem::from_residue(r.get_ui(), p));
  }
  return FpPoly(ctx, std::move(v));
}

inline FpElem reduce_mod_p(const Rat& c, std::uint64_t p) {
  return reduce_mod_p(QPoly::constant(QQ{}, c), p).coeff(0);
}

/// Reduction of a rational function with v_p >= 0. The function is first
/// written as u * N/D with N, D primitive integer polynomials, so the
/// denominator reduces to a nonzero polynomial whenever v_p(u) >= 0.
inline FpFunc reduce_mod_p(const QFunc& a, std::uint64_t p) {
  auto ctx = GF(p);
  if (a.is_zero()) return FpFunc(ctx);
  auto [un, zn] = zpoly::primitive_form(a.num());
  auto [ud, zd] = zpoly::primitive_form(a.den());
  Rat u = un / ud;
  if (valuation(u, p) < 0)
    throw DomainError(ErrorKind::NonIntegral, "function " + a.str() + " has negative " + std::to_string(p) + "-adic valuation");
  FpPoly n = reduce_mod_p(zpoly::to_q(zn), p) * reduce_mod_p(u, p);
  FpPoly d = reduce_mod_p(zpoly::to_q(zd), p);
  if (d.is_zero()) throw DomainError(ErrorKind::DenominatorVanishes, "denominator vanishes mod " + std::to_string(p));
  return FpFunc(n, d);
}

namespace detail {

inline std::optional<Rat> field_sqrt(const Rat& c) {
  if (c < 0) return std::nullopt;
  Integer n = c.get_num(), d = c.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return make_rat(rn, rd);
}

inline std::optional<FpElem> field_sqrt(const FpElem& c) { return c.sqrt(); }

}  // namespace detail

/// Square root of a polynomial by solving for coefficients from the top
/// (characteristic != 2); the returned root has the normalized leading
/// coefficient (positive over Q, residue in [1, p/2] over F_p).
template <class F>
std::optional<Poly<F>> poly_sqrt(const Poly<F>& a) {
  auto ctx = a.context();
  if (a.is_zero()) return a;
  int n = a.degree();
  if (n % 2 != 0) return std::nullopt;
  auto lead_root = detail::field_sqrt(a.lead());
  if (!lead_root) return std::nullopt;
  int m = n / 2;
  std::vector<F> r(static_cast<std::size_t>(m) + 1, a.zero_elem());
  r[static_cast<std::size_t>(m)] = *lead_root;
  F two_lead = *lead_root + *lead_root;
  // Coefficient of t^(n-k) in r^2 determines r_(m-k) for k = 1..m.
  for (int k = 1; k <= m; ++k) {
    F acc = a.coeff(n - k);
    for (int i = 1; i < k; ++i) acc -= r[static_cast<std::size_t>(m - i)] * r[static_cast<std::size_t>(m - k + i)];
    r[static_cast<std::size_t>(m - k)] = acc / two_lead;
  }
  Poly<F> root(ctx, std::move(r));
  if (root * root != a) return std::nullopt;
  return root;
}

/// r with r^2 = a in F(t), sign-normalized on the numerator's leading
/// coefficient; nullopt when a is not a square.
template <class F>
std::optional<RatFunc<F>> is_perfect_square(const RatFunc<F>& a) {
  if (a.is_zero()) return a;
  auto n = poly_sqrt(a.num());
  if (!n) return std::nullopt;
  auto d = poly_sqrt(a.den());
  if (!d) return std::nullopt;
  // den is monic so its normalized root is monic; the quotient stays normalized.
  return RatFunc<F>(*n, *d);
}

/// a = c * S * v^2 with S monic squarefree. deg S >= 1 certifies that a is
/// not a square in Qbar(t).
struct SquarefreeKernel {
  Rat c;
  QPoly S;
  QFunc v;
};

inline SquarefreeKernel squarefree_kernel(const QFunc& a) {
  if (a.is_zero()) throw DomainError(ErrorKind::ZeroInput, "squarefree kernel of zero");
  QQ ctx;
  QPoly S = QPoly::constant(ctx, 1);
  QPoly vn = QPoly::constant(ctx, 1), vd = QPoly::constant(ctx, 1);
  for (const auto& part : squarefree_decomposition(a.num())) {
    if (part.multiplicity % 2 == 1) S *= part.poly;
    vn *= part.poly.pow(static_cast<unsigned>(part.multiplicity / 2));
  }
  for (const auto& part : squarefree_decomposition(a.den())) {
    if (part.multiplicity % 2 == 1) S *= part.poly;
    vd *= part.poly.pow(static_cast<unsigned>((part.multiplicity + 1) / 2));
  }
  SquarefreeKernel k{a.num().lead(), S, QFunc(vn, vd)};
  ensure(QFunc(k.S) * k.v * k.v * k.c == a, "squarefree kernel does not reconstruct its input");
  return k;
}

}  // namespace ellsurf
