#pragma once

// Dense univariate polynomials over a field (Q or F_p).

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/field.hpp"

namespace ellsurf {

/// Degree of the zero polynomial. Less than every valid degree.
inline constexpr int kZeroDegree = -1;

template <class F>
class Poly {
 public:
  using Traits = field_traits<F>;
  using Context = typename Traits::context;

  Poly() = default;
  explicit Poly(Context ctx) : ctx_(ctx) {}
  Poly(Context ctx, std::vector<F> coeffs) : ctx_(ctx), c_(std::move(coeffs)) { trim(); }

  static Poly constant(Context ctx, const F& c) { return Poly(ctx, {c}); }
  static Poly constant(Context ctx, long c) { return Poly(ctx, {Traits::from_int(ctx, c)}); }
  static Poly monomial(Context ctx, const F& c, int k) {
    std::vector<F> v(static_cast<std::size_t>(k) + 1, Traits::zero(ctx));
    v[static_cast<std::size_t>(k)] = c;
    return Poly(ctx, std::move(v));
  }
  /// The indeterminate t.
  static Poly t(Context ctx) { return monomial(ctx, Traits::one(ctx), 1); }
  static Poly from_ints(Context ctx, const std::vector<long>& ascending) {
    std::vector<F> v;
    v.reserve(ascending.size());
    for (long a : ascending) v.push_back(Traits::from_int(ctx, a));
    return Poly(ctx, std::move(v));
  }

  Context context() const { return ctx_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(int i) const {
    return (i < 0 || i > degree()) ? Traits::zero(ctx_) : c_[static_cast<std::size_t>(i)];
  }
  F lead() const { return c_.empty() ? Traits::zero(ctx_) : c_.back(); }
  F zero_elem() const { return Traits::zero(ctx_); }
  F one_elem() const { return Traits::one(ctx_); }

  F operator()(const F& x) const {
    F acc = Traits::zero(ctx_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    F inv = Traits::one(ctx_) / lead();
    return *this * inv;
  }

  Poly derivative() const {
    std::vector<F> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[static_cast<std::size_t>(i)] * Traits::from_int(ctx_, i));
    return Poly(ctx_, std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Traits::zero(ctx_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Traits::zero(ctx_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.ctx_);
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, Traits::zero(a.ctx_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (Traits::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.ctx_, std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(Poly a, const F& s) {
    for (auto& x : a.c_) x *= s;
    a.trim();
    return a;
  }
  friend Poly operator*(const F& s, Poly a) { return std::move(a) * s; }

  Poly pow(unsigned e) const {
    Poly r = constant(ctx_, Traits::one(ctx_)), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// p(t)^k shifted: t^k * p.
  Poly shift(int k) const {
    if (is_zero()) return *this;
    std::vector<F> v(static_cast<std::size_t>(k), Traits::zero(ctx_));
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(ctx_, std::move(v));
  }

  /// s^w * p(1/s), requires w >= degree().
  Poly reversed(int weight) const {
    ensure(weight >= degree(), "reversal weight below degree");
    if (is_zero()) return *this;
    std::vector<F> v(static_cast<std::size_t>(weight) + 1, Traits::zero(ctx_));
    for (int i = 0; i <= degree(); ++i) v[static_cast<std::size_t>(weight - i)] = c_[static_cast<std::size_t>(i)];
    return Poly(ctx_, std::move(v));
  }

  /// Composition p(q).
  Poly compose(const Poly& q) const {
    Poly acc(ctx_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(ctx_, *it);
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Deterministic total order: degree first, then coefficients from the top.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
      if (!(a.c_[static_cast<std::size_t>(i)] == b.c_[static_cast<std::size_t>(i)]))
        return a.c_[static_cast<std::size_t>(i)] < b.c_[static_cast<std::size_t>(i)];
    }
    return false;
  }

  /// Human-readable and re-parseable: "-t^2 + 125", "1/2*t^3 + t".
  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const F& a = c_[static_cast<std::size_t>(i)];
      if (Traits::is_zero(a)) continue;
      bool neg = Traits::is_negative(a);
      F mag = neg ? F(-a) : a;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      bool unit = mag == Traits::one(ctx_);
      if (i == 0) {
        os << Traits::str(mag);
        continue;
      }
      if (!unit) os << Traits::str(mag) << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
  }

  Context ctx_{};
  std::vector<F> c_;
};

using QPoly = Poly<Rat>;
using FpPoly = Poly<FpElem>;

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw DomainError(ErrorKind::ZeroInput, "polynomial division by zero");
  using T = field_traits<F>;
  auto ctx = a.context();
  if (a.degree() < b.degree()) return {Poly<F>(ctx), a};
  std::vector<F> r = a.coeffs();
  std::vector<F> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), T::zero(ctx));
  F inv = T::one(ctx) / b.lead();
  const auto& bc = b.coeffs();
  int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    F c = r[static_cast<std::size_t>(i)];
    if (T::is_zero(c)) continue;
    c *= inv;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * bc[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<F>(ctx, std::move(q)), Poly<F>(ctx, std::move(r))};
}

template <class F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).first;
}
template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).second;
}

template <class F>
bool divides(const Poly<F>& d, const Poly<F>& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

/// Exact quotient; throws when d does not divide a.
template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& d) {
  auto [q, r] = divmod(a, d);
  ensure(r.is_zero(), "inexact polynomial division");
  return q;
}

/// v_q(a) for nonconstant q; kInfiniteValuation for a = 0.
template <class F>
int poly_valuation(Poly<F> a, const Poly<F>& q) {
  if (a.is_zero()) return kInfiniteValuation;
  int v = 0;
  for (;;) {
    auto [quo, rem] = divmod(a, q);
    if (!rem.is_zero()) return v;
    a = std::move(quo);
    ++v;
  }
}

template <class F>
std::ostream& operator<<(std::ostream& os, const Poly<F>& p) {
  return os << p.str();
}

}  // namespace ellsurf
