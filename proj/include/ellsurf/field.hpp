#pragma once

// Coefficient fields: the rationals and prime fields F_p (p odd).
//
// Polynomials need to create zeros and ones without having an element at
// hand, so each field comes with a small context value: empty for Q, the
// modulus for F_p. field_traits<F> bundles the context and constructors.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ellsurf/integer.hpp"

namespace ellsurf {

class FpElem {
 public:
  FpElem() = default;
  FpElem(std::int64_t value, std::uint64_t p) : p_(p) {
    std::int64_t r = value % static_cast<std::int64_t>(p);
    residue_ = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  static FpElem from_residue(std::uint64_t r, std::uint64_t p) {
    FpElem e;
    e.residue_ = r;
    e.p_ = p;
    return e;
  }

  std::uint64_t residue() const { return residue_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return residue_ == 0; }

  /// Representative in (-p/2, p/2].
  std::int64_t balanced() const {
    auto r = static_cast<std::int64_t>(residue_);
    return 2 * residue_ > p_ ? r - static_cast<std::int64_t>(p_) : r;
  }

  FpElem operator-() const { return from_residue(residue_ == 0 ? 0 : p_ - residue_, p_); }
  FpElem& operator+=(const FpElem& o) {
    residue_ += o.residue_;
    if (residue_ >= p_) residue_ -= p_;
    return *this;
  }
  FpElem& operator-=(const FpElem& o) {
    residue_ = residue_ >= o.residue_ ? residue_ - o.residue_ : residue_ + p_ - o.residue_;
    return *this;
  }
  FpElem& operator*=(const FpElem& o) {
    residue_ = residue_ * o.residue_ % p_;
    return *this;
  }
  FpElem& operator/=(const FpElem& o) { return *this *= o.inverse(); }

  friend FpElem operator+(FpElem a, const FpElem& b) { return a += b; }
  friend FpElem operator-(FpElem a, const FpElem& b) { return a -= b; }
  friend FpElem operator*(FpElem a, const FpElem& b) { return a *= b; }
  friend FpElem operator/(FpElem a, const FpElem& b) { return a /= b; }
  friend bool operator==(const FpElem& a, const FpElem& b) { return a.residue_ == b.residue_; }
  friend bool operator<(const FpElem& a, const FpElem& b) { return a.residue_ < b.residue_; }

  FpElem pow(std::uint64_t e) const {
    FpElem base = *this, r = from_residue(1 % p_, p_);
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  FpElem inverse() const {
    if (residue_ == 0) throw DomainError(ErrorKind::ZeroInput, "inverse of zero in F_p");
    return pow(p_ - 2);
  }

  /// Euler criterion; zero counts as a square.
  bool is_square() const { return residue_ == 0 || pow((p_ - 1) / 2).residue_ == 1; }

  /// Tonelli-Shanks. Returns the root with residue in [0, p/2].
  std::optional<FpElem> sqrt() const {
    if (residue_ == 0) return *this;
    if (!is_square()) return std::nullopt;
    std::uint64_t q = p_ - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    FpElem z = from_residue(2, p_);
    while (z.is_square()) z += from_residue(1, p_);
    FpElem c = z.pow(q), x = pow((q + 1) / 2), t = pow(q);
    int m = s;
    while (t.residue_ != 1) {
      int i = 0;
      FpElem t2 = t;
      while (t2.residue_ != 1) {
        t2 *= t2;
        ++i;
      }
      FpElem b = c;
      for (int k = 0; k < m - i - 1; ++k) b *= b;
      x *= b;
      c = b * b;
      t *= c;
      m = i;
    }
    if (2 * x.residue_ > p_) x = -x;
    return x;
  }

  friend std::ostream& operator<<(std::ostream& os, const FpElem& e) { return os << e.residue_; }

 private:
  std::uint64_t residue_ = 0;
  std::uint64_t p_ = 0;
};

template <class F>
struct field_traits;

template <>
struct field_traits<Rat> {
  struct context {
    friend bool operator==(const context&, const context&) { return true; }
  };
  static Rat zero(const context&) { return Rat(0); }
  static Rat one(const context&) { return Rat(1); }
  static Rat from_int(const context&, long v) { return Rat(v); }
  static context context_of(const Rat&) { return {}; }
  static bool is_zero(const Rat& a) { return a == 0; }
  static std::string str(const Rat& a) { return to_string(a); }
  static bool is_negative(const Rat& a) { return a < 0; }
  static constexpr std::uint64_t characteristic(const context&) { return 0; }
};

template <>
struct field_traits<FpElem> {
  struct context {
    std::uint64_t p = 0;
    friend bool operator==(const context& a, const context& b) { return a.p == b.p; }
  };
  static FpElem zero(const context& c) { return FpElem::from_residue(0, c.p); }
  static FpElem one(const context& c) { return FpElem::from_residue(1, c.p); }
  static FpElem from_int(const context& c, long v) { return FpElem(v, c.p); }
  static context context_of(const FpElem& a) { return {a.modulus()}; }
  static bool is_zero(const FpElem& a) { return a.is_zero(); }
  static std::string str(const FpElem& a) { return std::to_string(a.residue()); }
  static bool is_negative(const FpElem&) { return false; }
  static std::uint64_t characteristic(const context& c) { return c.p; }
};

using QQ = field_traits<Rat>::context;
inline field_traits<FpElem>::context GF(std::uint64_t p) {
  require_odd_prime(p);
  return {p};
}

}  // namespace ellsurf
