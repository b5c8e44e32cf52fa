#pragma once

// Recursive-descent parser for polynomial expressions in t:
//
//   expr     := ['-'] term (('+' | '-') term)*
//   term     := factor (('*' | '/') factor)*
//   factor   := base ('^' nat)?
//   base     := rational | 't' | '(' expr ')'
//   rational := int ('/' posint)?
//
// Whitespace is ignored. A '/' directly between two integer literals forms a
// rational constant; any other '/' divides and may produce a rational
// function, which parse_polynomial rejects.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "ellsurf/ratfunc.hpp"

namespace ellsurf {

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  QFunc parse() {
    QFunc v = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return v;
  }

 private:
  static constexpr unsigned kMaxExponent = 1000;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("syntax error at offset " + std::to_string(pos_) + ": " + what, ErrorKind::SyntaxError,
                     static_cast<long>(pos_));
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  Integer natural() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(src_.substr(start, pos_ - start)));
  }

  QFunc constant(const Rat& c) { return QFunc(QPoly::constant(QQ{}, c)); }

  QFunc expr() {
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    }
    QFunc v = term();
    if (neg) v = -v;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        v = v + term();
      } else if (peek('-')) {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  QFunc term() {
    QFunc v = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        v = v * factor();
      } else if (peek('/')) {
        ++pos_;
        std::size_t at = pos_;
        QFunc d = factor();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        v = v / d;
      } else {
        return v;
      }
    }
  }

  QFunc factor() {
    QFunc b = base();
    if (peek('^')) {
      ++pos_;
      if (!peek_digit()) fail("expected an exponent");
      std::size_t at = pos_;
      Integer e = natural();
      if (e > kMaxExponent) {
        pos_ = at;
        fail("exponent larger than " + std::to_string(kMaxExponent));
      }
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  QFunc base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == 't') {
      ++pos_;
      return QFunc(QPoly::t(QQ{}));
    }
    if (c == '(') {
      ++pos_;
      QFunc v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer n = natural();
      // int '/' posint is a rational literal; 1/2 binds before '^' and '*'.
      std::size_t save = pos_;
      if (peek('/')) {
        ++pos_;
        if (peek_digit()) {
          std::size_t at = pos_;
          Integer d = natural();
          if (d == 0) {
            pos_ = at;
            fail("zero denominator");
          }
          return constant(make_rat(n, d));
        }
        pos_ = save;
      }
      return constant(Rat(n));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression that may be a rational function of t.
inline QFunc parse_function(std::string_view src) { return detail::ExprParser(src).parse(); }

/// Parses a polynomial; rational coefficients are fine, a nonconstant
/// denominator is NonPolynomial.
inline QPoly parse_polynomial(std::string_view src) {
  QFunc f = parse_function(src);
  if (!f.is_polynomial())
    throw InputError("expression '" + std::string(src) + "' is not a polynomial: " + f.str(), ErrorKind::NonPolynomial);
  return f.num();
}

}  // namespace ellsurf
