#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "talex/diagnostics.hpp"

namespace talex {

// Arbitrary-precision rational, always canonical: lowest terms, positive
// denominator.  Thin value wrapper around GMP's mpq_class so that the rest
// of the code never touches GMP types directly.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // implicit, like the integer it wraps
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw domain_error("rational with zero denominator");
    v_.canonicalize();
  }

  static Rational from_mpq(mpq_class q) {
    Rational r;
    r.v_ = std::move(q);
    r.v_.canonicalize();
    return r;
  }

  // Accepts "p" or "p/q" with optional sign, arbitrary size.
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw parse_error("empty rational literal");
    for (char c : s) {
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
            c == '+' || c == '/'))
        throw parse_error("bad character in rational literal: '" +
                          std::string(1, c) + "'");
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw parse_error("malformed rational literal: '" + s + "'");
    if (q.get_den() == 0) throw parse_error("zero denominator: '" + s + "'");
    q.canonicalize();
    return from_mpq(q);
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return from_mpq(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw domain_error("division of rational by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  Rational inv() const {
    if (is_zero()) throw domain_error("inversion of zero rational");
    return from_mpq(mpq_class(1) / v_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.v_ != b.v_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }

  // "p" when integral, "p/q" otherwise.
  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

}  // namespace talex
