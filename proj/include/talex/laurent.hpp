#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "talex/cyclotomic.hpp"
#include "talex/diagnostics.hpp"

namespace talex {

// Laurent polynomial over Q(zeta_n), stored as exponent -> nonzero
// coefficient.  K[t^{+-1}] is a Euclidean domain for span = maxdeg - mindeg;
// everything here (gcd, division, normal forms) is exact.
class LaurentPoly {
 public:
  explicit LaurentPoly(int order = 1) : order_(order) {}

  static LaurentPoly zero(int order) { return LaurentPoly(order); }
  static LaurentPoly one(int order) {
    return term(CycloNumber::one(order), 0);
  }
  static LaurentPoly constant(const CycloNumber& c) {
    return term(c, 0);
  }
  static LaurentPoly term(const CycloNumber& c, int exp) {
    LaurentPoly p(c.order());
    if (!c.is_zero()) p.t_[exp] = c;
    return p;
  }
  // t^k - 1 and friends come up constantly in the d1 blocks.
  static LaurentPoly t_power_minus_one(int order, long k) {
    LaurentPoly p = term(CycloNumber::one(order), static_cast<int>(k));
    return p - one(order);
  }

  int order() const { return order_; }
  const std::map<int, CycloNumber>& terms() const { return t_; }

  bool is_zero() const { return t_.empty(); }
  bool is_one() const {
    return t_.size() == 1 && t_.begin()->first == 0 &&
           t_.begin()->second.is_one();
  }
  // Units of K[t^{+-1}] are the single-term polynomials u*t^n, u != 0.
  bool is_unit() const { return t_.size() == 1; }

  int mindeg() const {
    if (is_zero()) throw domain_error("mindeg of zero polynomial");
    return t_.begin()->first;
  }
  int maxdeg() const {
    if (is_zero()) throw domain_error("maxdeg of zero polynomial");
    return t_.rbegin()->first;
  }
  int span() const { return maxdeg() - mindeg(); }

  const CycloNumber& leading_coeff() const {
    if (is_zero()) throw domain_error("leading coefficient of zero");
    return t_.rbegin()->second;
  }

  CycloNumber coeff(int exp) const {
    auto it = t_.find(exp);
    return it == t_.end() ? CycloNumber::zero(order_) : it->second;
  }

  LaurentPoly operator-() const {
    LaurentPoly r(order_);
    for (const auto& [e, c] : t_) r.t_[e] = -c;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_order(a, b);
    LaurentPoly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_order(a, b);
    LaurentPoly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, -c);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_order(a, b);
    LaurentPoly r(a.order_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const CycloNumber& c) const {
    LaurentPoly r(order_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : t_) r.t_[e] = k * c;
    return r;
  }
  LaurentPoly shifted(int dexp) const {
    LaurentPoly r(order_);
    for (const auto& [e, c] : t_) r.t_[e + dexp] = c;
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.order_ == b.order_ && a.t_ == b.t_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }

  // Division with remainder: a = q*b + r with r = 0 or span(r) < span(b).
  // Both operands are shifted to ordinary polynomials first; the monomial
  // shifts are units, so this realizes the Euclidean structure of the
  // localized ring.
  static std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a,
                                                    const LaurentPoly& b) {
    require_same_order(a, b);
    if (b.is_zero()) throw domain_error("laurent division by zero");
    if (a.is_zero()) return {LaurentPoly(a.order_), LaurentPoly(a.order_)};
    const int sa = a.mindeg(), sb = b.mindeg();
    LaurentPoly rem = a.shifted(-sa);
    const LaurentPoly den = b.shifted(-sb);
    LaurentPoly quot(a.order_);
    const CycloNumber lead_inv = den.leading_coeff().inv();
    const int db = den.maxdeg();
    while (!rem.is_zero() && rem.maxdeg() >= db) {
      const int k = rem.maxdeg() - db;
      const CycloNumber c = rem.leading_coeff() * lead_inv;
      quot.add_term(k, c);
      rem -= den.shifted(k).scaled(c);
    }
    return {quot.shifted(sa - sb), rem.shifted(sa)};
  }

  bool divides(const LaurentPoly& other) const {
    if (is_zero()) return other.is_zero();
    return divmod(other, *this).second.is_zero();
  }

  static LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw engine_error("laurent division expected exact");
    return q;
  }

 private:
  static void require_same_order(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.order_ != b.order_)
      throw domain_error("laurent polynomials of different coefficient order");
  }
  void add_term(int exp, const CycloNumber& c) {
    if (c.is_zero()) return;
    auto it = t_.find(exp);
    if (it == t_.end()) {
      t_.emplace(exp, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  int order_;
  std::map<int, CycloNumber> t_;
};

// Canonical representative of the unit class of p: minimal exponent shifted
// to 0, leading (highest-degree) coefficient scaled to 1.  Equality of
// normal forms is exactly equality up to units.
inline LaurentPoly normalize_assoc(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  LaurentPoly q = p.shifted(-p.mindeg());
  return q.scaled(q.leading_coeff().inv());
}

inline bool eq_up_to_units(const LaurentPoly& a, const LaurentPoly& b) {
  return normalize_assoc(a) == normalize_assoc(b);
}

// gcd in K[t^{+-1}] (Euclid on span), unit-normalized.  gcd(0, 0) = 0.
inline LaurentPoly gcd_poly(LaurentPoly a, LaurentPoly b) {
  while (!b.is_zero()) {
    LaurentPoly r = LaurentPoly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return normalize_assoc(a);
}

// Coefficient-wise conjugation combined with t -> t^{-1}: the involution
// of K[t^{+-1}] extending complex conjugation.
inline LaurentPoly conj_poly(const LaurentPoly& p) {
  LaurentPoly r(p.order());
  for (const auto& [e, c] : p.terms())
    r += LaurentPoly::term(c.conj(), -e);
  return r;
}

// Coefficient-wise embedding into a larger cyclotomic order.
inline LaurentPoly promote_poly(const LaurentPoly& p, int new_order) {
  LaurentPoly r(new_order);
  for (const auto& [e, c] : p.terms())
    r += LaurentPoly::term(c.promote(new_order), e);
  return r;
}

inline LaurentPoly pow_poly(const LaurentPoly& p, int k) {
  if (k < 0) throw domain_error("negative power of a laurent polynomial");
  LaurentPoly r = LaurentPoly::one(p.order());
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// Reduced fraction over K[t^{+-1}]: numerator and denominator coprime and
// unit-normalized, so the value is canonical up to units (which is the
// ambiguity every invariant here lives with anyway).
class LaurentFraction {
 public:
  explicit LaurentFraction(int order = 1)
      : num_(LaurentPoly::zero(order)), den_(LaurentPoly::one(order)) {}

  static LaurentFraction of(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw domain_error("fraction with zero denominator");
    LaurentFraction f(num.order());
    if (num.is_zero()) return f;
    const LaurentPoly g = gcd_poly(num, den);
    f.num_ = normalize_assoc(LaurentPoly::divide_exact(num, g));
    f.den_ = normalize_assoc(LaurentPoly::divide_exact(den, g));
    return f;
  }
  static LaurentFraction from_poly(const LaurentPoly& p) {
    return of(p, LaurentPoly::one(p.order()));
  }
  static LaurentFraction one(int order) {
    return from_poly(LaurentPoly::one(order));
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  int order() const { return num_.order(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_one_up_to_units() const {
    return num_.is_unit() && den_.is_one();
  }

  friend LaurentFraction operator*(const LaurentFraction& a,
                                   const LaurentFraction& b) {
    return of(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend LaurentFraction operator/(const LaurentFraction& a,
                                   const LaurentFraction& b) {
    if (b.is_zero()) throw domain_error("division of fractions by zero");
    return of(a.num_ * b.den_, a.den_ * b.num_);
  }

  LaurentFraction conj() const {
    if (is_zero()) return *this;
    return of(conj_poly(num_), conj_poly(den_));
  }

  // base^k as a reduced fraction, valid for negative k (base != 0).
  static LaurentFraction power(const LaurentPoly& base, int k) {
    if (k >= 0) return from_poly(pow_poly(base, k));
    if (base.is_zero()) throw domain_error("negative power of zero");
    return of(LaurentPoly::one(base.order()), pow_poly(base, -k));
  }

  friend bool operator==(const LaurentFraction& a, const LaurentFraction& b) {
    // Both sides reduced and normalized, so cross-multiplied unit-equality.
    return eq_up_to_units(a.num_ * b.den_, b.num_ * a.den_);
  }
  friend bool operator!=(const LaurentFraction& a, const LaurentFraction& b) {
    return !(a == b);
  }

 private:
  LaurentPoly num_, den_;
};

// Serialization used verbatim in reports and golden files: descending
// exponents, "c*t^k" terms with unit coefficients elided, parenthesized
// cyclotomic coefficients.
inline std::string poly_str(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const int e = it->first;
    CycloNumber c = it->second;
    bool negated = false;
    if (c.is_rational() && c.rational_part().sign() < 0) {
      c = -c;
      negated = true;
    }
    if (first) {
      if (negated) out += "-";
    } else {
      out += negated ? " - " : " + ";
    }
    first = false;
    std::string cs = c.is_rational() ? c.rational_part().str()
                                     : "(" + c.str() + ")";
    if (e == 0) {
      out += cs;
    } else {
      if (cs != "1") out += cs + "*";
      out += (e == 1) ? "t" : "t^" + std::to_string(e);
    }
  }
  return out;
}

inline std::string fraction_str(const LaurentFraction& f) {
  if (f.is_polynomial()) return poly_str(f.num());
  return "(" + poly_str(f.num()) + ")/(" + poly_str(f.den()) + ")";
}

}  // namespace talex
