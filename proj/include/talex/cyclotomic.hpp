#pragma once

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "talex/diagnostics.hpp"
#include "talex/rational.hpp"

namespace talex {

inline int euler_phi(int n) {
  if (n < 1) throw domain_error("euler phi of non-positive integer");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace detail {

// Exact division of integer polynomials (ascending coefficients), used by
// the recursive cyclotomic construction.  The divisor is monic here.
inline std::vector<mpz_class> zpoly_div_exact(std::vector<mpz_class> num,
                                              const std::vector<mpz_class>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  if (dd < 0 || den.back() != 1)
    throw engine_error("cyclotomic division by non-monic polynomial");
  if (dn < dd) throw engine_error("cyclotomic division underflow");
  std::vector<mpz_class> quot(dn - dd + 1, mpz_class(0));
  for (int k = dn - dd; k >= 0; --k) {
    mpz_class c = num[k + dd];
    quot[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw engine_error("cyclotomic division not exact");
  return quot;
}

}  // namespace detail

// n-th cyclotomic polynomial, monic of degree phi(n), ascending integer
// coefficients.  Computed as (x^n - 1) / prod_{d|n, d<n} Phi_d and memoized.
inline const std::vector<mpz_class>& cyclotomic_polynomial(int n) {
  if (n < 1) throw domain_error("cyclotomic polynomial needs n >= 1");
  static std::map<int, std::vector<mpz_class>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Compute without recursion into the locked function.
  std::vector<int> pending{n};
  while (!pending.empty()) {
    int m = pending.back();
    if (cache.count(m)) {
      pending.pop_back();
      continue;
    }
    bool ready = true;
    for (int d = 1; d < m; ++d) {
      if (m % d == 0 && !cache.count(d)) {
        pending.push_back(d);
        ready = false;
      }
    }
    if (!ready) continue;
    std::vector<mpz_class> poly(m + 1, mpz_class(0));
    poly[0] = -1;
    poly[m] = 1;
    for (int d = 1; d < m; ++d)
      if (m % d == 0) poly = detail::zpoly_div_exact(std::move(poly), cache[d]);
    cache.emplace(m, std::move(poly));
    pending.pop_back();
  }
  return cache[n];
}

// Element of the cyclotomic field Q(zeta_n), stored as coordinates in the
// power basis 1, zeta, ..., zeta^{phi(n)-1}, always reduced mod Phi_n.
// Q itself is the case n = 1.  Elements of different orders never mix
// implicitly; promotion to a larger order is explicit.
class CycloNumber {
 public:
  explicit CycloNumber(int order = 1) : order_(check_order(order)) {
    c_.assign(euler_phi(order_), Rational());
  }

  static CycloNumber from_rational(const Rational& r, int order) {
    CycloNumber x(order);
    x.c_[0] = r;
    return x;
  }

  static CycloNumber zero(int order) { return CycloNumber(order); }
  static CycloNumber one(int order) {
    return from_rational(Rational(1), order);
  }

  // zeta_n itself (for n = 1 this is 1, for n = 2 it is -1).
  static CycloNumber zeta(int order) { return zeta_power(order, 1); }

  static CycloNumber zeta_power(int order, long k) {
    check_order(order);
    long e = k % order;
    if (e < 0) e += order;
    std::vector<Rational> raw(static_cast<std::size_t>(e) + 1, Rational());
    raw.back() = Rational(1);
    return from_poly(std::move(raw), order);
  }

  // Builds from raw polynomial coefficients in zeta (any degree), reducing
  // modulo Phi_n.
  static CycloNumber from_poly(std::vector<Rational> raw, int order) {
    CycloNumber x(order);
    reduce_mod_cyclotomic(raw, order);
    for (std::size_t i = 0; i < raw.size() && i < x.c_.size(); ++i)
      x.c_[i] = raw[i];
    return x;
  }

  int order() const { return order_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0].is_one(); }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  Rational rational_part() const { return c_[0]; }
  Rational as_rational() const {
    if (!is_rational()) throw domain_error("cyclotomic number is not rational");
    return c_[0];
  }

  CycloNumber operator-() const {
    CycloNumber r(order_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
  }

  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
    require_same_order(a, b);
    CycloNumber r(a.order_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
    require_same_order(a, b);
    CycloNumber r(a.order_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    require_same_order(a, b);
    if (a.is_zero() || b.is_zero()) return CycloNumber(a.order_);
    std::vector<Rational> prod(a.c_.size() + b.c_.size() - 1, Rational());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return from_poly(std::move(prod), a.order_);
  }
  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  // Field inverse via the extended Euclidean algorithm against Phi_n, which
  // is irreducible over Q, so any nonzero residue is invertible.
  CycloNumber inv() const {
    if (is_zero()) throw domain_error("inversion of zero cyclotomic number");
    std::vector<Rational> r0 = phi_as_rational(order_);
    std::vector<Rational> r1(c_.begin(), c_.end());
    trim(r1);
    std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};
    // Invariant: r_k = s_k * a  (mod Phi_n).
    while (true) {
      if (r1.size() == 1) break;  // nonzero constant: gcd reached
      auto [q, r] = poly_divmod(r0, r1);
      std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      if (r1.empty()) throw engine_error("cyclotomic inverse: zero remainder");
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    Rational lead = r1[0];
    for (auto& c : s1) c /= lead;
    return from_poly(std::move(s1), order_);
  }

  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) {
    return a * b.inv();
  }

  // Galois conjugation zeta -> zeta^{-1}; restricts to complex conjugation,
  // fixes rationals, and is a ring involution.
  CycloNumber conj() const {
    std::vector<Rational> raw(static_cast<std::size_t>(order_) + 1, Rational());
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      std::size_t e = (k == 0) ? 0 : static_cast<std::size_t>(order_) - k;
      raw[e] += c_[k];
    }
    return from_poly(std::move(raw), order_);
  }

  // Embeds into Q(zeta_m) for n | m via zeta_n = zeta_m^{m/n}.
  CycloNumber promote(int new_order) const {
    if (new_order == order_) return *this;
    if (new_order < order_ || new_order % order_ != 0)
      throw domain_error("cyclotomic promotion requires a multiple order");
    const int step = new_order / order_;
    std::vector<Rational> raw(
        static_cast<std::size_t>(step) * c_.size() + 1, Rational());
    for (std::size_t k = 0; k < c_.size(); ++k)
      raw[k * static_cast<std::size_t>(step)] = c_[k];
    return from_poly(std::move(raw), new_order);
  }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) {
    return !(a == b);
  }

  // "0", a bare rational, or a sum like "1/2 + 3*z^2" in ascending powers.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      Rational c = c_[k];
      std::string sep;
      if (first) {
        if (c.sign() < 0) {
          out += "-";
          c = -c;
        }
      } else {
        out += (c.sign() < 0) ? " - " : " + ";
        if (c.sign() < 0) c = -c;
      }
      if (k == 0) {
        out += c.str();
      } else {
        if (!c.is_one()) out += c.str() + "*";
        out += (k == 1) ? "z" : "z^" + std::to_string(k);
      }
      first = false;
    }
    return out;
  }

 private:
  static int check_order(int order) {
    if (order < 1) throw domain_error("cyclotomic order must be positive");
    return order;
  }
  static void require_same_order(const CycloNumber& a, const CycloNumber& b) {
    if (a.order_ != b.order_)
      throw domain_error("mixing cyclotomic orders " +
                         std::to_string(a.order_) + " and " +
                         std::to_string(b.order_) +
                         " (promotion is explicit)");
  }

  static std::vector<Rational> phi_as_rational(int order) {
    const auto& zp = cyclotomic_polynomial(order);
    std::vector<Rational> p;
    p.reserve(zp.size());
    for (const auto& c : zp) p.push_back(Rational::from_mpq(mpq_class(c)));
    return p;
  }

  static void trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  }

  // In-place reduction modulo Phi_n (monic), leaving degree < phi(n).
  static void reduce_mod_cyclotomic(std::vector<Rational>& p, int order) {
    const std::vector<Rational> phi = phi_as_rational(order);
    const int d = static_cast<int>(phi.size()) - 1;
    trim(p);
    while (static_cast<int>(p.size()) - 1 >= d) {
      const int k = static_cast<int>(p.size()) - 1 - d;
      const Rational c = p.back();
      for (int j = 0; j <= d; ++j) p[k + j] -= c * phi[j];
      trim(p);
    }
  }

  // Ordinary division with remainder in Q[x]; operands trimmed, b != 0.
  static std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
      std::vector<Rational> a, const std::vector<Rational>& b) {
    const int db = static_cast<int>(b.size()) - 1;
    std::vector<Rational> q;
    if (static_cast<int>(a.size()) - 1 >= db)
      q.assign(a.size() - b.size() + 1, Rational());
    const Rational lead_inv = b.back().inv();
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
      const int k = static_cast<int>(a.size()) - 1 - db;
      const Rational c = a.back() * lead_inv;
      q[k] = c;
      for (int j = 0; j <= db; ++j) a[k + j] -= c * b[j];
      trim(a);
    }
    return {std::move(q), std::move(a)};
  }

  static std::vector<Rational> poly_mul(const std::vector<Rational>& a,
                                        const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> p(a.size() + b.size() - 1, Rational());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
    trim(p);
    return p;
  }
  static std::vector<Rational> poly_sub(std::vector<Rational> a,
                                        const std::vector<Rational>& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
  }

  int order_;
  std::vector<Rational> c_;
};

// Parses a coefficient literal: a rational "p/q" or a polynomial expression
// in z such as "1/2 + 3*z^2" or "-z", interpreted as zeta_order.  Reports
// the offending column on error.
inline CycloNumber parse_coefficient(std::string_view text, int order) {
  struct Cursor {
    std::string_view s;
    std::size_t i = 0;
    void skip_ws() {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
    }
    bool done() {
      skip_ws();
      return i >= s.size();
    }
    char peek() {
      skip_ws();
      return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
      throw parse_error(what, "column " + std::to_string(i + 1));
    }
  } cur{text};

  auto parse_int = [&cur]() -> std::string {
    cur.skip_ws();
    std::string out;
    if (cur.i < cur.s.size() && (cur.s[cur.i] == '-' || cur.s[cur.i] == '+'))
      out += cur.s[cur.i++];
    std::size_t digits = 0;
    while (cur.i < cur.s.size() &&
           std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) {
      out += cur.s[cur.i++];
      ++digits;
    }
    if (digits == 0) cur.fail("expected integer");
    return out;
  };

  auto parse_rational = [&]() -> Rational {
    std::string num = parse_int();
    if (cur.peek() == '/') {
      ++cur.i;
      std::string den = parse_int();
      return Rational::parse(num + "/" + den);
    }
    return Rational::parse(num);
  };

  CycloNumber acc(order);
  bool first = true;
  while (!cur.done()) {
    int sign = 1;
    char c = cur.peek();
    if (c == '+' || c == '-') {
      sign = (c == '-') ? -1 : 1;
      ++cur.i;
    } else if (!first) {
      cur.fail("expected '+' or '-' between terms");
    }
    // term := rational [ '*' zpow ] | zpow
    Rational coeff(1);
    bool have_coeff = false;
    if (cur.peek() != 'z') {
      coeff = parse_rational();
      have_coeff = true;
    }
    long zexp = 0;
    if (cur.peek() == '*' || cur.peek() == 'z') {
      if (cur.peek() == '*') {
        if (!have_coeff) cur.fail("unexpected '*'");
        ++cur.i;
      }
      if (cur.peek() != 'z') cur.fail("expected 'z'");
      ++cur.i;
      zexp = 1;
      if (cur.peek() == '^') {
        ++cur.i;
        try {
          zexp = std::stol(parse_int());
        } catch (const std::exception&) {
          cur.fail("bad exponent");
        }
      }
    }
    if (sign < 0) coeff = -coeff;
    acc += CycloNumber::zeta_power(order, zexp) *
           CycloNumber::from_rational(coeff, order);
    first = false;
  }
  if (first) throw parse_error("empty coefficient literal");
  return acc;
}

}  // namespace talex
