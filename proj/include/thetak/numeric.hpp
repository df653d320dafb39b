#ifndef THETAK_NUMERIC_HPP
#define THETAK_NUMERIC_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace thetak {

struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact rational number. Thin wrapper over GMP's mpq_class that fixes the
/// canonical form (lowest terms, positive denominator) and exposes the
/// coefficient-field interface the generic polynomial code expects.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw ArithmeticError("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  static Rational from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ArithmeticError("bad rational literal: " + s);
    if (q.get_den() == 0) throw ArithmeticError("rational with zero denominator: " + s);
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }

  Rational inv() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    return Rational(mpq_class(1 / v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }

  /// sign of the value; used only for display normalization
  int sgn() const { return mpq_sgn(v_.get_mpq_t()); }

  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sgn() < 0 ? -a : a; }

/// Element of the cyclotomic field Q(zeta_p) for a prime p, stored as a
/// vector of rationals of length p-1 (coordinates of 1, z, ..., z^{p-2})
/// reduced modulo the p-th cyclotomic polynomial 1 + z + ... + z^{p-1}.
///
/// Plain rationals embed into every Q(zeta_p); they are carried with p == 0
/// so that integer literals and default-constructed zeros do not need to
/// know the prime. Arithmetic between two genuinely cyclotomic values
/// requires matching primes. Canonical form: a value whose higher
/// coordinates are all zero collapses back to the rational state.
class Cyclotomic {
 public:
  Cyclotomic() : p_(0), c_(1) {}
  Cyclotomic(long n) : p_(0), c_(1, mpq_class(n)) {}
  Cyclotomic(const Rational& r) : p_(0), c_(1, r.raw()) {}

  static bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  /// zeta_p as a field element. For p = 2 this collapses to -1.
  static Cyclotomic zeta(int p) {
    check_prime(p);
    Cyclotomic z;
    z.p_ = p;
    z.c_.assign(p - 1, mpq_class(0));
    if (p == 2) {
      z.c_[0] = -1;
    } else {
      z.c_[1] = 1;
    }
    z.normalize();
    return z;
  }

  /// zeta_p^k for any integer k (k taken mod p).
  static Cyclotomic zeta_pow(int p, long k) {
    check_prime(p);
    long e = ((k % p) + p) % p;
    Cyclotomic r(1);
    Cyclotomic z = zeta(p);
    for (long i = 0; i < e; ++i) r = r * z;
    return r;
  }

  int prime() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  bool is_one() const { return p_ == 0 && c_[0] == 1; }

  /// the rational coordinate vector (length 1 for rational state, p-1 otherwise)
  const std::vector<mpq_class>& coords() const { return c_; }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y, p] = align(a, b);
    Cyclotomic r;
    r.p_ = p;
    r.c_.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i) r.c_[i] = x[i] + y[i];
    r.normalize();
    return r;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y, p] = align(a, b);
    Cyclotomic r;
    r.p_ = p;
    if (p == 0) {
      r.c_.assign(1, x[0] * y[0]);
      return r;
    }
    // convolve with exponents mod p (zeta^p = 1), then eliminate zeta^{p-1}
    size_t n = static_cast<size_t>(p);
    std::vector<mpq_class> acc(n, mpq_class(0));
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (size_t j = 0; j < y.size(); ++j) {
        if (y[j] == 0) continue;
        acc[(i + j) % n] += x[i] * y[j];
      }
    }
    r.c_.assign(n - 1, mpq_class(0));
    for (size_t i = 0; i + 1 < n; ++i) r.c_[i] = acc[i] - acc[n - 1];
    r.normalize();
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  /// multiplicative inverse via extended Euclid in Q[z] against Phi_p.
  Cyclotomic inv() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    if (p_ == 0) {
      Cyclotomic r;
      r.c_[0] = 1 / c_[0];
      return r;
    }
    size_t n = static_cast<size_t>(p_);
    std::vector<mpq_class> phi(n, mpq_class(1));  // 1 + z + ... + z^{p-1}
    std::vector<mpq_class> a(c_);
    trim(a);
    // invariants: s*self + t*phi = r  (t never needed)
    std::vector<mpq_class> r0 = phi, r1 = a;
    std::vector<mpq_class> s0{mpq_class(0)}, s1{mpq_class(1)};
    while (true) {
      trim(r1);
      if (r1.empty()) throw ArithmeticError("non-invertible cyclotomic element");
      if (r1.size() == 1) break;
      auto [q, rem] = divmod(r0, r1);
      r0 = r1;
      r1 = rem;
      auto snew = sub(s0, mul(q, s1));
      s0 = s1;
      s1 = snew;
    }
    mpq_class lead = r1[0];
    Cyclotomic out;
    Cyclotomic zp = zeta(p_);
    Cyclotomic term(1);
    for (size_t i = 0; i < s1.size(); ++i) {
      out += Cyclotomic(Rational(mpq_class(s1[i] / lead))) * term;
      term = term * zp;
    }
    return out;
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inv(); }

  bool operator==(const Cyclotomic& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  int sgn() const {  // display heuristic: sign of the first nonzero coordinate
    for (const auto& q : c_)
      if (q != 0) return mpq_sgn(q.get_mpq_t());
    return 0;
  }

  std::string str() const {
    if (p_ == 0) return c_[0].get_str();
    std::string out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      mpq_class q = c_[i];
      if (first) {
        if (q < 0) { out += "-"; q = -q; }
      } else {
        out += q < 0 ? " - " : " + ";
        if (q < 0) q = -q;
      }
      std::string part;
      if (i == 0) {
        part = q.get_str();
      } else {
        std::string zp = i == 1 ? "z" : "z^" + std::to_string(i);
        part = (q == 1) ? zp : q.get_str() + "*" + zp;
      }
      out += part;
      first = false;
    }
    return first ? "0" : out;
  }

 private:
  static void check_prime(int p) {
    if (!is_prime(p)) throw ArithmeticError("not a prime: " + std::to_string(p));
  }

  void normalize() {
    if (p_ == 0) return;
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return;
    mpq_class keep = c_[0];
    p_ = 0;
    c_.assign(1, keep);
  }

  static std::tuple<std::vector<mpq_class>, std::vector<mpq_class>, int> align(
      const Cyclotomic& a, const Cyclotomic& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw ArithmeticError("mixed cyclotomic fields");
    int p = a.p_ != 0 ? a.p_ : b.p_;
    size_t len = p == 0 ? 1 : static_cast<size_t>(p - 1);
    std::vector<mpq_class> x(len, mpq_class(0)), y(len, mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) x[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) y[i] = b.c_[i];
    return {x, y, p};
  }

  // dense univariate helpers for the extended Euclid above
  static void trim(std::vector<mpq_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }
  static std::vector<mpq_class> sub(const std::vector<mpq_class>& a,
                                    const std::vector<mpq_class>& b) {
    std::vector<mpq_class> r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
  }
  static std::vector<mpq_class> mul(const std::vector<mpq_class>& a,
                                    const std::vector<mpq_class>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpq_class> r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
  }
  static std::pair<std::vector<mpq_class>, std::vector<mpq_class>> divmod(
      std::vector<mpq_class> num, const std::vector<mpq_class>& den) {
    trim(num);
    std::vector<mpq_class> q(
        num.size() >= den.size() ? num.size() - den.size() + 1 : 0, mpq_class(0));
    while (num.size() >= den.size() && !num.empty()) {
      mpq_class c = num.back() / den.back();
      size_t shift = num.size() - den.size();
      q[shift] += c;
      for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
      trim(num);
    }
    return {q, num};
  }

  int p_;
  std::vector<mpq_class> c_;
};

}  // namespace thetak

#endif
