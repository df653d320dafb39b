#ifndef THETAK_POLY_HPP
#define THETAK_POLY_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thetak/numeric.hpp"
#include "thetak/ring.hpp"

namespace thetak {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Multivariate polynomial over a coefficient field K with exact arithmetic.
/// Terms are kept strictly sorted, leading term first, under the ring's
/// weighted grevlex order; zero coefficients are never stored.
template <class K>
class Poly {
 public:
  struct Term {
    Mono mono;
    K coef;
  };

  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
  static Poly constant(RingPtr ring, const K& c) {
    Poly p(ring);
    if (!c.is_zero()) p.terms_.push_back({Mono(ring->nvars()), c});
    return p;
  }
  static Poly variable(RingPtr ring, size_t i) {
    Poly p(ring);
    Mono m(ring->nvars());
    m[i] = 1;
    p.terms_.push_back({std::move(m), K(1)});
    return p;
  }
  static Poly monomial(RingPtr ring, Mono m, const K& c) {
    Poly p(ring);
    if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t nterms() const { return terms_.size(); }

  const Term& leading() const {
    if (terms_.empty()) throw ArithmeticError("leading term of zero polynomial");
    return terms_.front();
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  K constant_value() const {
    if (terms_.empty()) return K(0);
    if (!is_constant()) throw ArithmeticError("not a constant polynomial");
    return terms_[0].coef;
  }

  /// weighted degree of the leading term; -1 for the zero polynomial
  long degree() const {
    return terms_.empty() ? -1 : terms_.front().mono.weighted_degree(*ring_);
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    long d = terms_.front().mono.weighted_degree(*ring_);
    for (const auto& t : terms_)
      if (t.mono.weighted_degree(*ring_) != d) return false;
    return true;
  }

  Poly operator-() const {
    Poly r(*this);
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    require_same_ring(a.ring_, b.ring_);
    Poly r(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
      int c = mono_cmp(*a.ring_, a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        K s = a.terms_[i].coef + b.terms_[j].coef;
        if (!s.is_zero()) r.terms_.push_back({a.terms_[i].mono, s});
        ++i, ++j;
      }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  /// this += c * m * other; the workhorse of division loops
  void add_scaled(const K& c, const Mono& m, const Poly& other) {
    Poly scaled(other.ring_);
    scaled.terms_.reserve(other.terms_.size());
    for (const auto& t : other.terms_) {
      K nc = c * t.coef;
      if (!nc.is_zero()) scaled.terms_.push_back({m * t.mono, nc});
    }
    *this = *this + scaled;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    require_same_ring(a.ring_, b.ring_);
    Poly r(a.ring_);
    for (const auto& t : a.terms_) r.add_scaled(t.coef, t.mono, b);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scale(const K& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, c * t.coef});
    return r;
  }

  Poly derivative(size_t var) const {
    Poly r(ring_);
    for (const auto& t : terms_) {
      if (t.mono[var] == 0) continue;
      Mono m = t.mono;
      K c = t.coef * K(m[var]);
      m[var] -= 1;
      if (!c.is_zero()) r.terms_.push_back({std::move(m), c});
    }
    r.normalize();
    return r;
  }

  bool operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != o.terms_[i].mono || terms_[i].coef != o.terms_[i].coef)
        return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// canonical text form; parse(str()) round-trips
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
      K c = t.coef;
      std::string cs = c.str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (first) {
        if (neg) out << "-", cs = cs.substr(1);
      } else {
        out << (neg ? " - " : " + ");
        if (neg) cs = cs.substr(1);
      }
      bool wrapped = cs.find_first_of("+-") != std::string::npos;
      std::string mono = mono_str(t.mono);
      if (mono.empty()) {
        out << (wrapped ? "(" + cs + ")" : cs);
      } else if (cs == "1" && !wrapped) {
        out << mono;
      } else {
        out << (wrapped ? "(" + cs + ")" : cs) << "*" << mono;
      }
      first = false;
    }
    return out.str();
  }

  static Poly parse(const std::string& text, RingPtr ring);

 private:
  std::string mono_str(const Mono& m) const {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += ring_->vars()[i];
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

  void normalize() {
    std::map<std::vector<int32_t>, K> acc;
    for (auto& t : terms_) {
      auto it = acc.find(t.mono.exps());
      if (it == acc.end())
        acc.emplace(t.mono.exps(), t.coef);
      else
        it->second += t.coef;
    }
    terms_.clear();
    for (auto& [e, c] : acc)
      if (!c.is_zero()) terms_.push_back({Mono::from_exps(e), c});
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
      return mono_cmp(*ring_, a.mono, b.mono) > 0;
    });
  }

  RingPtr ring_;
  std::vector<Term> terms_;

  template <class K2>
  friend class PolyParser;
};

/// Recursive-descent parser for the single interchange grammar:
/// integers and rationals, declared variable names, + - * ^ and parentheses.
/// Division is permitted by nonzero constants only.
template <class K>
class PolyParser {
 public:
  PolyParser(const std::string& text, RingPtr ring)
      : s_(text), ring_(std::move(ring)) {}

  Poly<K> run() {
    Poly<K> p = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ParseError("unexpected trailing input at position " + std::to_string(pos_));
    return p;
  }

 private:
  Poly<K> expr() {
    skip_ws();
    bool neg = false;
    while (peek() == '+' || peek() == '-') {
      if (get() == '-') neg = !neg;
      skip_ws();
    }
    Poly<K> acc = term();
    if (neg) acc = -acc;
    skip_ws();
    while (peek() == '+' || peek() == '-') {
      char op = get();
      Poly<K> t = term();
      acc = op == '+' ? acc + t : acc - t;
      skip_ws();
    }
    return acc;
  }

  Poly<K> term() {
    Poly<K> acc = factor();
    skip_ws();
    while (peek() == '*' || peek() == '/') {
      char op = get();
      Poly<K> f = factor();
      if (op == '*') {
        acc = acc * f;
      } else {
        if (!f.is_constant()) throw ParseError("division by variable");
        K c = f.constant_value();
        if (c.is_zero()) throw ParseError("division by zero");
        acc = acc.scale(c.inv());
      }
      skip_ws();
    }
    return acc;
  }

  Poly<K> factor() {
    Poly<K> base = primary();
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      if (!std::isdigit(peek())) throw ParseError("exponent must be a nonnegative integer");
      long e = 0;
      while (std::isdigit(peek())) {
        e = e * 10 + (get() - '0');
        if (e > Mono::kMaxExp) throw ParseError("exponent too large");
      }
      Poly<K> r = Poly<K>::constant(ring_, K(1));
      for (long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Poly<K> primary() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      Poly<K> p = expr();
      skip_ws();
      if (get() != ')') throw ParseError("missing closing parenthesis");
      return p;
    }
    if (c == '-' || c == '+') {  // unary sign inside a factor, e.g. "2*-3" is rejected upstream
      get();
      Poly<K> p = primary();
      return c == '-' ? -p : p;
    }
    if (std::isdigit(c)) {
      std::string num;
      while (std::isdigit(peek())) num += get();
      return Poly<K>::constant(ring_, coef_from_integer(num));
    }
    if (std::isalpha(c) || c == '_') {
      std::string name;
      while (std::isalnum(peek()) || peek() == '_') name += get();
      int idx = ring_->var_index(name);
      if (idx < 0) throw ParseError("unknown variable: " + name);
      return Poly<K>::variable(ring_, static_cast<size_t>(idx));
    }
    if (c == '\0') throw ParseError("unexpected end of input");
    throw ParseError(std::string("unexpected character '") + c + "'");
  }

  static K coef_from_integer(const std::string& digits) {
    return K(Rational::from_string(digits));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

  std::string s_;
  size_t pos_ = 0;
  RingPtr ring_;
};

template <class K>
Poly<K> Poly<K>::parse(const std::string& text, RingPtr ring) {
  return PolyParser<K>(text, std::move(ring)).run();
}

using QPoly = Poly<Rational>;
using CPoly = Poly<Cyclotomic>;

/// lift a rational polynomial into the cyclotomic coefficient field
inline CPoly to_cyclotomic(const QPoly& p) {
  CPoly r(p.ring());
  for (const auto& t : p.terms())
    r += CPoly::monomial(p.ring(), t.mono, Cyclotomic(t.coef));
  return r;
}

}  // namespace thetak

#endif
