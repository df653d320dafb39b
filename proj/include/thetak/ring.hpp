#ifndef THETAK_RING_HPP
#define THETAK_RING_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetak/numeric.hpp"

namespace thetak {

struct RingMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HomogeneityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ambient polynomial ring: ordered variable names with positive integer
/// weights. Shared immutably by every polynomial built over it.
class Ring {
 public:
  Ring(std::vector<std::string> vars, std::vector<long> weights)
      : vars_(std::move(vars)), weights_(std::move(weights)) {
    if (vars_.empty()) throw std::invalid_argument("ring needs at least one variable");
    if (vars_.size() != weights_.size())
      throw std::invalid_argument("one weight per variable required");
    for (long w : weights_)
      if (w < 1) throw std::invalid_argument("weights must be >= 1");
    for (size_t i = 0; i < vars_.size(); ++i)
      for (size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j])
          throw std::invalid_argument("duplicate variable name: " + vars_[i]);
  }

  static std::shared_ptr<const Ring> make(std::vector<std::string> vars,
                                          std::vector<long> weights) {
    return std::make_shared<const Ring>(std::move(vars), std::move(weights));
  }
  static std::shared_ptr<const Ring> make_unit(std::vector<std::string> vars) {
    std::vector<long> w(vars.size(), 1);
    return std::make_shared<const Ring>(std::move(vars), std::move(w));
  }

  size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<long>& weights() const { return weights_; }

  int var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool operator==(const Ring& o) const {
    return vars_ == o.vars_ && weights_ == o.weights_;
  }

 private:
  std::vector<std::string> vars_;
  std::vector<long> weights_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw RingMismatch("operands live in different rings");
}

/// Monomial as an exponent vector over a fixed ring. Exponents are small
/// fixed-width integers; products check for overflow.
class Mono {
 public:
  Mono() = default;
  explicit Mono(size_t nvars) : e_(nvars, 0) {}
  static Mono from_exps(std::vector<int32_t> exps) {
    Mono m;
    m.e_ = std::move(exps);
    return m;
  }

  size_t size() const { return e_.size(); }
  int32_t operator[](size_t i) const { return e_[i]; }
  int32_t& operator[](size_t i) { return e_[i]; }
  const std::vector<int32_t>& exps() const { return e_; }

  bool is_one() const {
    for (int32_t x : e_)
      if (x != 0) return false;
    return true;
  }

  long weighted_degree(const Ring& ring) const {
    long d = 0;
    for (size_t i = 0; i < e_.size(); ++i) d += static_cast<long>(e_[i]) * ring.weights()[i];
    return d;
  }

  static constexpr int32_t kMaxExp = 1 << 24;

  Mono operator*(const Mono& o) const {
    Mono r(*this);
    for (size_t i = 0; i < e_.size(); ++i) {
      r.e_[i] += o.e_[i];
      if (r.e_[i] > kMaxExp) throw ArithmeticError("monomial exponent overflow");
    }
    return r;
  }

  bool divides(const Mono& o) const {
    for (size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  /// o / this, assuming divisibility
  Mono divide_into(const Mono& o) const {
    Mono r(o);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
    return r;
  }

  static Mono lcm(const Mono& a, const Mono& b) {
    Mono r(a);
    for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    return r;
  }

  static bool coprime(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] > 0 && b.e_[i] > 0) return false;
    return true;
  }

  bool operator==(const Mono& o) const { return e_ == o.e_; }
  bool operator!=(const Mono& o) const { return e_ != o.e_; }

 private:
  std::vector<int32_t> e_;
};

/// Weighted graded reverse lexicographic comparison.
/// Returns <0, 0, >0 as a < b, a == b, a > b.
inline int mono_cmp(const Ring& ring, const Mono& a, const Mono& b) {
  long da = a.weighted_degree(ring), db = b.weighted_degree(ring);
  if (da != db) return da < db ? -1 : 1;
  // revlex tie-break: the last nonzero entry of a-b negative means a > b
  for (size_t i = a.size(); i-- > 0;) {
    int32_t d = a[i] - b[i];
    if (d != 0) return d < 0 ? 1 : -1;
  }
  return 0;
}

/// Position of a term inside a graded free module: monomial at a component.
struct ModTerm {
  Mono mono;
  int pos = 0;
};

/// Term-over-position order on a graded free module, degree first:
/// compare twist-adjusted weighted degrees, then the monomials in weighted
/// grevlex, then prefer the earlier component.
inline int modterm_cmp(const Ring& ring, const std::vector<long>& twists,
                       const ModTerm& a, const ModTerm& b) {
  long da = a.mono.weighted_degree(ring) + twists[a.pos];
  long db = b.mono.weighted_degree(ring) + twists[b.pos];
  if (da != db) return da < db ? -1 : 1;
  int c = mono_cmp(ring, a.mono, b.mono);
  if (c != 0) return c;
  if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
  return 0;
}

}  // namespace thetak

#endif
