#ifndef THETAK_COMPLEXES_HPP
#define THETAK_COMPLEXES_HPP

#include <functional>
#include <string>
#include <vector>

#include "thetak/groebner.hpp"

namespace thetak {

struct InfiniteLengthError : std::runtime_error {
  long index;
  explicit InfiniteLengthError(long i)
      : std::runtime_error("infinite length homology at index " + std::to_string(i)),
        index(i) {}
};

struct GradedFreeModule {
  std::vector<long> twists;
  size_t rank() const { return twists.size(); }
};

/// Bounded complex of graded free modules with degree-zero differentials.
/// diff(i) maps the module at homological index i to the one at i-1; the
/// composite of consecutive differentials must vanish exactly (mod f when
/// the complex lives over the hypersurface).
template <class K>
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(RingPtr ring, RingMode mode, Poly<K> f)
      : ring_(std::move(ring)), mode_(mode), f_(std::move(f)) {}

  static ChainComplex zero(RingPtr ring, RingMode mode = RingMode::ambient,
                           Poly<K> f = {}) {
    if (f.is_zero() && mode == RingMode::ambient) f = Poly<K>::zero(ring);
    return ChainComplex(std::move(ring), mode, std::move(f));
  }

  /// single free module concentrated in one homological degree
  static ChainComplex concentrated(RingPtr ring, long index, std::vector<long> twists,
                                   RingMode mode = RingMode::ambient, Poly<K> f = {}) {
    if (f.is_zero() && mode == RingMode::ambient) f = Poly<K>::zero(ring);
    ChainComplex X(ring, mode, std::move(f));
    X.lo_ = index;
    X.modules_.push_back({std::move(twists)});
    X.trim();
    return X;
  }

  const RingPtr& ring() const { return ring_; }
  RingMode mode() const { return mode_; }
  const Poly<K>& f() const { return f_; }

  bool is_zero() const { return modules_.empty(); }
  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(modules_.size()) - 1; }

  const std::vector<long>& twists(long i) const {
    static const std::vector<long> empty;
    if (i < lo() || i > hi() || modules_.empty()) return empty;
    return modules_[i - lo_].twists;
  }
  size_t rank(long i) const { return twists(i).size(); }

  /// differential X_i -> X_{i-1}; an empty-shaped zero matrix out of range
  Mat<K> diff(long i) const {
    if (modules_.empty() || i <= lo() || i > hi())
      return Mat<K>(ring_, rank(i - 1), rank(i));
    return diffs_[i - lo_ - 1];
  }

  /// append the next module upward with the connecting differential
  void push_top(std::vector<long> twists, Mat<K> d) {
    if (modules_.empty()) throw ShapeError("push_top on empty complex; seed first");
    if (d.rows() != modules_.back().twists.size() || d.cols() != twists.size())
      throw ShapeError("push_top: differential shape mismatch");
    modules_.push_back({std::move(twists)});
    diffs_.push_back(std::move(d));
  }

  void seed(long index, std::vector<long> twists) {
    if (!modules_.empty()) throw ShapeError("seed on nonempty complex");
    lo_ = index;
    modules_.push_back({std::move(twists)});
  }

  struct Certificate {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string v) {
      ok = false;
      violations.push_back(std::move(v));
    }
  };

  /// d-squared, shape, and homogeneity checks; exact
  Certificate validate() const {
    Certificate cert;
    for (long i = lo() + 1; i <= hi(); ++i) {
      const Mat<K> d = diff(i);
      if (d.rows() != rank(i - 1) || d.cols() != rank(i)) {
        cert.fail("differential shape at index " + std::to_string(i));
        continue;
      }
      const auto& src = twists(i);
      const auto& dst = twists(i - 1);
      for (size_t r = 0; r < d.rows(); ++r)
        for (size_t c = 0; c < d.cols(); ++c) {
          const Poly<K>& e = d.at(r, c);
          if (e.is_zero()) continue;
          if (!e.is_homogeneous() || e.degree() != src[c] - dst[r])
            cert.fail("entry (" + std::to_string(r) + "," + std::to_string(c) +
                      ") at index " + std::to_string(i) + " is not homogeneous of the twist-forced degree");
        }
    }
    for (long i = lo() + 2; i <= hi(); ++i) {
      Mat<K> prod = diff(i - 1) * diff(i);
      if (mode_ == RingMode::mod_f) {
        GroebnerBasis<K> fred(ring_, std::vector<long>(prod.rows(), 0),
                              Mat<K>(ring_, prod.rows(), 0), mode_, f_);
        prod = fred.reduce_entries_mod_f(prod);
      }
      if (!prod.is_zero()) cert.fail("d o d != 0 between indices " + std::to_string(i) +
                                     " and " + std::to_string(i - 2));
    }
    return cert;
  }

  void require_valid(const char* what) const {
    Certificate c = validate();
    if (!c.ok) throw std::logic_error(std::string(what) + ": " + c.violations.front());
  }

  /// drop zero-rank modules on both ends
  void trim() {
    while (!modules_.empty() && modules_.back().twists.empty()) {
      modules_.pop_back();
      if (!diffs_.empty()) diffs_.pop_back();
    }
    while (!modules_.empty() && modules_.front().twists.empty()) {
      modules_.erase(modules_.begin());
      if (!diffs_.empty()) diffs_.erase(diffs_.begin());
      ++lo_;
    }
  }

  bool same_shape(const ChainComplex& o) const {
    if (is_zero() != o.is_zero()) return false;
    if (is_zero()) return true;
    if (lo() != o.lo() || hi() != o.hi()) return false;
    for (long i = lo(); i <= hi(); ++i)
      if (twists(i) != o.twists(i)) return false;
    return true;
  }

  bool operator==(const ChainComplex& o) const {
    if (!same_shape(o)) return false;
    for (long i = lo() + 1; i <= hi(); ++i)
      if (diff(i) != o.diff(i)) return false;
    return true;
  }

 private:
  RingPtr ring_;
  RingMode mode_ = RingMode::ambient;
  Poly<K> f_;
  long lo_ = 0;
  std::vector<GradedFreeModule> modules_;
  std::vector<Mat<K>> diffs_;
};

/// Formal difference of two complexes; the only representation of classes
/// in the Grothendieck group with supports. Only functionals of it are ever
/// compared, never the class itself.
template <class K>
struct VirtualComplex {
  ChainComplex<K> plus;
  ChainComplex<K> minus;
};

// ---------------------------------------------------------------------------
// constructions

/// Koszul complex on a sequence of homogeneous elements, with signs from the
/// right-contraction convention: d(e_{i1<...<ij}) = sum_k (-1)^{j-k} f_{ik} e_{S-ik}.
/// Basis within each degree: subsets in lexicographic order.
template <class K>
ChainComplex<K> koszul_complex(const std::vector<Poly<K>>& seq) {
  if (seq.empty()) throw std::invalid_argument("koszul complex of an empty sequence");
  RingPtr ring = seq.front().ring();
  for (const auto& p : seq) {
    require_same_ring(ring, p.ring());
    if (!p.is_homogeneous()) throw HomogeneityError("koszul entries must be homogeneous");
  }
  size_t c = seq.size();
  // subsets of {0..c-1} of each size, lexicographic
  std::vector<std::vector<std::vector<int>>> layers(c + 1);
  std::vector<int> cur;
  std::function<void(size_t)> rec = [&](size_t start) {
    layers[cur.size()].push_back(cur);
    for (size_t v = start; v < c; ++v) {
      cur.push_back(static_cast<int>(v));
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);

  auto subset_index = [&](const std::vector<int>& s) {
    const auto& layer = layers[s.size()];
    for (size_t k = 0; k < layer.size(); ++k)
      if (layer[k] == s) return k;
    throw std::logic_error("koszul subset lookup");
  };

  ChainComplex<K> X(ring, RingMode::ambient, Poly<K>::zero(ring));
  std::vector<long> tw0{0};
  X.seed(0, tw0);
  for (size_t j = 1; j <= c; ++j) {
    std::vector<long> tw;
    for (const auto& s : layers[j]) {
      long d = 0;
      for (int v : s) d += seq[v].degree();
      tw.push_back(d);
    }
    Mat<K> d(ring, layers[j - 1].size(), layers[j].size());
    for (size_t col = 0; col < layers[j].size(); ++col) {
      const auto& s = layers[j][col];
      for (size_t k = 0; k < s.size(); ++k) {
        std::vector<int> sub = s;
        sub.erase(sub.begin() + k);
        size_t row = subset_index(sub);
        K sign((j - 1 - k) % 2 == 0 ? 1 : -1);
        d.at(row, col) += seq[s[k]].scale(sign);
      }
    }
    X.push_top(std::move(tw), std::move(d));
  }
  return X;
}

template <class K>
ChainComplex<K> direct_sum(const ChainComplex<K>& X, const ChainComplex<K>& Y) {
  if (X.is_zero()) return Y;
  if (Y.is_zero()) return X;
  require_same_ring(X.ring(), Y.ring());
  if (X.mode() != Y.mode() || X.f() != Y.f())
    throw RingMismatch("direct sum across ring modes");
  long lo = std::min(X.lo(), Y.lo()), hi = std::max(X.hi(), Y.hi());
  ChainComplex<K> Z(X.ring(), X.mode(), X.f());
  auto twists_at = [&](long i) {
    std::vector<long> t = X.twists(i);
    const auto& u = Y.twists(i);
    t.insert(t.end(), u.begin(), u.end());
    return t;
  };
  Z.seed(lo, twists_at(lo));
  for (long i = lo + 1; i <= hi; ++i) {
    Mat<K> dx = X.diff(i), dy = Y.diff(i);
    Mat<K> d(X.ring(), X.rank(i - 1) + Y.rank(i - 1), X.rank(i) + Y.rank(i));
    for (size_t r = 0; r < dx.rows(); ++r)
      for (size_t c = 0; c < dx.cols(); ++c) d.at(r, c) = dx.at(r, c);
    for (size_t r = 0; r < dy.rows(); ++r)
      for (size_t c = 0; c < dy.cols(); ++c)
        d.at(X.rank(i - 1) + r, X.rank(i) + c) = dy.at(r, c);
    Z.push_top(twists_at(i), std::move(d));
  }
  Z.trim();
  return Z;
}

/// provenance of one basis element of a tensor-product complex
struct TensorLabel {
  long left_index;   // homological degree of the left factor
  size_t left_pos;   // basis position within the left module
  size_t right_pos;  // basis position within the right module (degree m - left_index)
};

template <class K>
struct TensorResult {
  ChainComplex<K> complex;
  // labels[i - complex.lo()] lists the provenance of each basis element at
  // homological index i, in basis order
  std::vector<std::vector<TensorLabel>> labels;
};

/// Total complex of a binary tensor product with the Koszul sign rule
/// d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db.
/// Basis within total degree m: blocks by ascending left index a, pairs
/// (left basis position, right basis position) in lexicographic order.
template <class K>
TensorResult<K> tensor_with_labels(const ChainComplex<K>& X, const ChainComplex<K>& Y) {
  require_same_ring(X.ring(), Y.ring());
  if (X.mode() != Y.mode() || X.f() != Y.f())
    throw RingMismatch("tensor across ring modes");
  TensorResult<K> out;
  if (X.is_zero() || Y.is_zero()) {
    out.complex = ChainComplex<K>::zero(X.ring(), X.mode(), X.f());
    return out;
  }
  long lo = X.lo() + Y.lo(), hi = X.hi() + Y.hi();
  ChainComplex<K> Z(X.ring(), X.mode(), X.f());

  auto layer = [&](long m) {
    std::vector<TensorLabel> labels;
    std::vector<long> tw;
    for (long a = X.lo(); a <= X.hi(); ++a) {
      long b = m - a;
      const auto& xt = X.twists(a);
      const auto& yt = Y.twists(b);
      for (size_t s = 0; s < xt.size(); ++s)
        for (size_t t = 0; t < yt.size(); ++t) {
          labels.push_back({a, s, t});
          tw.push_back(xt[s] + yt[t]);
        }
    }
    return std::make_pair(labels, tw);
  };

  auto [labels_lo, tw_lo] = layer(lo);
  Z.seed(lo, tw_lo);
  std::vector<std::vector<TensorLabel>> all_labels{labels_lo};
  std::vector<TensorLabel> prev = labels_lo;
  for (long m = lo + 1; m <= hi; ++m) {
    auto [labels, tw] = layer(m);
    // index lookup in the target layer
    auto find_target = [&](long a, size_t s, size_t t) {
      for (size_t r = 0; r < prev.size(); ++r)
        if (prev[r].left_index == a && prev[r].left_pos == s && prev[r].right_pos == t)
          return r;
      throw std::logic_error("tensor target lookup");
    };
    Mat<K> d(X.ring(), prev.size(), labels.size());
    for (size_t c = 0; c < labels.size(); ++c) {
      auto [a, s, t] = labels[c];
      long b = m - a;
      Mat<K> dx = X.diff(a);
      for (size_t r = 0; r < dx.rows(); ++r)
        if (!dx.at(r, s).is_zero())
          d.at(find_target(a - 1, r, t), c) += dx.at(r, s);
      Mat<K> dy = Y.diff(b);
      K sign(a % 2 == 0 ? 1 : -1);
      for (size_t r = 0; r < dy.rows(); ++r)
        if (!dy.at(r, t).is_zero())
          d.at(find_target(a, s, r), c) += dy.at(r, t).scale(sign);
    }
    Z.push_top(tw, std::move(d));
    all_labels.push_back(labels);
    prev = labels;
  }
  Z.trim();
  out.complex = Z;
  // labels for trimmed boundary layers are dropped alongside
  long drop_front = Z.is_zero() ? 0 : Z.lo() - lo;
  if (Z.is_zero()) {
    out.labels.clear();
  } else {
    out.labels.assign(all_labels.begin() + drop_front,
                      all_labels.begin() + drop_front + (Z.hi() - Z.lo() + 1));
  }
  return out;
}

template <class K>
ChainComplex<K> tensor_complexes(const ChainComplex<K>& X, const ChainComplex<K>& Y) {
  return tensor_with_labels(X, Y).complex;
}

template <class K>
VirtualComplex<K> tensor_virtual(const VirtualComplex<K>& V, const ChainComplex<K>& W) {
  return {tensor_complexes(V.plus, W), tensor_complexes(V.minus, W)};
}

// ---------------------------------------------------------------------------
// presentations of subquotients and homology

/// Remove generators that appear with a unit coefficient in some relation,
/// rewriting the other relations accordingly; also drops zero relation
/// columns. Presents an isomorphic module with fewer generators.
template <class K>
ModulePresentation<K> minimize_presentation(ModulePresentation<K> pres) {
  bool changed = true;
  while (changed) {
    changed = false;
    const Mat<K>& rel = pres.relations;
    for (size_t j = 0; j < rel.cols() && !changed; ++j)
      for (size_t i = 0; i < rel.rows() && !changed; ++i) {
        const Poly<K>& e = rel.at(i, j);
        if (e.is_zero() || !e.is_constant()) continue;
        K c = e.constant_value();
        Mat<K> next(pres.ring, rel.rows() - 1, rel.cols() - 1);
        for (size_t k = 0, kc = 0; k < rel.cols(); ++k) {
          if (k == j) continue;
          // col_k -= (e_ik / c) * col_j, then delete row i and column j
          for (size_t r = 0, rr = 0; r < rel.rows(); ++r) {
            if (r == i) continue;
            Poly<K> v = rel.at(r, k);
            if (!rel.at(i, k).is_zero())
              v -= rel.at(i, k) * rel.at(r, j).scale(c.inv());
            next.at(rr, kc) = v;
            ++rr;
          }
          ++kc;
        }
        pres.relations = std::move(next);
        pres.twists.erase(pres.twists.begin() + i);
        changed = true;
      }
  }
  // drop zero columns
  std::vector<std::vector<Poly<K>>> cols;
  for (size_t j = 0; j < pres.relations.cols(); ++j) {
    auto c = pres.relations.col(j);
    bool zero = true;
    for (const auto& p : c)
      if (!p.is_zero()) zero = false;
    if (!zero) cols.push_back(std::move(c));
  }
  pres.relations = Mat<K>::from_cols(pres.ring, pres.twists.size(), cols);
  return pres;
}

/// Presentation of W/V where W is generated by the columns of `sub_gens`
/// inside the free module with `ambient_twists`, and V by `denominator`
/// (required to lie inside W): generators are the W-columns, relations are
/// the canonical lifts of the V-columns plus the syzygies of W.
template <class K>
ModulePresentation<K> subquotient_presentation(RingPtr ring, RingMode mode,
                                               const Poly<K>& f,
                                               const std::vector<long>& ambient_twists,
                                               const Mat<K>& sub_gens,
                                               const Mat<K>& denominator) {
  GroebnerBasis<K> gb(ring, ambient_twists, sub_gens, mode, f,
                      GBOptions{.track_syzygies = true});
  ModulePresentation<K> pres;
  pres.ring = ring;
  pres.mode = mode;
  pres.f = f;
  pres.twists = column_degrees(sub_gens, ambient_twists);
  Mat<K> lifts(ring, sub_gens.cols(), denominator.cols());
  for (size_t j = 0; j < denominator.cols(); ++j) {
    auto c = gb.lift(denominator.col(j));
    if (!c)
      throw std::logic_error("subquotient: denominator is not inside the submodule");
    for (size_t i = 0; i < sub_gens.cols(); ++i)
      lifts.at(i, j) = mode == RingMode::mod_f ? gb.reduce_mod_f((*c)[i]) : (*c)[i];
  }
  pres.relations = Mat<K>::hcat(lifts, gb.syzygies().first);
  return minimize_presentation(std::move(pres));
}

/// homology at index i as a presented module over the complex's ring mode
template <class K>
ModulePresentation<K> homology(const ChainComplex<K>& X, long i) {
  RingPtr ring = X.ring();
  if (X.is_zero() || i < X.lo() || i > X.hi()) {
    ModulePresentation<K> zero;
    zero.ring = ring;
    zero.mode = X.mode();
    zero.f = X.f();
    zero.relations = Mat<K>(ring, 0, 0);
    return zero;
  }
  const std::vector<long>& here = X.twists(i);
  Mat<K> incoming = X.diff(i + 1);
  if (i == X.lo()) {
    // kernel is everything: plain cokernel of the incoming differential
    ModulePresentation<K> pres;
    pres.ring = ring;
    pres.mode = X.mode();
    pres.f = X.f();
    pres.twists = here;
    pres.relations = incoming;
    return minimize_presentation(std::move(pres));
  }
  auto [ker_gens, ker_tw] =
      syzygy_matrix(X.diff(i), X.twists(i - 1), ring, X.mode(), X.f());
  return subquotient_presentation(ring, X.mode(), X.f(), here, ker_gens, incoming);
}

/// alternating sum of homology lengths; throws InfiniteLengthError with the
/// offending homological index
template <class K>
long euler_char(const ChainComplex<K>& X) {
  long chi = 0;
  for (long i = X.lo(); i <= X.hi(); ++i) {
    auto len = quotient_length(homology(X, i));
    if (!len) throw InfiniteLengthError(i);
    chi += (i % 2 == 0 ? *len : -*len);
  }
  return chi;
}

template <class K>
long euler_char(const VirtualComplex<K>& V) {
  return euler_char(V.plus) - euler_char(V.minus);
}

}  // namespace thetak

#endif
