#ifndef THETAK_GROEBNER_HPP
#define THETAK_GROEBNER_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "thetak/presentation.hpp"

namespace thetak {

struct GBOptions {
  bool track_syzygies = false;
  bool use_criteria = true;
};

/// Reduced Groebner basis of a graded submodule of a free module, with
/// optional syzygy tracking.
///
/// The engine runs Buchberger on an augmented free module F (+) E where E
/// carries one tracking coordinate per input generator, ordered so that any
/// F-term beats any E-term. One run then yields, by elimination:
///   - the reduced basis of the submodule (elements with leading term in F),
///   - canonical normal-form lifts of members through the generators,
///   - a reduced basis of the syzygy module (elements supported in E).
/// In mod_f mode, f times each free-module generator is adjoined without a
/// tracking coordinate, so lifts and syzygies are taken over R = Q/(f).
///
/// Selection follows the normal strategy (lowest twisted lcm degree first,
/// ties by pair index); skips use the product criterion (rank-one inputs
/// only; it is not valid for module S-pairs) and the chain criterion.
template <class K>
class GroebnerBasis {
 public:
  using Vec = std::vector<Poly<K>>;

  GroebnerBasis(RingPtr ring, std::vector<long> twists, const Mat<K>& gens,
                RingMode mode, Poly<K> f, GBOptions opts = {})
      : ring_(std::move(ring)),
        mode_(mode),
        f_(std::move(f)),
        twists_f_(std::move(twists)),
        opts_(opts) {
    if (gens.rows() != twists_f_.size()) throw ShapeError("twists != generator rows");
    require_homogeneous_columns(gens, twists_f_, "groebner input");
    if (mode_ == RingMode::mod_f) {
      require_same_ring(ring_, f_.ring());
      if (f_.is_zero()) throw ShapeError("mod_f groebner without f");
      if (!f_.is_homogeneous()) throw HomogeneityError("f must be homogeneous");
    }
    ngens_ = gens.cols();
    rank_f_ = twists_f_.size();
    rank_e_ = opts_.track_syzygies ? ngens_ : 0;

    twists_all_ = twists_f_;
    if (opts_.track_syzygies) {
      auto cdeg = column_degrees(gens, twists_f_);
      for (long d : cdeg) twists_all_.push_back(d);
    }

    std::vector<Vec> input;
    for (size_t j = 0; j < ngens_; ++j) {
      Vec v(rank_f_ + rank_e_, Poly<K>::zero(ring_));
      for (size_t i = 0; i < rank_f_; ++i) v[i] = gens.at(i, j);
      if (opts_.track_syzygies) v[rank_f_ + j] = Poly<K>::constant(ring_, K(1));
      input.push_back(std::move(v));
    }
    if (mode_ == RingMode::mod_f) {
      for (size_t i = 0; i < rank_f_; ++i) {
        Vec v(rank_f_ + rank_e_, Poly<K>::zero(ring_));
        v[i] = f_;
        input.push_back(std::move(v));
      }
    }
    buchberger(input);
    interreduce();
    sort_canonically();
  }

  const RingPtr& ring() const { return ring_; }
  RingMode mode() const { return mode_; }
  const Poly<K>& f() const { return f_; }
  const std::vector<long>& twists() const { return twists_f_; }
  size_t generator_count() const { return ngens_; }

  /// reduced basis of the submodule, one column per element (F-part only)
  Mat<K> basis_matrix() const {
    std::vector<std::vector<Poly<K>>> cols;
    for (size_t b : f_lead_indices_) {
      std::vector<Poly<K>> c(basis_[b].begin(), basis_[b].begin() + rank_f_);
      cols.push_back(std::move(c));
    }
    return Mat<K>::from_cols(ring_, rank_f_, cols);
  }

  /// remainder of v under full division: no term divisible by a basis lead
  Vec normal_form(const Vec& v) const {
    check_vec(v);
    Vec work = embed(v);
    Vec rem = reduce_full(work);
    return Vec(rem.begin(), rem.begin() + rank_f_);
  }

  bool contains(const Vec& v) const {
    Vec nf = normal_form(v);
    for (const auto& p : nf)
      if (!p.is_zero()) return false;
    return true;
  }

  /// canonical coordinates c with v = sum c_j * gen_j (mod f in mod_f mode),
  /// reduced against the syzygy basis; nullopt when v is not in the span
  std::optional<std::vector<Poly<K>>> lift(const Vec& v) const {
    require_tracking();
    check_vec(v);
    Vec rem = reduce_full(embed(v));
    for (size_t i = 0; i < rank_f_; ++i)
      if (!rem[i].is_zero()) return std::nullopt;
    std::vector<Poly<K>> c(ngens_, Poly<K>::zero(ring_));
    for (size_t j = 0; j < ngens_; ++j) c[j] = -rem[rank_f_ + j];
    return c;
  }

  /// reduced basis of the syzygy module of the input generators
  /// (over R in mod_f mode), as columns, plus the matching twists
  std::pair<Mat<K>, std::vector<long>> syzygies() const {
    require_tracking();
    std::vector<long> etw(twists_all_.begin() + rank_f_, twists_all_.end());
    std::vector<std::vector<Poly<K>>> cols;
    std::vector<long> ctw;
    for (size_t b : e_lead_indices_) {
      std::vector<Poly<K>> c(basis_[b].begin() + rank_f_, basis_[b].end());
      if (mode_ == RingMode::mod_f)
        for (auto& p : c) p = reduce_mod_f(p);
      bool zero = true;
      for (const auto& p : c)
        if (!p.is_zero()) zero = false;
      if (zero) continue;  // an f-multiple column is the zero syzygy over R
      Mat<K> single = Mat<K>::from_cols(ring_, ngens_, {c});
      auto d = homogeneous_column_degree(single, 0, etw);
      ctw.push_back(d ? *d : 0);
      cols.push_back(std::move(c));
    }
    return {Mat<K>::from_cols(ring_, ngens_, cols), ctw};
  }

  /// minimal generators of the leading-term module, grouped by position
  const std::vector<std::vector<Mono>>& lead_monomials() const {
    if (leads_.empty()) build_leads();
    return leads_;
  }

  Poly<K> reduce_mod_f(const Poly<K>& p) const {
    if (mode_ != RingMode::mod_f) return p;
    // univariate division by the single element f
    Poly<K> work = p, rem = Poly<K>::zero(ring_);
    const auto& ft = f_.leading();
    while (!work.is_zero()) {
      const auto& lt = work.leading();
      if (ft.mono.divides(lt.mono)) {
        work.add_scaled(-(lt.coef / ft.coef), ft.mono.divide_into(lt.mono), f_);
      } else {
        rem += Poly<K>::monomial(ring_, lt.mono, lt.coef);
        work -= Poly<K>::monomial(ring_, lt.mono, lt.coef);
      }
    }
    return rem;
  }

  Mat<K> reduce_entries_mod_f(const Mat<K>& m) const {
    Mat<K> r(ring_, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = reduce_mod_f(m.at(i, j));
    return r;
  }

 private:
  struct Lead {
    ModTerm t;
    bool valid = false;
  };

  void check_vec(const Vec& v) const {
    if (v.size() != rank_f_) throw ShapeError("module element rank mismatch");
    for (const auto& p : v)
      if (!p.is_zero()) require_same_ring(ring_, p.ring());
  }
  void require_tracking() const {
    if (!opts_.track_syzygies)
      throw std::logic_error("syzygy tracking was not enabled for this basis");
  }

  Vec embed(const Vec& v) const {
    Vec w(rank_f_ + rank_e_, Poly<K>::zero(ring_));
    for (size_t i = 0; i < rank_f_; ++i) w[i] = v[i];
    return w;
  }

  // elimination order: any F-term beats any E-term; within a part, the
  // twist-aware term-over-position order
  int aug_cmp(const ModTerm& a, const ModTerm& b) const {
    bool ae = static_cast<size_t>(a.pos) >= rank_f_;
    bool be = static_cast<size_t>(b.pos) >= rank_f_;
    if (ae != be) return ae ? -1 : 1;
    return modterm_cmp(*ring_, twists_all_, a, b);
  }

  Lead leading(const Vec& v) const {
    Lead best;
    for (size_t p = 0; p < v.size(); ++p) {
      if (v[p].is_zero()) continue;
      ModTerm t{v[p].leading().mono, static_cast<int>(p)};
      if (!best.valid || aug_cmp(t, best.t) > 0) {
        best.t = t;
        best.valid = true;
      }
    }
    return best;
  }

  K lead_coef(const Vec& v, const ModTerm& t) const {
    return v[t.pos].leading().coef;
  }

  static void vec_axpy(Vec& target, const K& c, const Mono& m, const Vec& src) {
    for (size_t i = 0; i < target.size(); ++i)
      if (!src[i].is_zero()) target[i].add_scaled(c, m, src[i]);
  }

  Vec reduce_full(Vec work) const {
    Vec rem(work.size(), Poly<K>::zero(ring_));
    while (true) {
      Lead lt = leading(work);
      if (!lt.valid) break;
      bool reduced = false;
      for (size_t b : by_position_[lt.t.pos]) {
        const ModTerm& bl = basis_leads_[b];
        if (bl.mono.divides(lt.t.mono)) {
          K c = lead_coef(work, lt.t);
          vec_axpy(work, -c, bl.mono.divide_into(lt.t.mono), basis_[b]);
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        const auto& t = work[lt.t.pos].leading();
        rem[lt.t.pos] += Poly<K>::monomial(ring_, t.mono, t.coef);
        work[lt.t.pos] -= Poly<K>::monomial(ring_, t.mono, t.coef);
      }
    }
    return rem;
  }

  void make_monic(Vec& v) const {
    Lead lt = leading(v);
    if (!lt.valid) return;
    K c = lead_coef(v, lt.t).inv();
    for (auto& p : v) p = p.scale(c);
  }

  struct PairKey {
    long degree;
    size_t j, i;  // j > i; newest element first in the tie-break
    bool operator<(const PairKey& o) const {
      if (degree != o.degree) return degree < o.degree;
      if (j != o.j) return j < o.j;
      return i < o.i;
    }
  };

  long lcm_degree(const Mono& lcm, int pos) const {
    return lcm.weighted_degree(*ring_) + twists_all_[pos];
  }

  void add_element(Vec v, std::set<PairKey>& queue,
                   std::map<std::pair<size_t, size_t>, Mono>& pair_lcm) {
    make_monic(v);
    size_t t = basis_.size();
    Lead lt = leading(v);
    basis_.push_back(std::move(v));
    basis_leads_.push_back(lt.t);
    by_position_[lt.t.pos].push_back(t);
    for (size_t i = 0; i < t; ++i) {
      if (basis_leads_[i].pos != lt.t.pos) continue;
      Mono l = Mono::lcm(basis_leads_[i].mono, lt.t.mono);
      queue.insert({lcm_degree(l, lt.t.pos), t, i});
      pair_lcm[{i, t}] = l;
    }
  }

  void buchberger(const std::vector<Vec>& input) {
    by_position_.assign(rank_f_ + rank_e_, {});
    std::set<PairKey> queue;
    std::map<std::pair<size_t, size_t>, Mono> pair_lcm;
    for (const Vec& v : input) {
      Vec nf = reduce_full(v);
      Lead lt = leading(nf);
      if (lt.valid) add_element(std::move(nf), queue, pair_lcm);
    }
    while (!queue.empty()) {
      PairKey pk = *queue.begin();
      queue.erase(queue.begin());
      size_t i = pk.i, j = pk.j;
      const ModTerm& li = basis_leads_[i];
      const ModTerm& lj = basis_leads_[j];
      Mono lcm = pair_lcm.at({i, j});

      if (opts_.use_criteria) {
        // product criterion: sound for ideals only
        if (rank_f_ + rank_e_ == 1 && Mono::coprime(li.mono, lj.mono)) continue;
        // chain criterion: a third lead dividing the lcm whose pairs with
        // both ends are no longer pending
        bool skip = false;
        for (size_t k : by_position_[li.pos]) {
          if (k == i || k == j) continue;
          if (!basis_leads_[k].mono.divides(lcm)) continue;
          auto key = [&](size_t a, size_t b) {
            size_t lo = std::min(a, b), hi = std::max(a, b);
            auto it = pair_lcm.find({lo, hi});
            if (it == pair_lcm.end()) return false;  // pair never existed
            return queue.count({lcm_degree(it->second, li.pos), hi, lo}) == 0;
          };
          if (key(i, k) && key(j, k)) {
            skip = true;
            break;
          }
        }
        if (skip) continue;
      }

      Vec spoly(rank_f_ + rank_e_, Poly<K>::zero(ring_));
      vec_axpy(spoly, K(1), li.mono.divide_into(lcm), basis_[i]);
      vec_axpy(spoly, -K(1), lj.mono.divide_into(lcm), basis_[j]);
      Vec nf = reduce_full(std::move(spoly));
      Lead lt = leading(nf);
      if (lt.valid) add_element(std::move(nf), queue, pair_lcm);
    }
  }

  void interreduce() {
    // repeat full tail reduction of each element against the others until
    // stable; drop elements whose lead becomes reducible
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t b = 0; b < basis_.size(); ++b) {
        Vec v = basis_[b];
        // remove b from the index while reducing it
        auto& bucket = by_position_[basis_leads_[b].pos];
        bucket.erase(std::find(bucket.begin(), bucket.end(), b));
        Vec nf = reduce_full(v);
        Lead lt = leading(nf);
        if (!lt.valid) {
          basis_.erase(basis_.begin() + b);
          basis_leads_.erase(basis_leads_.begin() + b);
          reindex();
          changed = true;
          break;
        }
        make_monic(nf);
        if (nf != basis_[b]) changed = true;
        basis_[b] = std::move(nf);
        basis_leads_[b] = lt.t;
        reindex();
      }
    }
    f_lead_indices_.clear();
    e_lead_indices_.clear();
    for (size_t b = 0; b < basis_.size(); ++b) {
      if (static_cast<size_t>(basis_leads_[b].pos) < rank_f_)
        f_lead_indices_.push_back(b);
      else
        e_lead_indices_.push_back(b);
    }
  }

  void reindex() {
    by_position_.assign(rank_f_ + rank_e_, {});
    for (size_t b = 0; b < basis_.size(); ++b)
      by_position_[basis_leads_[b].pos].push_back(b);
  }

  void sort_canonically() {
    // output order: twisted degree, then position, then monomial; position
    // before monomial keeps syzygy bases aligned across periodic steps
    auto out_less = [&](const ModTerm& a, const ModTerm& b) {
      long da = a.mono.weighted_degree(*ring_) + twists_all_[a.pos];
      long db = b.mono.weighted_degree(*ring_) + twists_all_[b.pos];
      if (da != db) return da < db;
      if (a.pos != b.pos) return a.pos < b.pos;
      return mono_cmp(*ring_, a.mono, b.mono) < 0;
    };
    std::vector<size_t> order(basis_.size());
    for (size_t b = 0; b < order.size(); ++b) order[b] = b;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return out_less(basis_leads_[a], basis_leads_[b]);
    });
    std::vector<Vec> nb;
    std::vector<ModTerm> nl;
    for (size_t b : order) {
      nb.push_back(std::move(basis_[b]));
      nl.push_back(basis_leads_[b]);
    }
    basis_ = std::move(nb);
    basis_leads_ = std::move(nl);
    reindex();
    f_lead_indices_.clear();
    e_lead_indices_.clear();
    for (size_t b = 0; b < basis_.size(); ++b) {
      if (static_cast<size_t>(basis_leads_[b].pos) < rank_f_)
        f_lead_indices_.push_back(b);
      else
        e_lead_indices_.push_back(b);
    }
  }

  void build_leads() const {
    leads_.assign(rank_f_, {});
    for (size_t b : f_lead_indices_) {
      const ModTerm& t = basis_leads_[b];
      leads_[t.pos].push_back(t.mono);
    }
    // prune non-minimal generators
    for (auto& bucket : leads_) {
      std::vector<Mono> minimal;
      for (size_t i = 0; i < bucket.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < bucket.size(); ++j) {
          if (i == j) continue;
          if (bucket[j].divides(bucket[i]) && !(bucket[i] == bucket[j] && j > i)) {
            redundant = true;
            break;
          }
        }
        if (!redundant) minimal.push_back(bucket[i]);
      }
      bucket = std::move(minimal);
    }
  }

  RingPtr ring_;
  RingMode mode_;
  Poly<K> f_;
  std::vector<long> twists_f_;
  GBOptions opts_;
  size_t ngens_ = 0, rank_f_ = 0, rank_e_ = 0;
  std::vector<long> twists_all_;

  std::vector<Vec> basis_;
  std::vector<ModTerm> basis_leads_;
  std::vector<std::vector<size_t>> by_position_;
  std::vector<size_t> f_lead_indices_, e_lead_indices_;
  mutable std::vector<std::vector<Mono>> leads_;
};

// ---------------------------------------------------------------------------
// spec-level operations over presentations

template <class K>
GroebnerBasis<K> groebner_of_presentation(const ModulePresentation<K>& pres,
                                          GBOptions opts = {}) {
  pres.validate();
  return GroebnerBasis<K>(pres.ring, pres.twists, pres.relations, pres.mode, pres.f,
                          opts);
}

/// columns generating the syzygy module of the columns of m
template <class K>
std::pair<Mat<K>, std::vector<long>> syzygy_matrix(const Mat<K>& m,
                                                   const std::vector<long>& twists,
                                                   RingPtr ring, RingMode mode,
                                                   const Poly<K>& f) {
  GroebnerBasis<K> gb(ring, twists, m, mode, f, GBOptions{.track_syzygies = true});
  return gb.syzygies();
}

/// solve d * h = target columnwise; nullopt when some column is not in the
/// column span of d (over R in mod_f mode)
template <class K>
std::optional<Mat<K>> lift_through(const Mat<K>& d, const Mat<K>& target,
                                   const std::vector<long>& twists, RingPtr ring,
                                   RingMode mode, const Poly<K>& f) {
  if (d.rows() != target.rows()) throw ShapeError("lift_through: row mismatch");
  require_homogeneous_columns(target, twists, "lift target");
  GroebnerBasis<K> gb(ring, twists, d, mode, f, GBOptions{.track_syzygies = true});
  Mat<K> h(ring, d.cols(), target.cols());
  for (size_t j = 0; j < target.cols(); ++j) {
    auto c = gb.lift(target.col(j));
    if (!c) return std::nullopt;
    for (size_t i = 0; i < d.cols(); ++i)
      h.at(i, j) = mode == RingMode::mod_f ? gb.reduce_mod_f((*c)[i]) : (*c)[i];
  }
  return h;
}

namespace detail {

/// per-position standard monomial walk; visit() sees every monomial not
/// divisible by a lead, with pruning at weighted degree > degree_cap
template <class Visit>
inline void walk_standard_monomials(const Ring& ring, const std::vector<Mono>& leads,
                                    long degree_cap, Visit visit) {
  for (const Mono& m : leads)
    if (m.is_one()) return;  // unit ideal: empty staircase
  size_t n = ring.nvars();
  std::set<std::vector<int32_t>> seen;
  std::vector<Mono> frontier;
  Mono one(n);
  auto divisible = [&](const Mono& m) {
    for (const Mono& l : leads)
      if (l.divides(m)) return true;
    return false;
  };
  if (divisible(one)) return;
  if (degree_cap >= 0 && one.weighted_degree(ring) > degree_cap) return;
  frontier.push_back(one);
  seen.insert(one.exps());
  visit(one);
  while (!frontier.empty()) {
    Mono m = frontier.back();
    frontier.pop_back();
    for (size_t v = 0; v < n; ++v) {
      Mono next = m;
      next[v] += 1;
      if (degree_cap >= 0 && next.weighted_degree(ring) > degree_cap) continue;
      if (seen.count(next.exps())) continue;
      if (divisible(next)) continue;
      seen.insert(next.exps());
      visit(next);
      frontier.push_back(next);
    }
  }
}

/// finite staircase test: some pure power of every variable must lead
inline bool staircase_finite(size_t nvars, const std::vector<Mono>& leads) {
  for (const Mono& m : leads)
    if (m.is_one()) return true;
  for (size_t v = 0; v < nvars; ++v) {
    bool found = false;
    for (const Mono& m : leads) {
      bool pure = m[v] > 0;
      for (size_t w = 0; pure && w < nvars; ++w)
        if (w != v && m[w] != 0) pure = false;
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

/// vector-space dimension of the presented quotient as the number of
/// standard monomials; empty optional means infinite
template <class K>
std::optional<long> quotient_length(const ModulePresentation<K>& pres) {
  GroebnerBasis<K> gb = groebner_of_presentation(pres);
  const auto& leads = gb.lead_monomials();
  long total = 0;
  for (size_t p = 0; p < pres.rank(); ++p) {
    if (!detail::staircase_finite(pres.ring->nvars(), leads[p])) return std::nullopt;
    long count = 0;
    detail::walk_standard_monomials(*pres.ring, leads[p], -1,
                                    [&](const Mono&) { ++count; });
    total += count;
  }
  return total;
}

/// Krull dimension of the presented quotient: combinatorial dimension of
/// the standard-monomial region of the initial module
template <class K>
long quotient_dim(const ModulePresentation<K>& pres) {
  GroebnerBasis<K> gb = groebner_of_presentation(pres);
  const auto& leads = gb.lead_monomials();
  size_t n = pres.ring->nvars();
  long best = 0;
  bool any_position_alive = false;
  for (size_t p = 0; p < pres.rank(); ++p) {
    bool unit = false;
    for (const Mono& m : leads[p])
      if (m.is_one()) unit = true;
    if (unit) continue;
    any_position_alive = true;
    // largest variable subset S such that no lead has support inside S
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      long size = __builtin_popcount(mask);
      if (size <= best) continue;
      bool ok = true;
      for (const Mono& m : leads[p]) {
        bool inside = true;
        for (size_t v = 0; v < n && inside; ++v)
          if (m[v] > 0 && !(mask & (1u << v))) inside = false;
        if (inside) {
          ok = false;
          break;
        }
      }
      if (ok) best = size;
    }
  }
  if (!any_position_alive) return 0;
  return best;
}

/// graded dimensions of the quotient through internal degree `max_degree`
template <class K>
std::map<long, long> hilbert_function(const ModulePresentation<K>& pres,
                                      long max_degree) {
  GroebnerBasis<K> gb = groebner_of_presentation(pres);
  const auto& leads = gb.lead_monomials();
  std::map<long, long> hf;
  for (size_t p = 0; p < pres.rank(); ++p) {
    long tw = pres.twists[p];
    if (tw > max_degree) continue;
    detail::walk_standard_monomials(
        *pres.ring, leads[p], max_degree - tw,
        [&](const Mono& m) { hf[m.weighted_degree(*pres.ring) + tw] += 1; });
  }
  return hf;
}

}  // namespace thetak

#endif
