#ifndef THETAK_RESOLUTION_HPP
#define THETAK_RESOLUTION_HPP

#include <map>
#include <optional>

#include "thetak/complexes.hpp"

namespace thetak {

namespace detail {

/// Split off unit entries from the differentials of a complex, in place:
/// a constant pivot at (r, c) of diff(j) removes generator c of X_j and
/// generator r of X_{j-1} after clearing its row and column, with the
/// compensating operations applied to the neighbouring differentials.
/// Entries stay reduced mod f in mod_f mode. The scan order is fixed, so
/// the result is deterministic.
template <class K>
void prune_complex(RingPtr ring, RingMode mode, const Poly<K>& f, long lo,
                   std::vector<std::vector<long>>& twists, std::vector<Mat<K>>& diffs) {
  GroebnerBasis<K> fred(ring, {}, Mat<K>(ring, 0, 0), mode, f);
  auto nf = [&](const Poly<K>& p) {
    return mode == RingMode::mod_f ? fred.reduce_mod_f(p) : p;
  };
  (void)lo;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t j = 0; j < diffs.size() && !changed; ++j) {
      Mat<K>& d = diffs[j];
      for (size_t c = 0; c < d.cols() && !changed; ++c)
        for (size_t r = 0; r < d.rows() && !changed; ++r) {
          const Poly<K>& e = d.at(r, c);
          if (e.is_zero() || !e.is_constant()) continue;
          K u = e.constant_value();
          // clear row r across the other columns (column operations on d);
          // compensate on the incoming differential's rows
          for (size_t k = 0; k < d.cols(); ++k) {
            if (k == c || d.at(r, k).is_zero()) continue;
            Poly<K> q = d.at(r, k).scale(u.inv());
            for (size_t i = 0; i < d.rows(); ++i)
              d.at(i, k) = nf(d.at(i, k) - q * d.at(i, c));
            if (j + 1 < diffs.size()) {
              Mat<K>& up = diffs[j + 1];
              for (size_t t = 0; t < up.cols(); ++t)
                up.at(c, t) = nf(up.at(c, t) + q * up.at(k, t));
            }
          }
          // clear column c across the other rows (row operations on d);
          // compensate on the outgoing differential's columns
          for (size_t i = 0; i < d.rows(); ++i) {
            if (i == r || d.at(i, c).is_zero()) continue;
            Poly<K> q = d.at(i, c).scale(u.inv());
            for (size_t k = 0; k < d.cols(); ++k)
              d.at(i, k) = nf(d.at(i, k) - q * d.at(r, k));
            if (j > 0) {
              Mat<K>& down = diffs[j - 1];
              for (size_t t = 0; t < down.rows(); ++t)
                down.at(t, r) = nf(down.at(t, r) + q * down.at(t, i));
            }
          }
          // drop generator r of X_{j-1} and generator c of X_j
          Mat<K> nd(ring, d.rows() - 1, d.cols() - 1);
          for (size_t i = 0, ii = 0; i < d.rows(); ++i) {
            if (i == r) continue;
            for (size_t k = 0, kk = 0; k < d.cols(); ++k) {
              if (k == c) continue;
              nd.at(ii, kk) = d.at(i, k);
              ++kk;
            }
            ++ii;
          }
          diffs[j] = std::move(nd);
          twists[j].erase(twists[j].begin() + r);
          twists[j + 1].erase(twists[j + 1].begin() + c);
          if (j + 1 < diffs.size()) {
            Mat<K>& up = diffs[j + 1];
            Mat<K> nu(ring, up.rows() - 1, up.cols());
            for (size_t i = 0, ii = 0; i < up.rows(); ++i) {
              if (i == c) continue;
              for (size_t t = 0; t < up.cols(); ++t) nu.at(ii, t) = up.at(i, t);
              ++ii;
            }
            diffs[j + 1] = std::move(nu);
          }
          if (j > 0) {
            Mat<K>& down = diffs[j - 1];
            Mat<K> ndn(ring, down.rows(), down.cols() - 1);
            for (size_t i = 0; i < down.rows(); ++i)
              for (size_t t = 0, tt = 0; t < down.cols(); ++t) {
                if (t == r) continue;
                ndn.at(i, tt) = down.at(i, t);
                ++tt;
              }
            diffs[j - 1] = std::move(ndn);
          }
          changed = true;
        }
    }
  }
}

/// stable-sort each layer's generators by internal degree, permuting the
/// adjacent differentials to match
template <class K>
void reorder_canonically(RingPtr ring, std::vector<std::vector<long>>& twists,
                         std::vector<Mat<K>>& diffs) {
  std::vector<std::vector<size_t>> perm(twists.size());
  for (size_t layer = 0; layer < twists.size(); ++layer) {
    std::vector<size_t> p(twists[layer].size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = i;
    std::stable_sort(p.begin(), p.end(), [&](size_t a, size_t b) {
      return twists[layer][a] < twists[layer][b];
    });
    perm[layer] = p;
    std::vector<long> nt;
    for (size_t i : p) nt.push_back(twists[layer][i]);
    twists[layer] = std::move(nt);
  }
  for (size_t j = 0; j < diffs.size(); ++j) {
    const Mat<K>& d = diffs[j];
    Mat<K> nd(ring, d.rows(), d.cols());
    for (size_t i = 0; i < d.rows(); ++i)
      for (size_t k = 0; k < d.cols(); ++k)
        nd.at(i, k) = d.at(perm[j][i], perm[j + 1][k]);
    diffs[j] = std::move(nd);
  }
}

}  // namespace detail

/// Minimal graded free resolution data. The chain complex sits in
/// homological indices 0..computed_to; exactness holds at every interior
/// index by the syzygy construction, and minimality (no constant entries)
/// is restored by pruning.
template <class K>
struct FreeResolution {
  RingMode mode = RingMode::ambient;
  ModulePresentation<K> resolved;
  ChainComplex<K> complex;
  bool minimal = true;
  bool finite = false;
  long computed_to = 0;

  size_t rank(long i) const { return complex.rank(i); }
};

/// Resolve the presented module over the requested ring to max_index.
/// Over the ambient ring the loop stops when the syzygies vanish; over the
/// hypersurface it is truncated at max_index. One extra internal step is
/// computed so pruning can certify minimality of the reported top layer.
template <class K>
FreeResolution<K> resolve(const ModulePresentation<K>& M, RingMode mode,
                          long max_index) {
  M.validate();
  if (max_index < 1) throw std::invalid_argument("resolve: max_index must be >= 1");
  RingPtr ring = M.ring;
  Poly<K> f = M.f;
  if (mode == RingMode::mod_f && f.is_zero())
    throw ShapeError("resolve over mod_f requires the presentation to carry f");

  Mat<K> d1 = M.relations;
  if (M.mode == RingMode::mod_f && mode == RingMode::ambient) {
    // ambient presentation of a hypersurface module: adjoin f * identity
    d1 = Mat<K>::hcat(d1, Mat<K>::scalar(ring, M.rank(), f));
  }
  if (mode == RingMode::mod_f) {
    GroebnerBasis<K> fred(ring, {}, Mat<K>(ring, 0, 0), mode, f);
    d1 = fred.reduce_entries_mod_f(d1);
  }

  std::vector<std::vector<long>> twists{M.twists};
  std::vector<Mat<K>> diffs;
  bool finite = false;
  long internal_target = max_index + 1;
  {
    // drop zero columns of the presentation for a clean start
    std::vector<std::vector<Poly<K>>> cols;
    for (size_t j = 0; j < d1.cols(); ++j) {
      auto c = d1.col(j);
      bool zero = true;
      for (const auto& p : c)
        if (!p.is_zero()) zero = false;
      if (!zero) cols.push_back(std::move(c));
    }
    d1 = Mat<K>::from_cols(ring, M.rank(), cols);
  }
  twists.push_back(column_degrees(d1, twists[0]));
  diffs.push_back(d1);
  detail::prune_complex(ring, mode, f, 0, twists, diffs);

  for (long j = 1; j < internal_target; ++j) {
    if (diffs.back().cols() == 0) {
      finite = true;
      break;
    }
    auto [syz, syz_tw] = syzygy_matrix(diffs.back(), twists[twists.size() - 2], ring,
                                       mode, f);
    if (syz.cols() == 0) {
      finite = true;
      break;
    }
    twists.push_back(syz_tw);
    diffs.push_back(syz);
    detail::prune_complex(ring, mode, f, 0, twists, diffs);
    if (diffs.back().cols() == 0) {
      // pruning may have emptied the new top layer
      twists.pop_back();
      diffs.pop_back();
      finite = true;
      break;
    }
  }

  detail::reorder_canonically(ring, twists, diffs);

  // truncate the internal margin step
  while (static_cast<long>(diffs.size()) > max_index) {
    diffs.pop_back();
    twists.pop_back();
  }
  while (!twists.empty() && twists.back().empty()) {
    twists.pop_back();
    if (!diffs.empty()) diffs.pop_back();
  }

  FreeResolution<K> res;
  res.mode = mode;
  res.resolved = M;
  res.minimal = true;
  res.finite = finite;
  ChainComplex<K> X(ring, mode, mode == RingMode::mod_f ? f : Poly<K>::zero(ring));
  if (twists.empty() || (twists.size() == 1 && twists[0].empty())) {
    res.complex = ChainComplex<K>::zero(ring, mode, f);
    res.computed_to = 0;
    return res;
  }
  X.seed(0, twists[0]);
  for (size_t j = 0; j < diffs.size(); ++j) X.push_top(twists[j + 1], diffs[j]);
  res.complex = X;
  res.computed_to = static_cast<long>(diffs.size());
  res.complex.require_valid("resolution");
  for (long i = 1; i <= res.computed_to; ++i) {
    const Mat<K> d = res.complex.diff(i);
    for (size_t r = 0; r < d.rows(); ++r)
      for (size_t c = 0; c < d.cols(); ++c)
        if (!d.at(r, c).is_zero() && d.at(r, c).is_constant())
          throw std::logic_error("resolution is not minimal after pruning");
  }
  return res;
}

/// graded Betti numbers read off the twists of a minimal resolution
struct BettiTable {
  std::map<std::pair<long, long>, long> entries;  // (homological index, degree)
  long total(long i) const {
    long t = 0;
    for (const auto& [key, v] : entries)
      if (key.first == i) t += v;
    return t;
  }
};

template <class K>
BettiTable betti_table(const FreeResolution<K>& res) {
  if (!res.minimal) throw std::invalid_argument("betti_table needs a minimal resolution");
  BettiTable b;
  for (long i = 0; i <= res.computed_to; ++i)
    for (long d : res.complex.twists(i)) b.entries[{i, d}] += 1;
  return b;
}

enum class PeriodStrength { strict, weak };
enum class PeriodOutcome { found, not_periodic, insufficient_length };

template <class K>
struct PeriodInfo {
  long start = 0;          // least index s with D_{i+2} = D_i for all checked i >= s
  Mat<K> repeat_odd;       // D_{s+1}
  Mat<K> repeat_even;      // D_s  (pair composes to f * identity in the MCM range)
  long window = 0;         // number of verified equalities
  PeriodStrength strength = PeriodStrength::strict;
};

template <class K>
struct PeriodResult {
  PeriodOutcome outcome = PeriodOutcome::not_periodic;
  std::optional<PeriodInfo<K>> info;
};

/// Detect eventual 2-periodicity of a minimal hypersurface resolution by
/// exact matrix equality (twists must repeat shifted by deg f). Falls back
/// to graded-rank repetition, reported as weak periodicity.
template <class K>
PeriodResult<K> detect_period(const FreeResolution<K>& res, long min_window = 2) {
  PeriodResult<K> out;
  if (res.mode != RingMode::mod_f || res.finite) {
    out.outcome = PeriodOutcome::not_periodic;
    return out;
  }
  long L = res.computed_to;
  long degf = res.resolved.f.degree();
  if (L - 1 - min_window < 1) {
    out.outcome = PeriodOutcome::insufficient_length;
    return out;
  }
  auto twists_repeat = [&](long i) {
    const auto& a = res.complex.twists(i + 2);
    const auto& b = res.complex.twists(i);
    if (a.size() != b.size()) return false;
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k] != b[k] + degf) return false;
    return true;
  };
  for (auto strength : {PeriodStrength::strict, PeriodStrength::weak}) {
    for (long s = 1; L - 1 - s >= min_window; ++s) {
      bool ok = true;
      // twists must repeat shifted by deg f from s-1 on (s-1 pins the row
      // side of the first compared matrix pair)
      for (long j = s - 1; j <= L - 2 && ok; ++j)
        if (!twists_repeat(j)) ok = false;
      for (long i = s; i <= L - 2 && ok; ++i)
        if (strength == PeriodStrength::strict &&
            res.complex.diff(i + 2) != res.complex.diff(i))
          ok = false;
      if (ok) {
        PeriodInfo<K> info;
        info.start = s;
        info.repeat_odd = res.complex.diff(s + 1);
        info.repeat_even = res.complex.diff(s);
        info.window = L - 1 - s;
        info.strength = strength;
        out.outcome = PeriodOutcome::found;
        out.info = info;
        return out;
      }
    }
  }
  out.outcome = PeriodOutcome::not_periodic;
  return out;
}

}  // namespace thetak

#endif
