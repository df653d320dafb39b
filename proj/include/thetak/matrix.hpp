#ifndef THETAK_MATRIX_HPP
#define THETAK_MATRIX_HPP

#include <optional>
#include <vector>

#include "thetak/poly.hpp"

namespace thetak {

/// Dense matrix of polynomials. Columns play the role of module elements
/// throughout (relations, syzygies, differentials).
template <class K>
class Mat {
 public:
  Mat() = default;
  Mat(RingPtr ring, size_t rows, size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols),
        e_(rows * cols, Poly<K>::zero(ring_)) {}

  static Mat identity(RingPtr ring, size_t n) {
    Mat m(ring, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Poly<K>::constant(ring, K(1));
    return m;
  }
  static Mat scalar(RingPtr ring, size_t n, const Poly<K>& s) {
    Mat m(ring, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = s;
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Poly<K>& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Poly<K>& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  std::vector<Poly<K>> col(size_t j) const {
    std::vector<Poly<K>> c;
    c.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
    return c;
  }
  void set_col(size_t j, const std::vector<Poly<K>>& c) {
    for (size_t i = 0; i < rows_; ++i) at(i, j) = c[i];
  }

  static Mat from_cols(RingPtr ring, size_t rows,
                       const std::vector<std::vector<Poly<K>>>& cols) {
    Mat m(ring, rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ShapeError("column length mismatch");
      m.set_col(j, cols[j]);
    }
    return m;
  }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    require_same_ring(a.ring_, b.ring_);
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    Mat r(a.ring_, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const Poly<K>& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) {
          if (b.at(k, j).is_zero()) continue;
          r.at(i, j) += aik * b.at(k, j);
        }
      }
    return r;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    require_same_ring(a.ring_, b.ring_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix shape mismatch");
    Mat r(a.ring_, a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  /// horizontal concatenation [a | b]
  static Mat hcat(const Mat& a, const Mat& b) {
    require_same_ring(a.ring_, b.ring_);
    if (a.rows_ != b.rows_) throw ShapeError("hcat row mismatch");
    Mat r(a.ring_, a.rows_, a.cols_ + b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
      for (size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
      for (size_t j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
    }
    return r;
  }

  /// A (x) I_m : block matrix with a_{ik} on the (i,k) block diagonal.
  /// Basis convention e_a (x) g_b -> index a*m + b on both sides.
  static Mat kron_right_identity(const Mat& a, size_t m) {
    Mat r(a.ring_, a.rows_ * m, a.cols_ * m);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (size_t b = 0; b < m; ++b) r.at(i * m + b, k * m + b) = a.at(i, k);
      }
    return r;
  }

  /// I_n (x) B with the same basis convention: index a*rows(B) + b.
  static Mat kron_left_identity(size_t n, const Mat& b) {
    Mat r(b.ring_, n * b.rows_, n * b.cols_);
    for (size_t a = 0; a < n; ++a)
      for (size_t i = 0; i < b.rows_; ++i)
        for (size_t j = 0; j < b.cols_; ++j)
          r.at(a * b.rows_ + i, a * b.cols_ + j) = b.at(i, j);
    return r;
  }

 private:
  RingPtr ring_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Poly<K>> e_;
};

/// Degree of a homogeneous column against row twists: deg(v_i) + twist_i
/// must agree over all nonzero entries. Returns the common value, or the
/// column's "virtual degree" fallback for a zero column.
template <class K>
std::optional<long> homogeneous_column_degree(const Mat<K>& m, size_t j,
                                              const std::vector<long>& row_twists) {
  std::optional<long> deg;
  for (size_t i = 0; i < m.rows(); ++i) {
    const Poly<K>& p = m.at(i, j);
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) return std::nullopt;
    long d = p.degree() + row_twists[i];
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg ? deg : std::optional<long>(0);
}

template <class K>
void require_homogeneous_columns(const Mat<K>& m, const std::vector<long>& row_twists,
                                 const char* what) {
  if (m.rows() != row_twists.size()) throw ShapeError("twist count != row count");
  for (size_t j = 0; j < m.cols(); ++j)
    if (!homogeneous_column_degree(m, j, row_twists))
      throw HomogeneityError(std::string(what) + ": non-homogeneous column " +
                             std::to_string(j));
}

/// column degrees of a homogeneous matrix (source twists of the graded map)
template <class K>
std::vector<long> column_degrees(const Mat<K>& m, const std::vector<long>& row_twists) {
  std::vector<long> out;
  out.reserve(m.cols());
  for (size_t j = 0; j < m.cols(); ++j) {
    auto d = homogeneous_column_degree(m, j, row_twists);
    if (!d) throw HomogeneityError("non-homogeneous column " + std::to_string(j));
    out.push_back(*d);
  }
  return out;
}

template <class K>
Mat<Cyclotomic> to_cyclotomic(const Mat<K>& m) {
  Mat<Cyclotomic> r(m.ring(), m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = to_cyclotomic(m.at(i, j));
  return r;
}

}  // namespace thetak

#endif
