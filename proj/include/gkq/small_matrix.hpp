// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_SMALL_MATRIX_HPP
#define GKQ_SMALL_MATRIX_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gkq/dual.hpp"

namespace gkq {

/// Row-major dense matrix over an arbitrary (possibly dual) scalar.  Used for
/// pointwise algebra inside field evaluators, where Eigen would need a full
/// NumTraits specialization per nesting level.
template <class S>
class SMat {
 public:
  SMat() = default;
  SMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), S(0.0)) {}

  static SMat identity(int n) {
    SMat r(n, n);
    for (int i = 0; i < n; ++i) r(i, i) = S(1.0);
    return r;
  }
  static SMat from_span(int rows, int cols, std::span<const S> data) {
    SMat r(rows, cols);
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = data[k];
    return r;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const std::vector<S>& data() const { return a_; }

  void copy_to(std::span<S> out) const {
    for (std::size_t k = 0; k < a_.size(); ++k) out[k] = a_[k];
  }

  SMat transpose() const {
    SMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// Copies `b` into this matrix with its top-left corner at (r0, c0).
  void set_block(int r0, int c0, const SMat& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  SMat block(int r0, int c0, int nr, int nc) const {
    SMat r(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  friend SMat operator*(const SMat& x, const SMat& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("SMat: shape mismatch in product");
    SMat r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const S& xik = x(i, k);
        for (int j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend SMat operator+(SMat x, const SMat& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] += y.a_[k];
    return x;
  }
  friend SMat operator-(SMat x, const SMat& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] -= y.a_[k];
    return x;
  }
  friend SMat operator*(double s, SMat x) {
    for (auto& v : x.a_) v = v * s;
    return x;
  }
  SMat operator-() const { return -1.0 * (*this); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> a_;
};

/// Gauss-Jordan inverse with partial pivoting on the value part.
template <class S>
SMat<S> inverse(const SMat<S>& a, double singular_tol = 1e-14) {
  const int n = a.rows();
  SMat<S> w = a;
  SMat<S> inv = SMat<S>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(w(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(value_of(w(r, col)));
      if (v > best) { best = v; piv = r; }
    }
    if (best < singular_tol) throw std::domain_error("matrix is numerically singular");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(w(col, j), w(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    }
    S d = S(1.0) / w(col, col);
    for (int j = 0; j < n; ++j) {
      w(col, j) = w(col, j) * d;
      inv(col, j) = inv(col, j) * d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      S f = w(r, col);
      if (value_of(f) == 0.0 && ad_depth_v<S> == 0) continue;
      for (int j = 0; j < n; ++j) {
        w(r, j) = w(r, j) - f * w(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace gkq

#endif  // GKQ_SMALL_MATRIX_HPP
