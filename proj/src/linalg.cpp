// SPDX-License-Identifier: Apache-2.0
#include "gkq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gkq {

namespace {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

// Orthonormal basis of the null space of `a` (columns of the full V).
template <class T>
Mat<T> null_space(const Mat<T>& a, double tol) {
  const auto n = a.cols();
  if (a.rows() == 0) return Mat<T>::Identity(n, n);
  Eigen::JacobiSVD<Mat<T>> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(smax, 1.0)) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

template <class T>
void require_same_ambient(const BasicSubspace<T>& a, const BasicSubspace<T>& b, const char* what) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": ambient dimensions " +
                                                  std::to_string(a.ambient_dim()) + " and " +
                                                  std::to_string(b.ambient_dim()));
}

double clamp_asin(double s) { return std::asin(std::clamp(s, 0.0, 1.0)); }

}  // namespace

FiberMetric FiberMetric::standard(int m) {
  FiberMetric q;
  q.dim_m = m;
  q.pairing_matrix = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  q.pairing_matrix.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  q.pairing_matrix.bottomLeftCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  return q;
}

template <class T>
BasicSubspace<T> BasicSubspace<T>::span(const Matrix& vectors, double tol) {
  BasicSubspace s(static_cast<int>(vectors.rows()), tol);
  if (vectors.cols() == 0) return s;
  Eigen::JacobiSVD<Matrix> svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  Eigen::Index rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * smax) ++rank;
  s.basis_ = svd.matrixU().leftCols(rank);
  return s;
}

template <class T>
BasicSubspace<T> BasicSubspace<T>::span(std::span<const Vector> vectors, int ambient_dim, double tol) {
  Matrix m(ambient_dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim)
      throw Error(ErrorCode::DimensionMismatch, "span: vector " + std::to_string(i) + " has dimension " +
                                                    std::to_string(vectors[i].size()) + ", expected " +
                                                    std::to_string(ambient_dim));
    m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return span(m, tol);
}

template <class T>
BasicSubspace<T> BasicSubspace<T>::whole(int ambient_dim, double tol) {
  return span(Matrix::Identity(ambient_dim, ambient_dim), tol);
}

template <class T>
BasicSubspace<T> perp_pairing(const BasicSubspace<T>& s, const FiberMetric& q) {
  if (s.ambient_dim() != q.fiber_dim()) throw Error(ErrorCode::DimensionMismatch, "perp_pairing: ambient dimension");
  Mat<T> qt = q.pairing_matrix.cast<T>();
  Mat<T> a = s.basis().transpose() * qt;
  return BasicSubspace<T>::span(null_space<T>(a, s.tol()), s.tol());
}

template <class T>
BasicSubspace<T> intersect(const BasicSubspace<T>& a, const BasicSubspace<T>& b) {
  require_same_ambient(a, b, "intersect");
  const int n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return BasicSubspace<T>(n, a.tol());
  Mat<T> stacked(2 * n, n);
  stacked.topRows(n) = a.projector() - Mat<T>::Identity(n, n);
  stacked.bottomRows(n) = b.projector() - Mat<T>::Identity(n, n);
  return BasicSubspace<T>::span(null_space<T>(stacked, a.tol()), a.tol());
}

template <class T>
BasicSubspace<T> sum(const BasicSubspace<T>& a, const BasicSubspace<T>& b) {
  require_same_ambient(a, b, "sum");
  Mat<T> cat(a.ambient_dim(), a.dim() + b.dim());
  cat << a.basis(), b.basis();
  return BasicSubspace<T>::span(cat, a.tol());
}

template <class T>
BasicSubspace<T> image(const typename BasicSubspace<T>::Matrix& a, const BasicSubspace<T>& s) {
  if (a.cols() != s.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "image: operator shape");
  return BasicSubspace<T>::span(a * s.basis(), s.tol());
}

template <class T>
std::vector<double> principal_angles(const BasicSubspace<T>& a, const BasicSubspace<T>& b) {
  require_same_ambient(a, b, "principal_angles");
  const int k = std::min(a.dim(), b.dim());
  std::vector<double> out;
  if (k == 0) return out;
  // Cosines from B_a^H B_b, sines from the residual of projecting the smaller
  // basis; combine with atan2 for accuracy at both ends.
  const BasicSubspace<T>& small = a.dim() <= b.dim() ? a : b;
  const BasicSubspace<T>& large = a.dim() <= b.dim() ? b : a;
  Mat<T> c = large.basis().adjoint() * small.basis();
  Eigen::JacobiSVD<Mat<T>> svd(c, Eigen::ComputeThinV);
  Mat<T> v = svd.matrixV();
  Mat<T> resid = small.basis() * v - large.projector() * small.basis() * v;
  for (int i = 0; i < k; ++i) {
    double cs = svd.singularValues()(i);
    double sn = resid.col(i).norm();
    out.push_back(std::atan2(sn, cs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class T>
double inclusion_angle(const BasicSubspace<T>& a, const BasicSubspace<T>& b) {
  require_same_ambient(a, b, "inclusion_angle");
  if (a.dim() == 0) return 0.0;
  if (b.dim() == 0) return std::numbers::pi / 2;
  Mat<T> resid = a.basis() - b.projector() * a.basis();
  Eigen::JacobiSVD<Mat<T>> svd(resid);
  return clamp_asin(svd.singularValues()(0));
}

template <class T>
Comparison subspace_equal(const BasicSubspace<T>& a, const BasicSubspace<T>& b, double angle_tol) {
  require_same_ambient(a, b, "subspace_equal");
  if (a.dim() != b.dim()) return {false, std::numbers::pi / 2};
  if (a.dim() == 0) return {true, 0.0};
  double angle = std::max(inclusion_angle(a, b), inclusion_angle(b, a));
  return {angle < angle_tol, angle};
}

template <class T>
double invariance_leakage(const typename BasicSubspace<T>::Matrix& a, const BasicSubspace<T>& s) {
  if (a.rows() != s.ambient_dim() || a.cols() != s.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "restrict_operator: operator shape");
  if (s.dim() == 0) return 0.0;
  Mat<T> ab = a * s.basis();
  Mat<T> leak = ab - s.projector() * ab;
  Eigen::JacobiSVD<Mat<T>> svd(leak);
  return svd.singularValues()(0);
}

template <class T>
typename BasicSubspace<T>::Matrix restrict_operator(const typename BasicSubspace<T>::Matrix& a,
                                                    const BasicSubspace<T>& s, double tol) {
  double leak = invariance_leakage<T>(a, s);
  if (leak > tol)
    throw Error(ErrorCode::NotInvariant, "subspace not invariant: leakage " + std::to_string(leak));
  return s.basis().adjoint() * a * s.basis();
}

ComplexSubspace complexify(const Subspace& s) {
  return ComplexSubspace::span(s.basis().cast<cplx>(), s.tol());
}

ComplexSubspace conj(const ComplexSubspace& s) { return ComplexSubspace::span(s.basis().conjugate(), s.tol()); }

template <class T>
double isotropy_residual(const BasicSubspace<T>& s, const FiberMetric& q) {
  if (s.dim() == 0) return 0.0;
  Mat<T> g = s.basis().transpose() * q.pairing_matrix.cast<T>() * s.basis();
  return g.cwiseAbs().maxCoeff();
}

#define GKQ_INSTANTIATE(T)                                                                               \
  template class BasicSubspace<T>;                                                                       \
  template BasicSubspace<T> perp_pairing(const BasicSubspace<T>&, const FiberMetric&);                    \
  template BasicSubspace<T> intersect(const BasicSubspace<T>&, const BasicSubspace<T>&);                  \
  template BasicSubspace<T> sum(const BasicSubspace<T>&, const BasicSubspace<T>&);                        \
  template BasicSubspace<T> image(const BasicSubspace<T>::Matrix&, const BasicSubspace<T>&);              \
  template std::vector<double> principal_angles(const BasicSubspace<T>&, const BasicSubspace<T>&);        \
  template double inclusion_angle(const BasicSubspace<T>&, const BasicSubspace<T>&);                      \
  template Comparison subspace_equal(const BasicSubspace<T>&, const BasicSubspace<T>&, double);           \
  template double invariance_leakage<T>(const BasicSubspace<T>::Matrix&, const BasicSubspace<T>&);        \
  template BasicSubspace<T>::Matrix restrict_operator<T>(const BasicSubspace<T>::Matrix&,                 \
                                                         const BasicSubspace<T>&, double);                \
  template double isotropy_residual(const BasicSubspace<T>&, const FiberMetric&);

GKQ_INSTANTIATE(double)
GKQ_INSTANTIATE(cplx)

#undef GKQ_INSTANTIATE

}  // namespace gkq
