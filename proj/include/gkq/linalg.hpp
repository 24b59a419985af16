// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_LINALG_HPP
#define GKQ_LINALG_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gkq/error.hpp"

namespace gkq {

using cplx = std::complex<double>;

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kDefaultAngleTol = 1e-8;

/// Split pairing on TM + T*M: Q = [[0, Id], [Id, 0]].
struct FiberMetric {
  int dim_m = 0;
  Eigen::MatrixXd pairing_matrix;

  static FiberMetric standard(int m);
  int fiber_dim() const { return 2 * dim_m; }
};

/// Linear subspace of a real or complex fiber, stored as an orthonormal basis.
/// Rank decisions are relative: singular values below tol * (largest singular
/// value) count as zero.
template <class T>
class BasicSubspace {
 public:
  using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

  BasicSubspace() = default;
  /// Zero subspace of the given ambient dimension.
  explicit BasicSubspace(int ambient_dim, double tol = kDefaultRankTol)
      : ambient_(ambient_dim), basis_(ambient_dim, 0), tol_(tol) {}

  /// Span of the columns of `vectors`.
  static BasicSubspace span(const Matrix& vectors, double tol = kDefaultRankTol);
  static BasicSubspace span(std::span<const Vector> vectors, int ambient_dim, double tol = kDefaultRankTol);
  static BasicSubspace whole(int ambient_dim, double tol = kDefaultRankTol);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  double tol() const { return tol_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }

 private:
  int ambient_ = 0;
  Matrix basis_;
  double tol_ = kDefaultRankTol;
};

using Subspace = BasicSubspace<double>;
using ComplexSubspace = BasicSubspace<cplx>;

/// Pairing-orthogonal complement {e : <e, s> = 0 for all s in S}; complex
/// fibers use the complex-bilinear extension of the pairing.
template <class T>
BasicSubspace<T> perp_pairing(const BasicSubspace<T>& s, const FiberMetric& q);

template <class T>
BasicSubspace<T> intersect(const BasicSubspace<T>& a, const BasicSubspace<T>& b);

template <class T>
BasicSubspace<T> sum(const BasicSubspace<T>& a, const BasicSubspace<T>& b);

/// Image A(S) of a subspace under a linear map.
template <class T>
BasicSubspace<T> image(const typename BasicSubspace<T>::Matrix& a, const BasicSubspace<T>& s);

/// Principal angles between two subspaces, ascending.
template <class T>
std::vector<double> principal_angles(const BasicSubspace<T>& a, const BasicSubspace<T>& b);

/// Largest angle between a vector of `a` and the subspace `b`; zero iff a is
/// contained in b.
template <class T>
double inclusion_angle(const BasicSubspace<T>& a, const BasicSubspace<T>& b);

struct Comparison {
  bool equal = false;
  double angle = 0.0;  // max principal angle; pi/2 when dimensions differ
};

template <class T>
Comparison subspace_equal(const BasicSubspace<T>& a, const BasicSubspace<T>& b,
                          double angle_tol = kDefaultAngleTol);

/// B^H A B for the orthonormal basis B of S.  Throws NotInvariant when
/// ||(Id - P_S) A B|| exceeds `tol`.
template <class T>
typename BasicSubspace<T>::Matrix restrict_operator(const typename BasicSubspace<T>::Matrix& a,
                                                    const BasicSubspace<T>& s, double tol = 1e-8);

/// ||(Id - P_S) A B||, the amount by which A fails to preserve S.
template <class T>
double invariance_leakage(const typename BasicSubspace<T>::Matrix& a, const BasicSubspace<T>& s);

ComplexSubspace complexify(const Subspace& s);
ComplexSubspace conj(const ComplexSubspace& s);

/// max |<s_i, s_j>| over the basis of S (complex-bilinear pairing).
template <class T>
double isotropy_residual(const BasicSubspace<T>& s, const FiberMetric& q);

}  // namespace gkq

#endif  // GKQ_LINALG_HPP
