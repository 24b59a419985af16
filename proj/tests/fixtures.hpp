// SPDX-License-Identifier: Apache-2.0
// Shared test data.  Everything here is built from first principles so it can
// serve as an oracle for the library.
#ifndef GKQ_TESTS_FIXTURES_HPP
#define GKQ_TESTS_FIXTURES_HPP

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gkq/builders.hpp"
#include "gkq/field.hpp"
#include "gkq/reduction.hpp"
#include "gkq/structures.hpp"

namespace gkq::testing {

inline Eigen::MatrixXd random_matrix(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd a(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a(i, j) = n(rng);
  return a;
}

inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(n, n, rng));
  return qr.householderQ();
}

inline Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd a = random_matrix(n, n, rng);
  return a * a.transpose() + n * Eigen::MatrixXd::Identity(n, n);
}

inline Eigen::MatrixXd random_antisymmetric(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd a = random_matrix(n, n, rng);
  return a - a.transpose();
}

/// Block-diagonal [[0,-1],[1,0]] on R^{2n}.
inline Eigen::MatrixXd standard_complex(int n) {
  Eigen::MatrixXd i = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    i(2 * k + 1, 2 * k) = 1.0;
    i(2 * k, 2 * k + 1) = -1.0;
  }
  return i;
}

inline Eigen::MatrixXd sqrt_spd(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  return es.operatorSqrt();
}

/// Random g-orthogonal complex structure.
inline Eigen::MatrixXd random_compatible_complex(const Eigen::MatrixXd& g, std::mt19937_64& rng) {
  const int m = static_cast<int>(g.rows());
  Eigen::MatrixXd s = sqrt_spd(g);
  Eigen::MatrixXd o = random_orthogonal(m, rng);
  return s.inverse() * o * standard_complex(m / 2) * o.transpose() * s;
}

inline BihermitianPoint random_bihermitian(int m, std::mt19937_64& rng) {
  BihermitianPoint d;
  d.g = random_spd(m, rng);
  d.i_plus = random_compatible_complex(d.g, rng);
  d.i_minus = random_compatible_complex(d.g, rng);
  d.b = random_antisymmetric(m, rng);
  return d;
}

/// Q = [[0,1],[1,0]].
inline Eigen::MatrixXd pairing_matrix(int m) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  q.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  q.bottomLeftCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  return q;
}

/// Graph of a map A: TM -> T*M, as a 2m x m basis.
inline Eigen::MatrixXd graph(const Eigen::MatrixXd& a) {
  const auto m = a.rows();
  Eigen::MatrixXd out(2 * m, m);
  out << Eigen::MatrixXd::Identity(m, m), a;
  return out;
}

/// Fiber configuration (J, G, K) with J, G a generalized Kaehler pair.
struct FiberConfig {
  Eigen::MatrixXd j;
  Eigen::MatrixXd g;
  Eigen::MatrixXd k;  // basis columns
  bool j_invariant_by_construction = false;
};

/// K is spanned by x+y with x in C+, y in C- and <x+y,x+y> = 0; adding
/// Jx+Jy makes K invariant under J and G.
inline FiberConfig random_fiber_config(int m, bool invariant, std::mt19937_64& rng) {
  BihermitianPoint d = random_bihermitian(m, rng);
  GKMatrices gk = gk_from_bihermitian(d);
  // b is given as the component matrix; the map is its transpose.
  Eigen::MatrixXd bmap = d.b.transpose();
  Eigen::MatrixXd cp = graph(bmap + d.g);
  Eigen::MatrixXd cm = graph(bmap - d.g);
  Eigen::VectorXd x = cp * random_matrix(m, 1, rng);
  Eigen::VectorXd y = cm * random_matrix(m, 1, rng);
  const Eigen::MatrixXd q = pairing_matrix(m);
  const double xx = x.dot(q * x);
  const double yy = y.dot(q * y);
  y *= std::sqrt(xx / -yy);
  FiberConfig c;
  c.j = gk.j;
  c.g = gk.g;
  c.j_invariant_by_construction = invariant;
  if (invariant) {
    c.k.resize(2 * m, 2);
    c.k.col(0) = x + y;
    c.k.col(1) = gk.j * (x + y);
  } else {
    c.k = x + y;
  }
  return c;
}

/// so(3) acting on R^3 x R^3 diagonally by psi(u)(x) = x cross u, with
/// h = R^3 carrying rho_i = [e_i]_x and mu(x, y) = x - y.
inline Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& v) {
  Eigen::Matrix3d c;
  c << 0, -v(2), v(1), v(2), 0, -v(0), -v(1), v(0), 0;
  return c;
}

inline ReductionData so3_fixture() {
  ReductionData rd;
  rd.dim_m = 6;
  rd.lie.dim_g = 3;
  rd.lie.structure_constants.assign(27, 0.0);
  auto eps = [](int i, int j, int k) { return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) rd.lie.structure_constants[static_cast<std::size_t>((i * 3 + j) * 3 + k)] = eps(i, j, k);
  rd.module.dim_h = 3;
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix3d c = cross_matrix(Eigen::Vector3d::Unit(i));
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 6);
    a.topLeftCorner(3, 3) = -c;  // x cross e_i = -[e_i]_x x
    a.bottomRightCorner(3, 3) = -c;
    rd.lie.psi.push_back(linear_vector_field(a));
    rd.module.rho.push_back(c);
  }
  for (int j = 0; j < 3; ++j) {
    Polynomial p(6);
    std::vector<int> px(6, 0), py(6, 0);
    px[static_cast<std::size_t>(j)] = 1;
    py[static_cast<std::size_t>(j + 3)] = 1;
    p.add(1.0, px);
    p.add(-1.0, py);
    rd.mu.push_back(polynomial_scalar(p));
  }
  return rd;
}

}  // namespace gkq::testing

#endif  // GKQ_TESTS_FIXTURES_HPP
