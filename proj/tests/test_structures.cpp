// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>
#include <functional>
#include <memory>
#include <random>

#include "fixtures.hpp"
#include "gkq/builders.hpp"
#include "gkq/calculus.hpp"
#include "gkq/structures.hpp"

using namespace gkq;
using namespace gkq::testing;

namespace {

Eigen::MatrixXd sym2() { return (Eigen::MatrixXd(2, 2) << 0, 1, -1, 0).finished(); }

Eigen::VectorXd origin(int m) { return Eigen::VectorXd::Zero(m); }

Eigen::MatrixXd random_nondegenerate_form(int m, std::mt19937_64& rng) {
  Eigen::MatrixXd w = random_antisymmetric(m, rng);
  while (std::abs(w.determinant()) < 1e-3) w = random_antisymmetric(m, rng);
  return w;
}

// Left multiplication by i, j, k on H = R^4 with q = a + bi + cj + dk.
std::array<Eigen::MatrixXd, 3> quaternion_units() {
  Eigen::MatrixXd li(4, 4), lj(4, 4), lk(4, 4);
  li << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  lj << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
  lk << 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
  return {li, lj, lk};
}

// Nijenhuis tensor of an almost complex structure on coordinate fields, by
// central differences.
double nijenhuis_oracle(const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& i, const Eigen::VectorXd& p) {
  const int m = static_cast<int>(p.size());
  const double h = 1e-5;
  std::vector<Eigen::MatrixXd> d;
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd a = p, b = p;
    a(k) += h;
    b(k) -= h;
    d.push_back((i(a) - i(b)) / (2 * h));
  }
  const Eigen::MatrixXd ip = i(p);
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      // [I e_a, I e_b] - I [I e_a, e_b] - I [e_a, I e_b]
      Eigen::VectorXd t1 = Eigen::VectorXd::Zero(m);
      for (int k = 0; k < m; ++k) t1 += ip(k, a) * d[k].col(b) - ip(k, b) * d[k].col(a);
      Eigen::VectorXd t2 = -d[b].col(a);
      Eigen::VectorXd t3 = d[a].col(b);
      worst = std::max(worst, (t1 - ip * t2 - ip * t3).norm());
    }
  return worst;
}

// Complex structure A(x) I0 A(x)^-1 with A a rotation by x1 in the (2,3)-plane.
Eigen::MatrixXd twisted_complex_value(const Eigen::VectorXd& x) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a(1, 1) = std::cos(x(0));
  a(1, 2) = -std::sin(x(0));
  a(2, 1) = std::sin(x(0));
  a(2, 2) = std::cos(x(0));
  return a * standard_complex(2) * a.transpose();
}

MatrixField twisted_complex_field() {
  return MatrixField(Field::make(FieldShape::matrix(4, 4, 4), [](auto x, auto out) {
    using S = typename decltype(out)::value_type;
    using std::cos;
    using std::sin;
    S c = cos(x[0]), s = sin(x[0]);
    // A I0 A^T computed entrywise.
    S a[4][4] = {{S(1.0), S(0.0), S(0.0), S(0.0)},
                 {S(0.0), c, S(0.0) - s, S(0.0)},
                 {S(0.0), s, c, S(0.0)},
                 {S(0.0), S(0.0), S(0.0), S(1.0)}};
    const double i0[4][4] = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    for (int r = 0; r < 4; ++r)
      for (int col = 0; col < 4; ++col) {
        S acc(0.0);
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            if (i0[k][l] != 0.0) acc = acc + a[r][k] * i0[k][l] * a[col][l];
        out[static_cast<std::size_t>(r * 4 + col)] = acc;
      }
  }));
}

}  // namespace

TEST(FromSymplectic, StandardExample) {
  GCStructureField j = from_symplectic(constant_two_form(sym2()));
  Eigen::MatrixXd jm = j.matrix_at(origin(2));
  // Fiber order (d/dx, d/dy, dx, dy).
  EXPECT_LT((jm.col(0) - Eigen::VectorXd::Unit(4, 3)).norm(), 1e-15);  // J d/dx = dy
  EXPECT_LT((jm.col(3) + Eigen::VectorXd::Unit(4, 0)).norm(), 1e-15);  // J dy = -d/dx
}

TEST(FromSymplectic, AlgebraicIdentitiesForRandomForms) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXd jm = from_symplectic(constant_two_form(random_nondegenerate_form(4, rng))).matrix_at(origin(4));
    EXPECT_LT(square_residual(jm, -1.0), 1e-10);
    EXPECT_LT(orthogonality_residual(jm), 1e-10);
  }
}

TEST(FromSymplectic, DegenerateThrows) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = 1;
  w(1, 0) = -1;
  GCStructureField j = from_symplectic(constant_two_form(w));
  try {
    j.matrix_at(origin(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Degenerate);
  }
}

TEST(FromSymplectic, Integrability) {
  FormField closed = constant_two_form(random_nondegenerate_form(4, *std::make_unique<std::mt19937_64>(3)));
  Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.7);
  EXPECT_LT(integrability_residual(from_symplectic(closed), zero_form(4, 3), p), 1e-10);
  // dx1^dx2 + x1 dx3^dx4, d omega = dx1^dx3^dx4.
  FormField open = polynomial_form(4, 2, {{Polynomial::constant(4, 1.0), {0, 1}}, {Polynomial::coordinate(4, 0), {2, 3}}});
  EXPECT_GT(integrability_residual(from_symplectic(open), zero_form(4, 3), p), 1e-3);
  // Closed omega with a nonzero twist is obstructed.
  FormField h = polynomial_form(4, 3, {{Polynomial::constant(4, 1.0), {0, 1, 2}}});
  EXPECT_GT(integrability_residual(from_symplectic(closed), h, p), 1e-3);
}

TEST(FromComplex, StandardExample) {
  Eigen::MatrixXd jm = from_complex(constant_matrix(2, standard_complex(1))).matrix_at(origin(2));
  EXPECT_LT((jm.col(0) + Eigen::VectorXd::Unit(4, 1)).norm(), 1e-15);  // J d/dx = -d/dy
  EXPECT_LT((jm.col(2) + Eigen::VectorXd::Unit(4, 3)).norm(), 1e-15);  // J dx = -dy
  EXPECT_LT(square_residual(jm, -1.0), 1e-15);
}

TEST(FromComplex, RejectsNonComplex) {
  GCStructureField j = from_complex(constant_matrix(2, Eigen::MatrixXd::Identity(2, 2)));
  try {
    j.matrix_at(origin(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(FromComplex, IntegrableAndNonIntegrable) {
  Eigen::VectorXd p(4);
  p << 0.4, -0.3, 0.2, 0.6;
  EXPECT_LT(integrability_residual(from_complex(constant_matrix(4, standard_complex(2))), zero_form(4, 3), p), 1e-10);
  // Confirm with the finite-difference Nijenhuis oracle that the twisted
  // structure is not integrable, then compare.
  const double n = nijenhuis_oracle(twisted_complex_value, p);
  ASSERT_GT(n, 1e-2);
  MatrixField i = twisted_complex_field();
  EXPECT_LT((i.matrix_at(p) - twisted_complex_value(p)).norm(), 1e-14);
  EXPECT_GT(integrability_residual(from_complex(i), zero_form(4, 3), p), 1e-4);
  EXPECT_LT(nijenhuis_oracle([](const Eigen::VectorXd&) { return standard_complex(2); }, p), 1e-8);
}

TEST(MetricFrom, IdentityExample) {
  Eigen::MatrixXd g = metric_from(constant_matrix(2, Eigen::MatrixXd::Identity(2, 2))).matrix_at(origin(2));
  EXPECT_LT((g.col(0) - Eigen::VectorXd::Unit(4, 2)).norm(), 1e-15);  // G d/dx = dx
}

TEST(MetricFrom, RandomInputs) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXd gm = random_spd(4, rng);
    Eigen::MatrixXd b = random_antisymmetric(4, rng);
    Eigen::MatrixXd g = metric_from(constant_matrix(4, gm), constant_two_form(b)).matrix_at(origin(4));
    EXPECT_LT(square_residual(g, 1.0), 1e-10);
    EXPECT_LT(orthogonality_residual(g), 1e-10);
    Eigen::MatrixXd qg = pairing_matrix(4) * g;
    EXPECT_LT((qg - qg.transpose()).norm(), 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (qg + qg.transpose()));
    EXPECT_GT(es.eigenvalues()(0), 0.0);
    EXPECT_NEAR(metric_positivity(g), es.eigenvalues()(0), 1e-12);
  }
}

TEST(MetricFrom, RejectsIndefinite) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
  g(1, 1) = -1;
  EXPECT_THROW(metric_from(constant_matrix(2, g)).matrix_at(origin(2)), Error);
}

TEST(GKFromBihermitian, KaehlerCase) {
  std::mt19937_64 rng(4);
  Eigen::MatrixXd g = random_spd(4, rng);
  Eigen::MatrixXd i = random_compatible_complex(g, rng);
  GKMatrices gk = gk_from_bihermitian(BihermitianPoint{i, i, g, Eigen::MatrixXd::Zero(4, 4)});
  // Block simplification: J = [[I,0],[0,-I^T]] and J' = [[0,-(gI)^-1],[gI,0]].
  Eigen::MatrixXd jc = Eigen::MatrixXd::Zero(8, 8);
  jc.topLeftCorner(4, 4) = i;
  jc.bottomRightCorner(4, 4) = -i.transpose();
  Eigen::MatrixXd w = g * i;
  Eigen::MatrixXd js = Eigen::MatrixXd::Zero(8, 8);
  js.topRightCorner(4, 4) = -w.inverse();
  js.bottomLeftCorner(4, 4) = w;
  EXPECT_LT((gk.j - jc).norm(), 1e-10);
  EXPECT_LT((gk.j_prime - js).norm(), 1e-10);
  // The same matrices through the field constructors.
  Eigen::MatrixXd via_fields = from_complex(constant_matrix(4, -i)).matrix_at(origin(4));
  EXPECT_LT((gk.j - via_fields).norm(), 1e-10);
  Eigen::MatrixXd via_omega = from_symplectic(constant_two_form(form_of_map(w))).matrix_at(origin(4));
  EXPECT_LT((gk.j_prime - via_omega).norm(), 1e-10);
}

TEST(GKFromBihermitian, AlgebraicIdentities) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    BihermitianPoint d = random_bihermitian(4, rng);
    GKMatrices gk = gk_from_bihermitian(d);
    EXPECT_LT(square_residual(gk.j, -1.0), 1e-8);
    EXPECT_LT(orthogonality_residual(gk.j), 1e-8);
    EXPECT_LT(square_residual(gk.g, 1.0), 1e-8);
    EXPECT_LT((gk.j * gk.g - gk.g * gk.j).norm(), 1e-8);
    EXPECT_LT((gk.j_prime - gk.j * gk.g).norm(), 1e-8);
    EXPECT_GT(metric_positivity(gk.g), 0.0);
  }
}

TEST(GKFromBihermitian, ActsAsIPlusMinusOnGraphs) {
  auto q = quaternion_units();
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(4, 4);
  GKMatrices gk = gk_from_bihermitian(BihermitianPoint{q[0], q[1], g, zero});
  MetricSplitting c = metric_eigenspaces(gk.g);
  ASSERT_EQ(c.c_plus.dim(), 4);
  ASSERT_EQ(c.c_minus.dim(), 4);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXd x = random_matrix(4, 1, rng);
    Eigen::VectorXd vp(8), vm(8), ip(8), im(8);
    vp << x, g * x;
    vm << x, -g * x;
    ip << q[0] * x, g * q[0] * x;
    im << q[1] * x, -g * q[1] * x;
    EXPECT_LT((gk.j * vp - ip).norm(), 1e-12);
    EXPECT_LT((gk.j * vm - im).norm(), 1e-12);
    EXPECT_LT(((c.c_plus.projector() * vp) - vp).norm(), 1e-10);
  }
}

TEST(GKFromBihermitian, RoundTrip) {
  std::mt19937_64 rng(10);
  for (int m : {2, 4, 8}) {
    for (int t = 0; t < 20; ++t) {
      BihermitianPoint d = random_bihermitian(m, rng);
      GKMatrices gk = gk_from_bihermitian(d);
      BihermitianPoint back = bihermitian_from_gk(gk.j, gk.g);
      EXPECT_LT((back.i_plus - d.i_plus).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT((back.i_minus - d.i_minus).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT((back.g - d.g).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT((back.b - d.b).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Eigenbundle, SymplecticIsLagrangianAndTransverse) {
  std::mt19937_64 rng(14);
  Eigen::MatrixXd w = random_nondegenerate_form(4, rng);
  Eigen::MatrixXd jm = from_symplectic(constant_two_form(w)).matrix_at(origin(4));
  ComplexSubspace l = eigenbundle(jm);
  EXPECT_EQ(l.dim(), 4);
  EXPECT_LT(isotropy_residual(l, FiberMetric::standard(4)), 1e-10);
  EXPECT_EQ(intersect(l, conj(l)).dim(), 0);
  // X - i w(X): the covector part equals -i times the flat map of the vector part.
  Eigen::MatrixXcd b = l.basis();
  Eigen::MatrixXcd expected = cplx(0.0, -1.0) * flat_map(w).cast<cplx>() * b.topRows(4);
  EXPECT_LT((b.bottomRows(4) - expected).norm(), 1e-10);
}

TEST(Eigenbundle, MatchesIndependentEigenSolver) {
  std::mt19937_64 rng(15);
  BihermitianPoint d = random_bihermitian(4, rng);
  Eigen::MatrixXd j = gk_from_bihermitian(d).j;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(j.cast<cplx>());
  std::vector<Eigen::VectorXcd> plus;
  for (int k = 0; k < 8; ++k)
    if (std::abs(es.eigenvalues()(k) - cplx(0.0, 1.0)) < 1e-6) plus.push_back(es.eigenvectors().col(k));
  ASSERT_EQ(plus.size(), 4u);
  ComplexSubspace oracle = ComplexSubspace::span(plus, 8);
  EXPECT_TRUE(subspace_equal(eigenbundle(j), oracle).equal);
}

TEST(Eigenbundle, ComplexTypeSplitting) {
  // L of from_complex(I) is T^{0,1} + T*^{1,0}: it contains d/dx + i d/dy and dx + i dy.
  Eigen::MatrixXd jm = from_complex(constant_matrix(2, standard_complex(1))).matrix_at(origin(2));
  ComplexSubspace l = eigenbundle(jm);
  Eigen::VectorXcd v(4), c(4);
  v << 1.0, cplx(0.0, 1.0), 0.0, 0.0;
  c << 0.0, 0.0, 1.0, cplx(0.0, 1.0);
  EXPECT_LT((v - l.projector() * v).norm(), 1e-12);
  EXPECT_LT((c - l.projector() * c).norm(), 1e-12);
}

TEST(Eigenbundle, RejectsNonComplexStructure) {
  EXPECT_THROW(eigenbundle(Eigen::MatrixXd::Identity(4, 4)), Error);
}

TEST(Dirac, GraphOfTwoForm) {
  Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.3);
  FormField closed = constant_two_form(random_antisymmetric(4, *std::make_unique<std::mt19937_64>(2)));
  EXPECT_LT(integrability_residual(graph_of_two_form(closed), zero_form(4, 3), p), 1e-10);
  FormField open = polynomial_form(4, 2, {{Polynomial::coordinate(4, 0), {2, 3}}});
  EXPECT_GT(integrability_residual(graph_of_two_form(open), zero_form(4, 3), p), 1e-3);
}

TEST(Dirac, GraphOfBivector) {
  Eigen::VectorXd p(3);
  p << 0.3, -0.5, 0.8;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 3);
  c(0, 1) = 1;
  c(1, 0) = -1;
  EXPECT_LT(integrability_residual(graph_of_bivector(constant_matrix(3, c)), zero_form(3, 3), p), 1e-12);
  // x1 d1^d2 + d1^d3: Schouten bracket [pi,pi]^{123} involves pi^{31} d_1 pi^{12} = -1.
  MatrixField pi(Field::make(FieldShape::matrix(3, 3, 3), [](auto x, auto out) {
    using S = typename decltype(out)::value_type;
    for (auto& v : out) v = S(0.0);
    out[1] = x[0];
    out[3] = S(0.0) - x[0];
    out[2] = S(1.0);
    out[6] = S(-1.0);
  }));
  EXPECT_GT(integrability_residual(graph_of_bivector(pi), zero_form(3, 3), p), 1e-4);
}

TEST(CheckGK, KaehlerPasses) {
  MatrixField i = constant_matrix(4, standard_complex(2));
  MatrixField g = constant_matrix(4, Eigen::MatrixXd::Identity(4, 4));
  BihermitianData d{i, i, g, zero_form(4, 2)};
  GKFields gk = gk_from_bihermitian(d);
  std::vector<Eigen::VectorXd> pts{Eigen::VectorXd::Constant(4, 0.1), Eigen::VectorXd::Constant(4, -0.4)};
  GKReport r = check_gk(gk.j, gk.g, zero_form(4, 3), pts);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.commutator, 1e-12);
}

TEST(CheckGK, IncompatibleSymplecticFails) {
  GCStructureField j = from_symplectic(constant_two_form(2.0 * sym2()));
  GMetricField g = metric_from(constant_matrix(2, Eigen::MatrixXd::Identity(2, 2)));
  std::vector<Eigen::VectorXd> pts{origin(2)};
  GKReport r = check_gk(j, g, zero_form(2, 3), pts);
  EXPECT_GT(r.commutator, 0.1);
  EXPECT_FALSE(r.pass);
}

TEST(CheckGHK, FlatHyperKaehler) {
  auto q = quaternion_units();
  std::vector<GCStructureField> j;
  for (const auto& u : q) j.push_back(from_complex(constant_matrix(4, -u)));
  GMetricField g = metric_from(constant_matrix(4, Eigen::MatrixXd::Identity(4, 4)));
  std::vector<Eigen::VectorXd> pts{Eigen::VectorXd::Constant(4, 0.2)};
  GHKReport r = check_ghk(j[0], j[1], j[2], g, zero_form(4, 3), pts);
  EXPECT_LT(r.quaternion, 1e-12);
  EXPECT_LT(r.anticommutator, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(DcForm, KaehlerAndHyperKaehlerVanish) {
  Eigen::VectorXd p(4);
  p << 0.3, -0.2, 0.5, 0.1;
  // Product of conformally flat factors: w = f1(z1) dx1^dy1 + f2(z2) dx2^dy2 is closed.
  MatrixField g(Field::make(FieldShape::matrix(4, 4, 4), [](auto x, auto out) {
    using S = typename decltype(out)::value_type;
    for (auto& v : out) v = S(0.0);
    S f1 = S(1.0) + x[0] * x[0] + x[1] * x[1];
    S f2 = S(2.0) + x[2] * x[3];
    out[0] = f1;
    out[5] = f1;
    out[10] = f2;
    out[15] = f2;
  }));
  MatrixField i = constant_matrix(4, standard_complex(2));
  EXPECT_LT(dc_form_residual(BihermitianData{i, i, g, zero_form(4, 2)}, p), 1e-8);
  auto q = quaternion_units();
  MatrixField flat = constant_matrix(4, Eigen::MatrixXd::Identity(4, 4));
  EXPECT_LT(dc_form_residual(BihermitianData{constant_matrix(4, q[0]), constant_matrix(4, q[1]), flat, zero_form(4, 2)}, p),
            1e-8);
}

TEST(DcForm, ScaledFactorIsNotBihermitian) {
  // Flat H^2 with I+ = L_i, I- = L_j and g scaled by (1 + x1) on the first factor.
  auto q = quaternion_units();
  Eigen::MatrixXd ip = Eigen::MatrixXd::Zero(8, 8), im = Eigen::MatrixXd::Zero(8, 8);
  for (int k = 0; k < 2; ++k) {
    ip.block(4 * k, 4 * k, 4, 4) = q[0];
    im.block(4 * k, 4 * k, 4, 4) = q[1];
  }
  MatrixField g(Field::make(FieldShape::matrix(8, 8, 8), [](auto x, auto out) {
    using S = typename decltype(out)::value_type;
    for (auto& v : out) v = S(0.0);
    for (int k = 0; k < 8; ++k) out[static_cast<std::size_t>(k * 9)] = k < 4 ? S(1.0) + x[0] : S(1.0);
  }));
  Eigen::VectorXd p = Eigen::VectorXd::Constant(8, 0.2);
  EXPECT_GT(dc_form_residual(BihermitianData{constant_matrix(8, ip), constant_matrix(8, im), g, zero_form(8, 2)}, p),
            1e-5);
}
