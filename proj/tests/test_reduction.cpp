// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "gkq/builders.hpp"
#include "gkq/calculus.hpp"
#include "gkq/reduction.hpp"

using namespace gkq;
using namespace gkq::testing;

namespace {

Eigen::Vector3d head(const Eigen::VectorXd& v) { return v.head<3>(); }

std::vector<Eigen::VectorXd> random_points(int m, int n, std::mt19937_64& rng) {
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < n; ++i) out.push_back(random_matrix(m, 1, rng));
  return out;
}

// A point of R^6 with x = y.
Eigen::VectorXd so3_level_point(std::mt19937_64& rng) {
  Eigen::VectorXd x = random_matrix(3, 1, rng);
  Eigen::VectorXd p(6);
  p << x, x;
  return p;
}

FormField dx_dy_dz() { return polynomial_form(3, 3, {{Polynomial::constant(3, 1.0), {0, 1, 2}}}); }

}  // namespace

TEST(So3Fixture, Invariants) {
  std::mt19937_64 rng(31);
  ReductionData rd = so3_fixture();
  auto pts = random_points(6, 10, rng);
  InvariantResiduals r = check_invariants(rd, pts);
  EXPECT_LT(r.jacobi, 1e-12);
  EXPECT_LT(r.homomorphism, 1e-10);
  EXPECT_LT(r.representation, 1e-12);
  EXPECT_LT(r.equivariance, 1e-10);
}

TEST(So3Fixture, HemisemiBracketIsCrossProduct) {
  std::mt19937_64 rng(32);
  ReductionData rd = so3_fixture();
  for (int t = 0; t < 10; ++t) {
    AlgebraElement a{random_matrix(3, 1, rng), random_matrix(3, 1, rng)};
    AlgebraElement b{random_matrix(3, 1, rng), random_matrix(3, 1, rng)};
    AlgebraElement c = hemisemi_bracket(a, b, rd.lie, rd.module);
    EXPECT_LT((head(c.u) - head(a.u).cross(head(b.u))).norm(), 1e-13);
    EXPECT_LT((head(c.w) - head(a.u).cross(head(b.w))).norm(), 1e-13);
  }
}

TEST(So3Fixture, ExtendedActionIsBracketMorphism) {
  std::mt19937_64 rng(33);
  ReductionData rd = so3_fixture();
  FormField h = zero_form(6, 3);
  for (int t = 0; t < 5; ++t) {
    AlgebraElement a{random_matrix(3, 1, rng), random_matrix(3, 1, rng)};
    AlgebraElement b{random_matrix(3, 1, rng), random_matrix(3, 1, rng)};
    Eigen::VectorXd p = random_matrix(6, 1, rng);
    Eigen::VectorXd lhs = courant_bracket_at(extended_action(rd, a), extended_action(rd, b), h, p);
    Eigen::VectorXd rhs = extended_action(rd, hemisemi_bracket(a, b, rd.lie, rd.module)).at(p);
    EXPECT_LT((lhs - rhs).norm(), 1e-9);
  }
}

TEST(So3Fixture, OffLevelPairing) {
  // <Psi(u1,w1), Psi(u2,w2)> = (x - y) . (u1 x w2 + u2 x w1), computed by hand.
  std::mt19937_64 rng(34);
  ReductionData rd = so3_fixture();
  for (int t = 0; t < 10; ++t) {
    AlgebraElement a{random_matrix(3, 1, rng), random_matrix(3, 1, rng)};
    AlgebraElement b{random_matrix(3, 1, rng), random_matrix(3, 1, rng)};
    Eigen::VectorXd p = random_matrix(6, 1, rng);
    Eigen::Vector3d mu = p.head<3>() - p.tail<3>();
    double expected = mu.dot(head(a.u).cross(head(b.w)) + head(b.u).cross(head(a.w)));
    EXPECT_NEAR(pairing(extended_action(rd, a), extended_action(rd, b), p), expected, 1e-9);
  }
}

TEST(So3Fixture, KIsIsotropicOnLevelAndMatchesRankOracle) {
  std::mt19937_64 rng(35);
  ReductionData rd = so3_fixture();
  const Eigen::MatrixXd q = pairing_matrix(6);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd p = so3_level_point(rng);
    Subspace k = K_at(rd, p);
    EXPECT_LT((k.basis().transpose() * q * k.basis()).cwiseAbs().maxCoeff(), 1e-10);
    // Generators: (x cross e_i, y cross e_i; 0) and (0; e_j - e_{j+3}).
    Eigen::MatrixXd gens = Eigen::MatrixXd::Zero(12, 6);
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector3d e = Eigen::Vector3d::Unit(i);
      gens.block<3, 1>(0, i) = p.head<3>().cross(e);
      gens.block<3, 1>(3, i) = p.tail<3>().cross(e);
      gens(6 + i, 3 + i) = 1.0;
      gens(9 + i, 3 + i) = -1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gens);
    lu.setThreshold(1e-10);
    EXPECT_EQ(k.dim(), static_cast<int>(lu.rank()));
    EXPECT_EQ(k.dim(), 5);
  }
}

TEST(ProjectToLevel, ReachesZeroLevel) {
  std::mt19937_64 rng(36);
  ReductionData rd = so3_fixture();
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd p0 = random_matrix(6, 1, rng);
    Eigen::VectorXd p = project_to_level(rd, p0);
    EXPECT_LT((p.head<3>() - p.tail<3>()).norm(), 1e-12);
    // Minimum-norm step for a linear moment map: the midpoint.
    Eigen::Vector3d mid = 0.5 * (p0.head<3>() + p0.tail<3>());
    EXPECT_LT((p.head<3>() - mid).norm(), 1e-10);
  }
}

TEST(ConditionLogic, RandomFiberConfigurations) {
  std::mt19937_64 rng(37);
  int invariant_seen = 0, generic_seen = 0;
  for (int t = 0; t < 100; ++t) {
    const bool invariant = t % 2 == 0;
    FiberConfig c = random_fiber_config(4, invariant, rng);
    Subspace k = Subspace::span(c.k);
    bool easy = check_condition(ConditionId::EASY, c.j, &c.g, k).holds;
    bool jkg = check_condition(ConditionId::JKG, c.j, &c.g, k).holds;
    bool red = check_condition(ConditionId::RED, c.j, &c.g, k).holds;
    EXPECT_EQ(easy, jkg) << "config " << t;
    if (jkg) {
      EXPECT_TRUE(red) << "config " << t;
    }
    EXPECT_EQ(jkg, invariant) << "config " << t;
    (invariant ? invariant_seen : generic_seen) += jkg == invariant ? 1 : 0;
  }
  EXPECT_EQ(invariant_seen, 50);
  EXPECT_EQ(generic_seen, 50);
}

TEST(ConditionLogic, JKKForComplexLine) {
  // K = span{d/dx, d/dy} is J_I invariant; K = span{d/dx} is not.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
  j.topLeftCorner(2, 2) = -standard_complex(1);
  j.bottomRightCorner(2, 2) = standard_complex(1).transpose();
  Eigen::MatrixXd both(4, 2);
  both << Eigen::VectorXd::Unit(4, 0), Eigen::VectorXd::Unit(4, 1);
  EXPECT_TRUE(check_condition(ConditionId::JKK, j, nullptr, Subspace::span(both)).holds);
  ConditionResult r = check_condition(ConditionId::JKK, j, nullptr, Subspace::span(Eigen::MatrixXd(both.col(0))));
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(r.angle, std::acos(0.0), 1e-12);
}

TEST(DiracReduce, SymplecticQuotient) {
  // R^4 with dx1^dx2 + dx3^dx4, action d/dx4 with moment x3.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = 1;
  w(1, 0) = -1;
  w(2, 3) = 1;
  w(3, 2) = -1;
  ReductionData rd;
  rd.dim_m = 4;
  rd.lie = LieAlgebraData::abelian({coordinate_vector(4, 3)});
  rd.module = GModuleData::trivial(1, 1);
  rd.mu.push_back(coordinate_function(4, 2));
  Eigen::VectorXd p(4);
  p << 0.3, -0.2, 0.0, 0.9;
  Subspace k = K_at(rd, p);
  ASSERT_EQ(k.dim(), 2);
  GMetricField g = metric_from(constant_matrix(4, Eigen::MatrixXd::Identity(4, 4)));
  Subspace kg = KG_at(k, g.matrix_at(p));
  ASSERT_EQ(kg.dim(), 4);
  Eigen::MatrixXd jm = from_symplectic(constant_two_form(w)).matrix_at(p);
  ComplexSubspace red = dirac_reduce_at(eigenbundle(jm), k, kg);
  // X - i w(X, .) for X in span{d/dx1, d/dx2}; w(d1, .) = dx2.
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(8, 2);
  expected(0, 0) = 1.0;
  expected(5, 0) = cplx(0.0, -1.0);
  expected(1, 1) = 1.0;
  expected(4, 1) = cplx(0.0, 1.0);
  EXPECT_EQ(red.dim(), 2);
  EXPECT_TRUE(subspace_equal(red, ComplexSubspace::span(expected)).equal);
}

TEST(TwistedAction, LiftRestoresInvariance) {
  // H = dx^dy^dz and d/dz: i_{d/dz} H = dx^dy = d(x dy).
  FormField h = dx_dy_dz();
  GMetricField g = metric_from(constant_matrix(3, Eigen::MatrixXd::Identity(3, 3)));
  ReductionData plain;
  plain.dim_m = 3;
  plain.lie = LieAlgebraData::abelian({coordinate_vector(3, 2)});
  plain.module = GModuleData::trivial(1, 0);
  ReductionData lifted = plain;
  lifted.theta.push_back(polynomial_form(3, 1, {{Polynomial::coordinate(3, 0), {1}}}));
  Eigen::VectorXd p(3);
  p << 0.4, -0.1, 0.7;
  EXPECT_GT(invariance_residual(g, plain, h, p), 0.5);
  EXPECT_LT(invariance_residual(g, lifted, h, p), 1e-10);
  Eigen::VectorXd gen = lifted.lifted_generator(0).at(p);
  Eigen::VectorXd expected(6);
  expected << 0, 0, 1, 0, p(0), 0;
  EXPECT_LT((gen - expected).norm(), 1e-14);
}

TEST(ReduceAt, TranslationQuotientDimensions) {
  // R^3, d/dz with moment z: K = span{d/dz, dz}, K^G = span{d/dx, d/dy, dx, dy}.
  ReductionData rd;
  rd.dim_m = 3;
  rd.lie = LieAlgebraData::abelian({coordinate_vector(3, 2)});
  rd.module = GModuleData::trivial(1, 1);
  rd.mu.push_back(coordinate_function(3, 2));
  StructureSet s;
  s.mode = ReductionMode::JG;
  s.g = metric_from(constant_matrix(3, Eigen::MatrixXd::Identity(3, 3)));
  s.h = zero_form(3, 3);
  Eigen::VectorXd p(3);
  p << 0.5, 0.5, 0.0;
  ReducedFiberReport r = reduce_at(rd, s, p, Tolerances{});
  ASSERT_TRUE(r.ok) << r.error;
  EXPECT_EQ(r.dim_k, 2);
  EXPECT_EQ(r.dim_kperp, 4);
  EXPECT_EQ(r.dim_kg, 4);
  EXPECT_EQ(r.dim_kg_tangent, 2);
  EXPECT_FALSE(r.rank_drop);
}
