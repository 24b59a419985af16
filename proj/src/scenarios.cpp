// SPDX-License-Identifier: Apache-2.0
#include "gkq/scenarios.hpp"

#include <array>
#include <cmath>

#include "gkq/builders.hpp"

namespace gkq {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Standard complex structure on R^{2n} with coordinates (x1, y1, x2, y2, ...).
MatrixXd standard_i(int n) {
  MatrixXd i = MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    i(2 * k + 1, 2 * k) = 1.0;
    i(2 * k, 2 * k + 1) = -1.0;
  }
  return i;
}

// Quaternion product on (a, b, c, d) = a + b i + c j + d k.
std::array<double, 4> qmul(const std::array<double, 4>& p, const std::array<double, 4>& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

// Left (or right) multiplication by the unit `u` on H^n, block diagonal.
MatrixXd quaternion_mult(int n, int unit, bool left) {
  std::array<double, 4> e{};
  e[static_cast<std::size_t>(unit)] = 1.0;
  MatrixXd block(4, 4);
  for (int c = 0; c < 4; ++c) {
    std::array<double, 4> q{};
    q[static_cast<std::size_t>(c)] = 1.0;
    auto r = left ? qmul(e, q) : qmul(q, e);
    for (int k = 0; k < 4; ++k) block(k, c) = r[static_cast<std::size_t>(k)];
  }
  MatrixXd out = MatrixXd::Zero(4 * n, 4 * n);
  for (int k = 0; k < n; ++k) out.block(4 * k, 4 * k, 4, 4) = block;
  return out;
}

// 1/2 x^T A x + c.
ScalarField quadratic_scalar(const MatrixXd& a, double c) {
  const int m = static_cast<int>(a.rows());
  Polynomial p(m);
  if (c != 0.0) p.add(c, std::vector<int>(static_cast<std::size_t>(m), 0));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double coeff = i == j ? 0.5 * a(i, i) : 0.5 * (a(i, j) + a(j, i));
      if (coeff == 0.0) continue;
      std::vector<int> pw(static_cast<std::size_t>(m), 0);
      pw[static_cast<std::size_t>(i)] += 1;
      pw[static_cast<std::size_t>(j)] += 1;
      p.add(coeff, pw);
    }
  return polynomial_scalar(p);
}

// Affine chart w = z2/z1 (or z1/z2 when |z2| > |z1|) on CP^1, as (Re w, Im w).
MatrixField cp1_chart() {
  return MatrixField(Field::make(FieldShape::matrix(4, 2, 1), [](auto x, auto out) {
    using S = typename decltype(out)::value_type;
    const double n1 = value_of(x[0]) * value_of(x[0]) + value_of(x[1]) * value_of(x[1]);
    const double n2 = value_of(x[2]) * value_of(x[2]) + value_of(x[3]) * value_of(x[3]);
    const int a = n1 >= n2 ? 0 : 2;
    const int b = 2 - a;
    S den = x[a] * x[a] + x[a + 1] * x[a + 1];
    out[0] = (x[b] * x[a] + x[b + 1] * x[a + 1]) / den;
    out[1] = (x[b + 1] * x[a] - x[b] * x[a + 1]) / den;
  }));
}

MatrixXd symplectic_block(const MatrixXd& w) {
  const auto m = w.rows();
  MatrixXd j = MatrixXd::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m) = -w.transpose().inverse();
  j.bottomLeftCorner(m, m) = w.transpose();
  return j;
}

MatrixXd complex_block(const MatrixXd& i) {
  const auto m = i.rows();
  MatrixXd j = MatrixXd::Zero(2 * m, 2 * m);
  j.topLeftCorner(m, m) = -i;
  j.bottomRightCorner(m, m) = i.transpose();
  return j;
}

MatrixXd metric_block(const MatrixXd& g) {
  const auto m = g.rows();
  MatrixXd out = MatrixXd::Zero(2 * m, 2 * m);
  out.topRightCorner(m, m) = g.inverse();
  out.bottomLeftCorner(m, m) = g;
  return out;
}

double fs_factor(const VectorXd& y) {
  const double r2 = y.squaredNorm();
  return 1.0 / ((1.0 + r2) * (1.0 + r2));
}

// Kaehler form dx1^dy1 + dx2^dy2 and the circle action with mu = (|z|^2 - 1)/2.
FormField standard_omega(int n) { return constant_two_form(standard_i(n).transpose()); }

ReductionData circle_reduction() {
  MatrixXd a = -standard_i(2);  // psi = (y1, -x1, y2, -x2)
  ReductionData rd;
  rd.dim_m = 4;
  rd.lie = LieAlgebraData::abelian({linear_vector_field(a)});
  rd.module = GModuleData::trivial(1, 1);
  rd.mu = {quadratic_scalar(MatrixXd::Identity(4, 4), -0.5)};
  return rd;
}

MatrixField identity_matrix(int m) { return constant_matrix(m, MatrixXd::Identity(m, m)); }

Scenario s1() {
  Scenario s;
  s.name = "S1";
  s.description = "symplectic C^2, diagonal circle action, mu = (|z|^2 - 1)/2";
  s.m = 4;
  s.rd = circle_reduction();
  s.structures.mode = ReductionMode::J;
  s.structures.h = zero_form(4, 3);
  s.structures.j = {{"J_omega", from_symplectic(standard_omega(2))}};
  s.structures.g = metric_from(identity_matrix(4));
  MatrixXd b = MatrixXd::Zero(4, 4);
  b(0, 2) = 0.3;
  b(2, 0) = -0.3;
  b(1, 3) = -0.2;
  b(3, 1) = 0.2;
  s.structures.alt_metric = metric_from(constant_matrix(4, VectorXd::LinSpaced(4, 1.0, 2.5).asDiagonal()),
                                        constant_two_form(b));
  s.expectations = {{"JKK:J_omega", true}};
  s.oracle = QuotientOracle{cp1_chart(), [](const VectorXd& y) {
                              MatrixXd w(2, 2);
                              w << 0.0, 1.0, -1.0, 0.0;
                              return std::vector<NamedMatrix>{{"J_omega", symplectic_block(fs_factor(y) * w)}};
                            }};
  s.moments = {{"omega", standard_omega(2), 0, 0}};
  s.invariant = {"J_omega"};
  s.min_radius = 0.3;
  return s;
}

Scenario s2() {
  Scenario s;
  s.name = "S2";
  s.description = "C^2 minus 0, holomorphic scaling and rotation, h = 0";
  s.m = 4;
  s.rd.dim_m = 4;
  s.rd.lie = LieAlgebraData::abelian({linear_vector_field(MatrixXd::Identity(4, 4)), linear_vector_field(-standard_i(2))});
  s.rd.module = GModuleData::trivial(2, 0);
  s.structures.mode = ReductionMode::J;
  s.structures.h = zero_form(4, 3);
  s.structures.j = {{"J_I", from_complex(constant_matrix(4, standard_i(2)))}};
  s.structures.g = metric_from(identity_matrix(4));
  MatrixXd b = MatrixXd::Zero(4, 4);
  b(0, 1) = 0.4;
  b(1, 0) = -0.4;
  s.structures.alt_metric = metric_from(constant_matrix(4, VectorXd::LinSpaced(4, 1.0, 3.0).asDiagonal()),
                                        constant_two_form(b));
  s.expectations = {{"JKK:J_I", true}};
  s.oracle = QuotientOracle{cp1_chart(), [](const VectorXd&) {
                              return std::vector<NamedMatrix>{{"J_I", complex_block(standard_i(1))}};
                            }};
  s.complex_type = {"J_I"};
  s.invariant = {"J_I"};
  s.box = 1.0;
  s.min_radius = 0.3;
  return s;
}

Scenario s3() {
  Scenario s;
  s.name = "S3";
  s.description = "flat Kaehler C^2, circle action, Fubini-Study quotient";
  s.m = 4;
  s.rd = circle_reduction();
  s.structures.mode = ReductionMode::GK;
  s.structures.h = zero_form(4, 3);
  s.structures.j = {{"J_omega", from_symplectic(standard_omega(2))},
                    {"J_I", from_complex(constant_matrix(4, standard_i(2)))}};
  s.structures.g = metric_from(identity_matrix(4));
  s.expectations = {{"JKK:J_omega", true}, {"JKK:J_I", false}, {"JKG:J_omega", true}, {"JKG:J_I", true},
                    {"RED:J_omega", true}, {"RED:J_I", true},  {"EASY:J_omega", true}, {"EASY:J_I", true}};
  s.oracle = QuotientOracle{cp1_chart(), [](const VectorXd& y) {
                              const double f = fs_factor(y);
                              MatrixXd w(2, 2);
                              w << 0.0, 1.0, -1.0, 0.0;
                              return std::vector<NamedMatrix>{
                                  {"G", metric_block(f * MatrixXd::Identity(2, 2))},
                                  {"J_I", complex_block(standard_i(1))},
                                  {"J_omega", symplectic_block(f * w)}};
                            }};
  s.moments = {{"omega", standard_omega(2), 0, 0}};
  s.complex_type = {"J_I"};
  s.invariant = {"J_omega", "J_I", "G"};
  s.min_radius = 0.3;
  return s;
}

// Flat H^2 with left multiplications I_1, I_2, I_3 and the circle acting by
// right multiplication by i; level shifted to zeta = (1, 0, 0).
struct HyperKaehlerData {
  std::array<MatrixXd, 3> i;
  ReductionData rd;
  std::array<FormField, 3> omega;
};

HyperKaehlerData hk_data(int n) {
  HyperKaehlerData d;
  const int m = 4 * n;
  MatrixXd r = quaternion_mult(n, 1, false);
  d.rd.dim_m = m;
  d.rd.lie = LieAlgebraData::abelian({linear_vector_field(r)});
  d.rd.module = GModuleData::trivial(1, 3);
  const std::array<double, 3> zeta{1.0, 0.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    d.i[static_cast<std::size_t>(j)] = quaternion_mult(n, j + 1, true);
    d.rd.mu.push_back(quadratic_scalar(d.i[static_cast<std::size_t>(j)] * r, -zeta[static_cast<std::size_t>(j)]));
    // omega_j = g I_j as a map, so its component matrix is I_j^T.
    d.omega[static_cast<std::size_t>(j)] = constant_two_form(form_of_map(d.i[static_cast<std::size_t>(j)]));
  }
  return d;
}

Scenario s4() {
  Scenario s;
  s.name = "S4";
  s.description = "flat H^2, triholomorphic circle action, level zeta = (1,0,0)";
  s.m = 8;
  HyperKaehlerData d = hk_data(2);
  s.rd = d.rd;
  s.structures.mode = ReductionMode::GHK;
  s.structures.h = zero_form(8, 3);
  for (int j = 0; j < 3; ++j)
    s.structures.j.push_back({"J" + std::to_string(j + 1),
                              from_complex(constant_matrix(8, -d.i[static_cast<std::size_t>(j)]))});
  s.structures.g = metric_from(identity_matrix(8));
  for (int j = 0; j < 3; ++j) {
    const std::string name = "J" + std::to_string(j + 1);
    s.expectations.push_back({"JKG:" + name, true});
    s.moments.push_back({"omega" + std::to_string(j + 1), d.omega[static_cast<std::size_t>(j)], 0, j});
    s.complex_type.push_back(name);
  }
  s.invariant = {"J1", "J2", "J3", "G"};
  s.min_radius = 0.3;
  return s;
}

Scenario s5() {
  Scenario s;
  s.name = "S5";
  s.description = "S4 data as the generalized Kaehler pair of (I_1, I_2, flat g, b = 0)";
  s.m = 8;
  HyperKaehlerData d = hk_data(2);
  s.rd = d.rd;
  s.structures.mode = ReductionMode::GK;
  s.structures.h = zero_form(8, 3);
  BihermitianData bh{constant_matrix(8, d.i[0]), constant_matrix(8, d.i[1]), identity_matrix(8), zero_form(8, 2)};
  GKFields gk = gk_from_bihermitian(bh);
  s.structures.j = {{"J", gk.j}};
  s.structures.g = gk.g;
  s.expectations = {{"JKG:J", true}};
  s.commutation = BihermitianInputs{bh.i_plus, bh.i_minus};
  s.invariant = {"J", "G"};
  s.min_radius = 0.3;
  return s;
}

MatrixField planar_projection(int m, int keep) {
  return MatrixField(Field::make(FieldShape::matrix(m, keep, 1), [keep](auto x, auto out) {
    for (int i = 0; i < keep; ++i) out[static_cast<std::size_t>(i)] = x[i];
  }));
}

Scenario s6(const std::string& variant) {
  Scenario s;
  s.m = 3;
  s.rd.dim_m = 3;
  s.structures.mode = ReductionMode::JG;
  s.structures.h = polynomial_form(3, 3, {{Polynomial::constant(3, 1.0), {0, 1, 2}}});
  s.structures.g = metric_from(identity_matrix(3));
  int keep = 2;
  if (variant.empty()) {
    s.name = "S6";
    s.description = "R^3 with H = dx^dy^dz, translation along z, h = 0 (quotient model)";
    s.rd.lie = LieAlgebraData::abelian({coordinate_vector(3, 2)});
    s.rd.module = GModuleData::trivial(1, 0);
  } else if (variant == "level") {
    s.name = "S6-level";
    s.description = "R^3 with H = dx^dy^dz, no group action, mu = z (level-set model)";
    s.rd.lie = LieAlgebraData::abelian({});
    s.rd.module = GModuleData::trivial(0, 1);
    s.rd.mu = {coordinate_function(3, 2)};
    s.invariant = {"G"};
  } else {
    s.name = "S6-trivial";
    s.description = "R^3 with H = dx^dy^dz, trivial reduction data";
    s.rd.lie = LieAlgebraData::abelian({});
    s.rd.module = GModuleData::trivial(0, 0);
    s.invariant = {"G"};
    keep = 3;
  }
  s.expected_kg_tangent = keep;
  s.oracle = QuotientOracle{planar_projection(3, keep), [keep](const VectorXd&) {
                              return std::vector<NamedMatrix>{{"G", metric_block(MatrixXd::Identity(keep, keep))}};
                            }};
  s.box = 1.0;
  return s;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"S1", "S2", "S3", "S4", "S5", "S6", "S6-level", "S6-trivial"}; }

Scenario builtin(const std::string& name) {
  if (name == "S1") return s1();
  if (name == "S2") return s2();
  if (name == "S3") return s3();
  if (name == "S4") return s4();
  if (name == "S5") return s5();
  if (name == "S6") return s6("");
  if (name == "S6-level") return s6("level");
  if (name == "S6-trivial") return s6("trivial");
  throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + name + "'");
}

}  // namespace gkq
