// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_STRUCTURES_HPP
#define GKQ_STRUCTURES_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gkq/field.hpp"
#include "gkq/linalg.hpp"

namespace gkq {

enum class StructureKind { ComplexStructure, Metric, DiracProjector };

/// 2m x 2m matrix field acting on TM + T*M, tagged with its algebraic type.
class StructureField : public MatrixField {
 public:
  StructureField() = default;
  StructureField(MatrixField f, StructureKind kind);
  StructureKind kind() const { return kind_; }
  int chart_dim() const { return dim(); }

 private:
  StructureKind kind_ = StructureKind::ComplexStructure;
};

class GCStructureField : public StructureField {
 public:
  GCStructureField() = default;
  explicit GCStructureField(MatrixField f) : StructureField(std::move(f), StructureKind::ComplexStructure) {}
};

class GMetricField : public StructureField {
 public:
  GMetricField() = default;
  explicit GMetricField(MatrixField f) : StructureField(std::move(f), StructureKind::Metric) {}
};

/// Lagrangian subbundle given by a projector-like field whose pointwise image
/// is L.  Complex L uses re + i*im; `im` is invalid for real L.
struct DiracField {
  MatrixField re;
  MatrixField im;
  bool is_complex() const { return im.valid(); }
  int chart_dim() const { return re.dim(); }
};

/// (I+, I-, g, b): complex structures and metric as m x m matrix fields (I as
/// the endomorphism of TM, g as the map TM -> T*M), b as a 2-form.
struct BihermitianData {
  MatrixField i_plus;
  MatrixField i_minus;
  MatrixField g;
  FormField b;
  int chart_dim() const { return g.dim(); }
};

/// Pointwise bihermitian quadruple; b is the component matrix of the 2-form.
struct BihermitianPoint {
  Eigen::MatrixXd i_plus;
  Eigen::MatrixXd i_minus;
  Eigen::MatrixXd g;
  Eigen::MatrixXd b;
};

struct GKMatrices {
  Eigen::MatrixXd j;
  Eigen::MatrixXd j_prime;
  Eigen::MatrixXd g;
};

struct GKFields {
  GCStructureField j;
  GCStructureField j_prime;
  GMetricField g;
};

/// [[0, -w^-1], [w, 0]] with w the flat map of omega.
GCStructureField from_symplectic(const FormField& omega, double degeneracy_tol = 1e-12);
/// [[-I, 0], [0, I^T]].
GCStructureField from_complex(const MatrixField& i);
/// [[1,0],[b,1]] [[0, g^-1],[g, 0]] [[1,0],[-b,1]].
GMetricField metric_from(const MatrixField& g, const FormField& b);
GMetricField metric_from(const MatrixField& g);

GKFields gk_from_bihermitian(const BihermitianData& data);
GKMatrices gk_from_bihermitian(const BihermitianPoint& data);
BihermitianPoint bihermitian_at(const BihermitianData& data, const Eigen::VectorXd& p);

/// Recovers (I+, I-, g, b) from a generalized Kaehler pair at a point via the
/// +-1 eigenspaces of G.
BihermitianPoint bihermitian_from_gk(const Eigen::MatrixXd& j, const Eigen::MatrixXd& g, double cluster_tol = 1e-10);

/// +-1 eigenspaces of a generalized metric.
struct MetricSplitting {
  Subspace c_plus;
  Subspace c_minus;
};
MetricSplitting metric_eigenspaces(const Eigen::MatrixXd& g, double cluster_tol = 1e-10);

/// The +i eigenbundle of J, as the range of (1 - iJ)/2.
ComplexSubspace eigenbundle(const Eigen::MatrixXd& j, double tol = kDefaultRankTol);
ComplexSubspace eigenbundle(const GCStructureField& j, const Eigen::VectorXd& p);

DiracField graph_of_two_form(const FormField& omega);
/// Graph {pi(xi) + xi} of a bivector with components pi^{ij}.
DiracField graph_of_bivector(const MatrixField& pi);
DiracField eigenbundle_field(const GCStructureField& j);

/// Max |<[[e_a, e_b]]_H, e_c>| over projector-generated sections.
double integrability_residual(const DiracField& l, const FormField& h, const Eigen::VectorXd& p);
/// Max norm of the Nijenhuis-type tensor of J over constant frame pairs.
double integrability_residual(const GCStructureField& j, const FormField& h, const Eigen::VectorXd& p);

/// Algebraic residuals of a structure at a point.
double square_residual(const Eigen::MatrixXd& a, double sign);  // ||A^2 - sign*Id||
double orthogonality_residual(const Eigen::MatrixXd& a);        // ||A^T Q A - Q||
/// Smallest eigenvalue of the symmetric part of Q G.
double metric_positivity(const Eigen::MatrixXd& g);

struct GKReport {
  double j_square = 0.0;
  double j_orthogonal = 0.0;
  double commutator = 0.0;
  double j_prime_square = 0.0;
  double j_integrability = 0.0;
  double j_prime_integrability = 0.0;
  double metric_min_eigenvalue = 0.0;
  bool pass = false;
};

struct GHKReport {
  double quaternion = 0.0;       // ||J1 J2 - J3||
  double anticommutator = 0.0;   // ||J1 J2 + J2 J1||
  std::vector<GKReport> pairs;
  bool pass = false;
};

GKReport check_gk(const GCStructureField& j, const GMetricField& g, const FormField& h,
                  std::span<const Eigen::VectorXd> points, double tol = 1e-8);
GHKReport check_ghk(const GCStructureField& j1, const GCStructureField& j2, const GCStructureField& j3,
                    const GMetricField& g, const FormField& h, std::span<const Eigen::VectorXd> points,
                    double tol = 1e-8);

/// max over coordinate triples of |d^c_- w_- - db| and |d^c_+ w_+ + db|, with
/// d^c a = -da(I., I., I.) and w = g I.
double dc_form_residual(const BihermitianData& data, const Eigen::VectorXd& p);

/// 2-form with flat map g I for matrix fields g and I.
FormField kaehler_form(const MatrixField& g, const MatrixField& i);

}  // namespace gkq

#endif  // GKQ_STRUCTURES_HPP
