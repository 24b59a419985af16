// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_REDUCTION_HPP
#define GKQ_REDUCTION_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gkq/field.hpp"
#include "gkq/linalg.hpp"
#include "gkq/structures.hpp"

namespace gkq {

/// Lie algebra with basis u_0..u_{n-1}, brackets [u_i,u_j] = c^k_ij u_k, and
/// an action psi: g -> vector fields.
struct LieAlgebraData {
  int dim_g = 0;
  std::vector<double> structure_constants;  // c[(i*n + j)*n + k] = c^k_ij
  std::vector<VectorField> psi;

  double c(int i, int j, int k) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  static LieAlgebraData abelian(std::vector<VectorField> psi);
};

/// g-module h; rho[i] is the action of u_i as a dim_h x dim_h matrix.
struct GModuleData {
  int dim_h = 0;
  std::vector<Eigen::MatrixXd> rho;

  Eigen::VectorXd act(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const;
  static GModuleData trivial(int dim_g, int dim_h);
};

/// (psi~, h, mu). `nu` lifts the action: psi~(u_i) = psi(u_i) + d nu_i (empty
/// for the trivial lift).  `theta` adds further 1-forms, psi~(u_i) += theta_i,
/// for twists that are not basic (d theta_i = i_{psi(u_i)} H).  `mu[j]` is the
/// component <mu, w_j>.
struct ReductionData {
  int dim_m = 0;
  LieAlgebraData lie;
  std::vector<ScalarField> nu;
  std::vector<FormField> theta;
  GModuleData module;
  std::vector<ScalarField> mu;

  SectionField lifted_generator(int i) const;
  Eigen::VectorXd mu_at(const Eigen::VectorXd& p) const;
  Eigen::MatrixXd dmu_at(const Eigen::VectorXd& p) const;
};

struct InvariantResiduals {
  double jacobi = 0.0;
  double homomorphism = 0.0;
  double representation = 0.0;
  double isotropy = 0.0;
  double equivariance = 0.0;
};

/// Residuals of the ReductionData invariants over the given points.
InvariantResiduals check_invariants(const ReductionData& rd, std::span<const Eigen::VectorXd> points);

/// Element (u, w) of the hemisemidirect product g + h.
struct AlgebraElement {
  Eigen::VectorXd u;
  Eigen::VectorXd w;
};

/// ([u1,u2], u1.w2).
AlgebraElement hemisemi_bracket(const AlgebraElement& a1, const AlgebraElement& a2, const LieAlgebraData& lie,
                                const GModuleData& module);

/// Psi(u, w) = psi~(u) + d<mu, w>.
SectionField extended_action(const ReductionData& rd, const AlgebraElement& a);

/// Image of the extended action at p, from the basis generators.
Subspace K_at(const ReductionData& rd, const Eigen::VectorXd& p, double rank_tol = kDefaultRankTol);
/// G K^perp intersected with K^perp.
Subspace KG_at(const Subspace& k, const Eigen::MatrixXd& g);
Subspace KG_at(const ReductionData& rd, const GMetricField& g, const Eigen::VectorXd& p,
               double rank_tol = kDefaultRankTol);

/// Newton projection onto mu = 0 with minimum-norm steps.
Eigen::VectorXd project_to_level(const ReductionData& rd, const Eigen::VectorXd& p0, double level_tol = 1e-12,
                                 int max_iter = 50);

enum class ConditionId { JKK, RED, JKG, EASY };
const char* to_string(ConditionId id);

struct ConditionResult {
  bool holds = false;
  double angle = 0.0;
};

/// Fiberwise condition test for J (and G, needed by JKG and EASY) against K.
ConditionResult check_condition(ConditionId id, const Eigen::MatrixXd& j, const Eigen::MatrixXd* g,
                                const Subspace& k, double angle_tol = kDefaultAngleTol);
ConditionResult check_condition(ConditionId id, const ReductionData& rd, const GCStructureField& j,
                                const GMetricField* g, const Eigen::VectorXd& p, double angle_tol = kDefaultAngleTol,
                                double rank_tol = kDefaultRankTol);

/// max ||[[psi~(u), S e]] - S [[psi~(u), e]]|| over generators and constant frame sections.
double invariance_residual(const MatrixField& s, const ReductionData& rd, const FormField& h,
                           const Eigen::VectorXd& p);

/// ((L + K^perp) + K) intersected with K^G, the model of L^red inside K^G.
ComplexSubspace dirac_reduce_at(const ComplexSubspace& l, const Subspace& k, const Subspace& kg);

/// Coordinates X of A F in the frame F modulo K: A F = F X + K Y + residual.
struct FrameOperator {
  Eigen::MatrixXd x;
  double along_k = 0.0;
  double leakage = 0.0;
};
FrameOperator frame_operator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& frame, const Eigen::MatrixXd& k);

enum class ReductionMode { J, JG, GK, GHK };
const char* to_string(ReductionMode mode);

struct NamedStructure {
  std::string name;
  GCStructureField field;
};

/// Structures to reduce.  In mode J the metric is auxiliary and only picks the
/// complement K^G; `alt_metric` (optional) is a second auxiliary metric used
/// to check that the reduced Dirac structure does not depend on that choice.
struct StructureSet {
  ReductionMode mode = ReductionMode::JG;
  std::vector<NamedStructure> j;
  GMetricField g;
  std::optional<GMetricField> alt_metric;
  FormField h;
};

struct Tolerances {
  double rank = 1e-10;
  double angle = 1e-8;
  double level = 1e-12;
  double residual = 1e-8;
};

struct NamedCondition {
  std::string name;
  ConditionId id;
  std::string structure;
  ConditionResult result;
};

struct NamedMatrix {
  std::string name;
  Eigen::MatrixXd value;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

/// Reduced structures at one level-set point, modeled on K^G.
struct ReducedFiberReport {
  Eigen::VectorXd point;
  double level_residual = 0.0;
  int dim_k = 0;
  int expected_dim_k = 0;
  int dim_kperp = 0;
  int dim_kg = 0;
  int dim_kg_tangent = 0;
  int dim_kg_cotangent = 0;
  bool rank_drop = false;
  bool free_action = true;
  bool rank_unstable = false;
  double k_isotropy = 0.0;
  std::vector<NamedCondition> conditions;
  std::vector<NamedMatrix> reduced;        // on the orthonormal K^G basis
  std::vector<NamedMatrix> reduced_split;  // on the split frame diag(h, eta)
  std::vector<NamedValue> residuals;
  bool ok = true;
  std::string error;

  // Not serialized.
  Subspace k;
  Subspace kperp;
  Subspace kg;
  Eigen::MatrixXd split_frame;  // 2m x dim_kg, empty when K^G does not split

  const Eigen::MatrixXd* find_reduced(const std::string& name) const;
  const Eigen::MatrixXd* find_split(const std::string& name) const;
  const NamedCondition* find_condition(const std::string& name) const;
  double residual(const std::string& name) const;
};

/// Reduces the structure set at a level-set point.  `dp` (m_red x m), when
/// given, normalizes the tangent half of the split frame to horizontal lifts
/// of coordinate vectors on the quotient chart.
ReducedFiberReport reduce_at(const ReductionData& rd, const StructureSet& structures, const Eigen::VectorXd& p,
                             const Tolerances& tol, const Eigen::MatrixXd* dp = nullptr);

}  // namespace gkq

#endif  // GKQ_REDUCTION_HPP
