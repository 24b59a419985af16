// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_SCENARIOS_HPP
#define GKQ_SCENARIOS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gkq/field.hpp"
#include "gkq/reduction.hpp"
#include "gkq/structures.hpp"

namespace gkq {

/// Local quotient chart: `submersion` maps a level-set point to chart
/// coordinates on M^red (an m_red x 1 matrix field); `expected` gives the
/// closed-form reduced structures, in split form, at those coordinates.
struct QuotientOracle {
  MatrixField submersion;
  std::function<std::vector<NamedMatrix>(const Eigen::VectorXd& y)> expected;
};

/// i_{psi(u_generator)} omega = d mu_component.
struct MomentCheck {
  std::string name;
  FormField omega;
  int generator = 0;
  int component = 0;
};

struct ConditionExpectation {
  std::string condition;  // "<ID>:<structure>"
  bool holds = false;
};

/// Complex structures I+ and I- (as m x m fields) whose split reduction is
/// compared with the GK reduction of gk_from_bihermitian(I+, I-, g, 0).
struct BihermitianInputs {
  MatrixField i_plus;
  MatrixField i_minus;
};

struct Scenario {
  std::string name;
  std::string description;
  int m = 0;
  ReductionData rd;
  StructureSet structures;
  std::vector<ConditionExpectation> expectations;
  std::optional<QuotientOracle> oracle;
  std::optional<BihermitianInputs> commutation;
  std::vector<MomentCheck> moments;
  /// Structures whose reduction must be of complex type (no tangent to
  /// cotangent block in the split frame).
  std::vector<std::string> complex_type;
  /// Structures whose invariance under the extended action is asserted;
  /// residuals are reported for every structure.
  std::vector<std::string> invariant;
  int expected_kg_tangent = -1;
  double box = 1.5;
  double min_radius = 0.0;
};

Scenario builtin(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace gkq

#endif  // GKQ_SCENARIOS_HPP
