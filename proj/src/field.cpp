// SPDX-License-Identifier: Apache-2.0
#include "gkq/field.hpp"

#include <string>

namespace gkq {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::InvalidInput: return "invalid input";
    case ErrorCode::NotInvariant: return "subspace not invariant";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::NoConvergence: return "no convergence";
    case ErrorCode::SingularLevel: return "singular level";
    case ErrorCode::EigenFailure: return "eigen-solver failure";
    case ErrorCode::EvaluationFailure: return "evaluation failure";
    case ErrorCode::ConditionFailure: return "condition failure";
    case ErrorCode::UnknownScenario: return "unknown scenario";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

int int_pow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int FieldShape::size() const {
  switch (kind) {
    case FieldKind::Scalar: return 1;
    case FieldKind::Vector: return dim;
    case FieldKind::Form: return int_pow(dim, degree);
    case FieldKind::Matrix: return rows * cols;
    case FieldKind::Section: return 2 * dim;
  }
  return 0;
}

Eigen::VectorXd Field::at(const Eigen::VectorXd& p) const {
  if (p.size() != dim())
    throw Error(ErrorCode::DimensionMismatch,
                "point has " + std::to_string(p.size()) + " coordinates, chart has " + std::to_string(dim()));
  std::vector<double> x(p.data(), p.data() + p.size());
  auto v = eval<double>(std::span<const double>(x));
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd jacobian_at(const Field& f, const Eigen::VectorXd& p) {
  std::vector<double> x(p.data(), p.data() + p.size());
  std::vector<double> val;
  std::vector<double> jac;
  jet<double>(f, std::span<const double>(x), val, jac);
  Eigen::MatrixXd out(f.size(), f.dim());
  for (int c = 0; c < f.size(); ++c)
    for (int i = 0; i < f.dim(); ++i) out(c, i) = jac[static_cast<std::size_t>(c * f.dim() + i)];
  return out;
}

namespace {
void require_kind(const Field& f, FieldKind kind, const char* what) {
  if (f.valid() && f.shape().kind != kind) throw Error(ErrorCode::InvalidInput, std::string("field is not a ") + what);
}
}  // namespace

ScalarField::ScalarField(Field f) : Field(std::move(f)) { require_kind(*this, FieldKind::Scalar, "scalar field"); }
VectorField::VectorField(Field f) : Field(std::move(f)) { require_kind(*this, FieldKind::Vector, "vector field"); }
FormField::FormField(Field f) : Field(std::move(f)) { require_kind(*this, FieldKind::Form, "differential form"); }
MatrixField::MatrixField(Field f) : Field(std::move(f)) { require_kind(*this, FieldKind::Matrix, "matrix field"); }
SectionField::SectionField(Field f) : Field(std::move(f)) {
  require_kind(*this, FieldKind::Section, "generalized section");
}

Eigen::MatrixXd MatrixField::matrix_at(const Eigen::VectorXd& p) const {
  Eigen::VectorXd v = at(p);
  Eigen::MatrixXd out(rows(), cols());
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) out(i, j) = v(i * cols() + j);
  return out;
}

}  // namespace gkq
