// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_CALCULUS_HPP
#define GKQ_CALCULUS_HPP

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gkq/field.hpp"

namespace gkq {

/// <X+xi, Y+eta> = eta(X) + xi(Y) on fiber vectors of length 2m.
double fiber_pairing(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Pairing of two sections at a chart point.
double pairing(const SectionField& e1, const SectionField& e2, const Eigen::VectorXd& p);
ScalarField pairing_field(const SectionField& e1, const SectionField& e2);

FormField exterior_derivative(const FormField& w);
/// df as a 1-form.
FormField exterior_derivative(const ScalarField& f);

VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// H-twisted Courant (Dorfman) bracket
///   [X,Y] + L_X eta - i_Y d xi + i_Y i_X H.
/// H need not be closed.
SectionField courant_bracket(const SectionField& e1, const SectionField& e2, const FormField& h);
Eigen::VectorXd courant_bracket_at(const SectionField& e1, const SectionField& e2, const FormField& h,
                                   const Eigen::VectorXd& p);

/// X + xi  ->  X + xi + i_X B.
SectionField b_transform(const SectionField& e, const FormField& b);

VectorField anchor(const SectionField& e);
SectionField vector_section(const VectorField& x);
SectionField form_section(const FormField& xi);
/// 0 + df.
SectionField exact_section(const ScalarField& f);
SectionField add(const SectionField& a, const SectionField& b);
SectionField scale(const ScalarField& f, const SectionField& e);
/// Pointwise A(x) e(x) for a 2m x 2m matrix field.
SectionField apply(const MatrixField& a, const SectionField& e);

/// Evaluates a k-form component array on k vectors.
double evaluate_form(const Eigen::VectorXd& comps, int m, std::span<const Eigen::VectorXd> vectors);

/// Residual norms of the five Courant-algebroid axioms at a point.
struct AxiomResiduals {
  std::array<double, 5> c{};  // C1..C5
  double max() const;
};

AxiomResiduals axioms_residual(const FormField& h, const SectionField& e1, const SectionField& e2,
                               const SectionField& e3, const ScalarField& f, const Eigen::VectorXd& p);

/// <[[nabla X, nabla Y]]_{H0}, nabla Z> for the splitting nabla X = X + i_X B.
double splitting_curvature(const FormField& b, const FormField& h0, const VectorField& x, const VectorField& y,
                           const VectorField& z, const Eigen::VectorXd& p);

}  // namespace gkq

#endif  // GKQ_CALCULUS_HPP
