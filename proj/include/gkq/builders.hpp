// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_BUILDERS_HPP
#define GKQ_BUILDERS_HPP

#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gkq/dual.hpp"
#include "gkq/field.hpp"

namespace gkq {

struct Monomial {
  double coeff = 0.0;
  std::vector<int> powers;  // one exponent per chart coordinate
};

/// Real polynomial in the chart coordinates.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int m) : m_(m) {}
  Polynomial(int m, std::vector<Monomial> terms) : m_(m), terms_(std::move(terms)) {}

  static Polynomial constant(int m, double c);
  static Polynomial coordinate(int m, int i, double scale = 1.0);
  /// All monomials of total degree <= `degree`, coefficients uniform in [-1, 1].
  static Polynomial random(int m, int degree, std::mt19937_64& rng);

  int dim() const { return m_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  Polynomial& add(double coeff, std::vector<int> powers);

  template <class S>
  S operator()(std::span<const S> x) const {
    S acc(0.0);
    for (const auto& t : terms_) {
      S mono(t.coeff);
      for (int i = 0; i < m_; ++i)
        if (t.powers[static_cast<std::size_t>(i)] > 0) mono = mono * ipow(x[i], t.powers[static_cast<std::size_t>(i)]);
      acc = acc + mono;
    }
    return acc;
  }

 private:
  int m_ = 0;
  std::vector<Monomial> terms_;
};

/// Adds coeff * dx^{idx[0]} ^ ... ^ dx^{idx[k-1]} to a full component array.
template <class S>
void add_wedge(int m, std::span<const int> idx, const S& coeff, std::span<S> comps) {
  const int k = static_cast<int>(idx.size());
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<int> tuple(static_cast<std::size_t>(k));
  do {
    int inversions = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    for (int a = 0; a < k; ++a) tuple[static_cast<std::size_t>(a)] = idx[perm[static_cast<std::size_t>(a)]];
    const int off = form_offset(m, tuple);
    if (inversions % 2 == 0) comps[off] = comps[off] + coeff;
    else comps[off] = comps[off] - coeff;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

/// One term p(x) dx^{idx...} of a polynomial-coefficient form.
struct FormTerm {
  Polynomial coeff;
  std::vector<int> idx;
};

ScalarField constant_scalar(int m, double c);
ScalarField coordinate_function(int m, int i);
ScalarField polynomial_scalar(Polynomial p);

VectorField constant_vector(const Eigen::VectorXd& v);
/// The coordinate vector field d/dx^i.
VectorField coordinate_vector(int m, int i);
/// X(x) = A x + b.
VectorField linear_vector_field(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);
VectorField linear_vector_field(const Eigen::MatrixXd& a);
VectorField polynomial_vector(std::vector<Polynomial> comps);

FormField zero_form(int m, int k);
/// Constant 2-form with component matrix W (W antisymmetric).
FormField constant_two_form(const Eigen::MatrixXd& w);
FormField polynomial_form(int m, int k, std::vector<FormTerm> terms);
/// Random polynomial k-form: every increasing index tuple gets a random
/// polynomial coefficient of the given degree.
FormField random_polynomial_form(int m, int k, int degree, std::mt19937_64& rng);
/// 1-form with the given component polynomials.
FormField polynomial_one_form(std::vector<Polynomial> comps);

MatrixField constant_matrix(int m, const Eigen::MatrixXd& a);

SectionField make_section(const VectorField& x, const FormField& xi);
SectionField constant_section(const Eigen::VectorXd& v);
SectionField random_polynomial_section(int m, int degree, std::mt19937_64& rng);

/// Vector field on a 2-form: the musical map X -> i_X w as a matrix (row j,
/// column i holds w_ij).  Equals the transpose of the component matrix.
inline Eigen::MatrixXd flat_map(const Eigen::MatrixXd& w) { return w.transpose(); }
/// Inverse of flat_map: component matrix of the 2-form whose flat map is `a`.
inline Eigen::MatrixXd form_of_map(const Eigen::MatrixXd& a) { return a.transpose(); }

}  // namespace gkq

#endif  // GKQ_BUILDERS_HPP
