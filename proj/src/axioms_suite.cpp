// SPDX-License-Identifier: Apache-2.0
#include "gkq/axioms_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gkq/builders.hpp"
#include "gkq/calculus.hpp"
#include "gkq/error.hpp"

namespace gkq {

namespace {

constexpr int kDim = 4;

FormField add_forms(const FormField& a, const FormField& b) {
  return FormField(Field::make(
      a.shape(),
      [a, b](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        auto va = a.template eval<S>(x);
        auto vb = b.template eval<S>(x);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = va[i] + vb[i];
      },
      std::min(a.order(), b.order())));
}

FormField twist_form(Twist t, std::mt19937_64& rng) {
  switch (t) {
    case Twist::Closed:
      return add_forms(random_polynomial_form(kDim, 3, 0, rng),
                       exterior_derivative(random_polynomial_form(kDim, 2, 2, rng)));
    case Twist::Nonclosed:
      return polynomial_form(kDim, 3, {{Polynomial::coordinate(kDim, 3), {0, 1, 2}}});
    case Twist::Zero:
      return zero_form(kDim, 3);
  }
  return zero_form(kDim, 3);
}

Eigen::VectorXd random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd p(kDim);
  for (int i = 0; i < kDim; ++i) p(i) = u(rng);
  return p;
}

VectorField random_vector(int degree, std::mt19937_64& rng) {
  std::vector<Polynomial> comps;
  for (int i = 0; i < kDim; ++i) comps.push_back(Polynomial::random(kDim, degree, rng));
  return polynomial_vector(std::move(comps));
}

}  // namespace

Twist parse_twist(const std::string& s) {
  if (s == "closed") return Twist::Closed;
  if (s == "nonclosed") return Twist::Nonclosed;
  if (s == "zero") return Twist::Zero;
  throw Error(ErrorCode::InvalidInput, "unknown twist '" + s + "' (closed, nonclosed, zero)");
}

const char* to_string(Twist t) {
  switch (t) {
    case Twist::Closed: return "closed";
    case Twist::Nonclosed: return "nonclosed";
    case Twist::Zero: return "zero";
  }
  return "?";
}

AxiomSuiteReport run_axiom_suite(const AxiomSuiteConfig& c) {
  if (c.samples < 1 || c.curvature_samples < 1 || c.degree < 0)
    throw Error(ErrorCode::InvalidInput, "axiom suite: sample counts must be positive");
  AxiomSuiteReport r;
  r.config = c;
  std::mt19937_64 rng(c.seed);
  const FormField h = twist_form(c.twist, rng);

  for (int s = 0; s < c.samples; ++s) {
    SectionField e1 = random_polynomial_section(kDim, c.degree, rng);
    SectionField e2 = random_polynomial_section(kDim, c.degree, rng);
    SectionField e3 = random_polynomial_section(kDim, c.degree, rng);
    ScalarField f = polynomial_scalar(Polynomial::random(kDim, 2, rng));
    Eigen::VectorXd p = random_point(rng);
    AxiomResiduals a = axioms_residual(h, e1, e2, e3, f, p);
    for (int i = 0; i < 5; ++i) r.axioms[static_cast<std::size_t>(i)] = std::max(r.axioms[static_cast<std::size_t>(i)], a.c[static_cast<std::size_t>(i)]);
  }

  r.open_kernel = std::numeric_limits<double>::infinity();
  const SectionField open = form_section(polynomial_form(kDim, 1, {{Polynomial::coordinate(kDim, 0), {1}}}));
  for (int s = 0; s < c.curvature_samples; ++s) {
    FormField b = random_polynomial_form(kDim, 2, 2, rng);
    FormField h0 = random_polynomial_form(kDim, 3, 1, rng);
    VectorField x = random_vector(2, rng);
    VectorField y = random_vector(2, rng);
    VectorField z = random_vector(2, rng);
    Eigen::VectorXd p = random_point(rng);
    const FormField total = add_forms(h0, exterior_derivative(b));
    std::vector<Eigen::VectorXd> xyz{x.at(p), y.at(p), z.at(p)};
    double expected = evaluate_form(total.at(p), kDim, xyz);
    r.curvature = std::max(r.curvature, std::abs(splitting_curvature(b, h0, x, y, z, p) - expected));

    SectionField a1 = random_polynomial_section(kDim, 2, rng);
    SectionField a2 = random_polynomial_section(kDim, 2, rng);
    Eigen::VectorXd lhs = courant_bracket_at(b_transform(a1, b), b_transform(a2, b), h, p);
    Eigen::VectorXd rhs = b_transform(courant_bracket(a1, a2, add_forms(h, exterior_derivative(b))), b).at(p);
    r.b_transform = std::max(r.b_transform, (lhs - rhs).norm());

    ScalarField f = polynomial_scalar(Polynomial::random(kDim, 3, rng));
    r.closed_kernel = std::max(r.closed_kernel, courant_bracket_at(exact_section(f), a1, h, p).norm());
    r.open_kernel = std::min(r.open_kernel, courant_bracket_at(open, a1, h, p).norm());
  }

  const double worst = *std::max_element(r.axioms.begin(), r.axioms.end());
  r.pass = worst < c.axiom_tol && r.curvature < c.curvature_tol && r.b_transform < c.curvature_tol &&
           r.closed_kernel < c.curvature_tol && r.open_kernel > 1e-6;
  return r;
}

std::string summary(const AxiomSuiteReport& r) {
  std::ostringstream os;
  auto line = [&](const std::string& name, bool ok, double v, const char* rel, double thr) {
    os << (ok ? "  PASS  " : "  FAIL  ") << name << "  " << v << " " << rel << " " << thr << "\n";
  };
  os << "axiom suite: twist " << to_string(r.config.twist) << ", seed " << r.config.seed << ", " << r.config.samples
     << " samples\n";
  for (int i = 0; i < 5; ++i) {
    double v = r.axioms[static_cast<std::size_t>(i)];
    line("C" + std::to_string(i + 1), v < r.config.axiom_tol, v, "<", r.config.axiom_tol);
  }
  line("splitting_curvature", r.curvature < r.config.curvature_tol, r.curvature, "<", r.config.curvature_tol);
  line("b_transform", r.b_transform < r.config.curvature_tol, r.b_transform, "<", r.config.curvature_tol);
  line("closed_kernel", r.closed_kernel < r.config.curvature_tol, r.closed_kernel, "<", r.config.curvature_tol);
  line("open_kernel", r.open_kernel > 1e-6, r.open_kernel, ">", 1e-6);
  os << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace gkq
