// SPDX-License-Identifier: Apache-2.0
#include "gkq/builders.hpp"

#include <algorithm>
#include <functional>

namespace gkq {

Polynomial Polynomial::constant(int m, double c) {
  Polynomial p(m);
  p.add(c, std::vector<int>(static_cast<std::size_t>(m), 0));
  return p;
}

Polynomial Polynomial::coordinate(int m, int i, double scale) {
  Polynomial p(m);
  std::vector<int> pw(static_cast<std::size_t>(m), 0);
  pw[static_cast<std::size_t>(i)] = 1;
  p.add(scale, pw);
  return p;
}

Polynomial& Polynomial::add(double coeff, std::vector<int> powers) {
  if (static_cast<int>(powers.size()) != m_) throw Error(ErrorCode::DimensionMismatch, "monomial arity");
  terms_.push_back({coeff, std::move(powers)});
  return *this;
}

Polynomial Polynomial::random(int m, int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Polynomial p(m);
  std::vector<int> pw(static_cast<std::size_t>(m), 0);
  // Enumerate exponent vectors with total degree <= degree in lexicographic order.
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == m) {
      p.add(u(rng), pw);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      pw[static_cast<std::size_t>(var)] = e;
      rec(var + 1, left - e);
    }
    pw[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, degree);
  return p;
}

ScalarField constant_scalar(int m, double c) {
  return ScalarField(Field::make(FieldShape::scalar(m), [c](auto, auto out) { out[0] = c; }));
}

ScalarField coordinate_function(int m, int i) {
  return ScalarField(Field::make(FieldShape::scalar(m), [i](auto x, auto out) { out[0] = x[i]; }));
}

ScalarField polynomial_scalar(Polynomial p) {
  const int m = p.dim();
  return ScalarField(Field::make(FieldShape::scalar(m), [p = std::move(p)](auto x, auto out) { out[0] = p(x); }));
}

VectorField constant_vector(const Eigen::VectorXd& v) {
  const int m = static_cast<int>(v.size());
  std::vector<double> c(v.data(), v.data() + m);
  return VectorField(Field::make(FieldShape::vector(m), [c](auto, auto out) {
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  }));
}

VectorField coordinate_vector(int m, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  v(i) = 1.0;
  return constant_vector(v);
}

VectorField linear_vector_field(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(a.rows());
  if (a.cols() != m || b.size() != m) throw Error(ErrorCode::DimensionMismatch, "linear vector field shape");
  Eigen::MatrixXd am = a;
  Eigen::VectorXd bm = b;
  return VectorField(Field::make(FieldShape::vector(m), [am, bm, m](auto x, auto out) {
    using S = typename decltype(out)::value_type;
    for (int i = 0; i < m; ++i) {
      S acc(bm(i));
      for (int j = 0; j < m; ++j)
        if (am(i, j) != 0.0) acc = acc + am(i, j) * x[j];
      out[i] = acc;
    }
  }));
}

VectorField linear_vector_field(const Eigen::MatrixXd& a) {
  return linear_vector_field(a, Eigen::VectorXd::Zero(a.rows()));
}

VectorField polynomial_vector(std::vector<Polynomial> comps) {
  const int m = static_cast<int>(comps.size());
  return VectorField(Field::make(FieldShape::vector(m), [c = std::move(comps)](auto x, auto out) {
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i](x);
  }));
}

FormField zero_form(int m, int k) {
  return FormField(Field::make(FieldShape::form(m, k), [](auto, auto out) {
    for (auto& v : out) v = 0.0;
  }));
}

FormField constant_two_form(const Eigen::MatrixXd& w) {
  const int m = static_cast<int>(w.rows());
  std::vector<double> c(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(i * m + j)] = w(i, j);
  return FormField(Field::make(FieldShape::form(m, 2), [c](auto, auto out) {
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  }));
}

FormField polynomial_form(int m, int k, std::vector<FormTerm> terms) {
  for (const auto& t : terms)
    if (static_cast<int>(t.idx.size()) != k || t.coeff.dim() != m)
      throw Error(ErrorCode::DimensionMismatch, "form term shape");
  return FormField(Field::make(FieldShape::form(m, k), [m, t = std::move(terms)](auto x, auto out) {
    for (auto& v : out) v = 0.0;
    for (const auto& term : t) {
      auto c = term.coeff(x);
      add_wedge(m, std::span<const int>(term.idx), c, out);
    }
  }));
}

FormField random_polynomial_form(int m, int k, int degree, std::mt19937_64& rng) {
  std::vector<FormTerm> terms;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == k) {
      terms.push_back({Polynomial::random(m, degree, rng), idx});
      return;
    }
    for (int i = start; i < m; ++i) {
      idx[static_cast<std::size_t>(pos)] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return polynomial_form(m, k, std::move(terms));
}

FormField polynomial_one_form(std::vector<Polynomial> comps) {
  const int m = static_cast<int>(comps.size());
  return FormField(Field::make(FieldShape::form(m, 1), [c = std::move(comps)](auto x, auto out) {
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i](x);
  }));
}

MatrixField constant_matrix(int m, const Eigen::MatrixXd& a) {
  const int r = static_cast<int>(a.rows());
  const int c = static_cast<int>(a.cols());
  std::vector<double> data(static_cast<std::size_t>(r * c));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) data[static_cast<std::size_t>(i * c + j)] = a(i, j);
  return MatrixField(Field::make(FieldShape::matrix(m, r, c), [data](auto, auto out) {
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i];
  }));
}

SectionField make_section(const VectorField& x, const FormField& xi) {
  if (xi.degree() != 1 || xi.dim() != x.dim()) throw Error(ErrorCode::DimensionMismatch, "section parts");
  const int m = x.dim();
  return SectionField(Field::make(
      FieldShape::section(m),
      [x, xi, m](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        x.eval<S>(p, out.subspan(0, static_cast<std::size_t>(m)));
        xi.eval<S>(p, out.subspan(static_cast<std::size_t>(m), static_cast<std::size_t>(m)));
      },
      std::min(x.order(), xi.order())));
}

SectionField constant_section(const Eigen::VectorXd& v) {
  const int m = static_cast<int>(v.size() / 2);
  std::vector<double> c(v.data(), v.data() + v.size());
  return SectionField(Field::make(FieldShape::section(m), [c](auto, auto out) {
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  }));
}

SectionField random_polynomial_section(int m, int degree, std::mt19937_64& rng) {
  std::vector<Polynomial> vec;
  std::vector<Polynomial> form;
  for (int i = 0; i < m; ++i) vec.push_back(Polynomial::random(m, degree, rng));
  for (int i = 0; i < m; ++i) form.push_back(Polynomial::random(m, degree, rng));
  return make_section(polynomial_vector(std::move(vec)), polynomial_one_form(std::move(form)));
}

}  // namespace gkq
