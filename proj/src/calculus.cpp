// SPDX-License-Identifier: Apache-2.0
#include "gkq/calculus.hpp"

#include <algorithm>
#include <string>

namespace gkq {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

void require_same_dim(const Field& a, const Field& b, const char* what) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": chart dimensions " + std::to_string(a.dim()) +
                                                  " and " + std::to_string(b.dim()));
}

// Index tuples of length k over m values, in flat-offset order.
void next_tuple(std::vector<int>& t, int m) {
  for (int pos = static_cast<int>(t.size()) - 1; pos >= 0; --pos) {
    if (++t[sz(pos)] < m) return;
    t[sz(pos)] = 0;
  }
}

}  // namespace

double fiber_pairing(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "fiber pairing");
  const auto m = a.size() / 2;
  return a.head(m).dot(b.tail(m)) + a.tail(m).dot(b.head(m));
}

double pairing(const SectionField& e1, const SectionField& e2, const Eigen::VectorXd& p) {
  require_same_dim(e1, e2, "pairing");
  return fiber_pairing(e1.at(p), e2.at(p));
}

ScalarField pairing_field(const SectionField& e1, const SectionField& e2) {
  require_same_dim(e1, e2, "pairing");
  const int m = e1.dim();
  return ScalarField(Field::make(
      FieldShape::scalar(m),
      [e1, e2, m](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        auto a = e1.eval<S>(x);
        auto b = e2.eval<S>(x);
        S acc(0.0);
        for (int i = 0; i < m; ++i) acc = acc + a[sz(i)] * b[sz(m + i)] + a[sz(m + i)] * b[sz(i)];
        out[0] = acc;
      },
      std::min(e1.order(), e2.order())));
}

FormField exterior_derivative(const FormField& w) {
  const int m = w.dim();
  const int k = w.degree();
  if (k > 3) throw Error(ErrorCode::InvalidInput, "exterior derivative supported up to degree 3");
  return FormField(Field::make<2>(
      FieldShape::form(m, k + 1),
      [w, m, k](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        std::vector<S> val;
        std::vector<S> jac;
        jet<S>(w, x, val, jac);
        std::vector<int> t(sz(k + 1), 0);
        std::vector<int> rest(sz(k));
        const int total = int_pow(m, k + 1);
        for (int off = 0; off < total; ++off, next_tuple(t, m)) {
          S acc(0.0);
          for (int a = 0; a <= k; ++a) {
            for (int b = 0, r = 0; b <= k; ++b)
              if (b != a) rest[sz(r++)] = t[sz(b)];
            const int src = form_offset(m, rest);
            const S& d = jac[sz(src * m + t[sz(a)])];
            if (a % 2 == 0) acc = acc + d;
            else acc = acc - d;
          }
          out[sz(off)] = acc;
        }
      },
      w.order() - 1));
}

FormField exterior_derivative(const ScalarField& f) {
  const int m = f.dim();
  return FormField(Field::make<2>(
      FieldShape::form(m, 1),
      [f, m](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        std::vector<S> val;
        std::vector<S> jac;
        jet<S>(f, x, val, jac);
        for (int i = 0; i < m; ++i) out[sz(i)] = jac[sz(i)];
      },
      f.order() - 1));
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_dim(x, y, "lie bracket");
  const int m = x.dim();
  return VectorField(Field::make<2>(
      FieldShape::vector(m),
      [x, y, m](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        std::vector<S> vx, jx, vy, jy;
        jet<S>(x, p, vx, jx);
        jet<S>(y, p, vy, jy);
        for (int j = 0; j < m; ++j) {
          S acc(0.0);
          for (int i = 0; i < m; ++i) acc = acc + vx[sz(i)] * jy[sz(j * m + i)] - vy[sz(i)] * jx[sz(j * m + i)];
          out[sz(j)] = acc;
        }
      },
      std::min(x.order(), y.order()) - 1));
}

SectionField courant_bracket(const SectionField& e1, const SectionField& e2, const FormField& h) {
  require_same_dim(e1, e2, "courant bracket");
  require_same_dim(e1, h, "courant bracket twist");
  if (h.degree() != 3) throw Error(ErrorCode::InvalidInput, "twist must be a 3-form");
  const int m = e1.dim();
  return SectionField(Field::make<2>(
      FieldShape::section(m),
      [e1, e2, h, m](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        std::vector<S> v1, j1, v2, j2;
        jet<S>(e1, p, v1, j1);
        jet<S>(e2, p, v2, j2);
        auto hv = h.eval<S>(p);
        // X = v1[0..m), xi = v1[m..2m), Y = v2[0..m), eta = v2[m..2m)
        auto dX = [&](int comp, int dir) -> const S& { return j1[sz(comp * m + dir)]; };
        auto dXi = [&](int comp, int dir) -> const S& { return j1[sz((m + comp) * m + dir)]; };
        auto dY = [&](int comp, int dir) -> const S& { return j2[sz(comp * m + dir)]; };
        auto dEta = [&](int comp, int dir) -> const S& { return j2[sz((m + comp) * m + dir)]; };
        for (int j = 0; j < m; ++j) {
          S acc(0.0);
          for (int i = 0; i < m; ++i) acc = acc + v1[sz(i)] * dY(j, i) - v2[sz(i)] * dX(j, i);
          out[sz(j)] = acc;
        }
        for (int k = 0; k < m; ++k) {
          S acc(0.0);
          for (int i = 0; i < m; ++i) {
            acc = acc + v1[sz(i)] * dEta(k, i) + v2[sz(m + i)] * dX(i, k);
            acc = acc - v2[sz(i)] * (dXi(k, i) - dXi(i, k));
            for (int j = 0; j < m; ++j) {
              const S& hijk = hv[sz((i * m + j) * m + k)];
              acc = acc + v1[sz(i)] * v2[sz(j)] * hijk;
            }
          }
          out[sz(m + k)] = acc;
        }
      },
      std::min({e1.order() - 1, e2.order() - 1, h.order()})));
}

Eigen::VectorXd courant_bracket_at(const SectionField& e1, const SectionField& e2, const FormField& h,
                                   const Eigen::VectorXd& p) {
  return courant_bracket(e1, e2, h).at(p);
}

SectionField b_transform(const SectionField& e, const FormField& b) {
  require_same_dim(e, b, "b-transform");
  if (b.degree() != 2) throw Error(ErrorCode::InvalidInput, "B must be a 2-form");
  const int m = e.dim();
  return SectionField(Field::make(
      FieldShape::section(m),
      [e, b, m](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        e.eval<S>(p, out);
        auto bv = b.eval<S>(p);
        for (int j = 0; j < m; ++j) {
          S acc(0.0);
          for (int i = 0; i < m; ++i) acc = acc + out[sz(i)] * bv[sz(i * m + j)];
          out[sz(m + j)] = out[sz(m + j)] + acc;
        }
      },
      std::min(e.order(), b.order())));
}

VectorField anchor(const SectionField& e) {
  const int m = e.dim();
  return VectorField(Field::make(
      FieldShape::vector(m),
      [e, m](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        auto v = e.eval<S>(p);
        for (int i = 0; i < m; ++i) out[sz(i)] = v[sz(i)];
      },
      e.order()));
}

SectionField vector_section(const VectorField& x) {
  const int m = x.dim();
  return SectionField(Field::make(
      FieldShape::section(m),
      [x, m](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        x.eval<S>(p, out.subspan(0, sz(m)));
        for (int i = 0; i < m; ++i) out[sz(m + i)] = 0.0;
      },
      x.order()));
}

SectionField form_section(const FormField& xi) {
  if (xi.degree() != 1) throw Error(ErrorCode::InvalidInput, "form part must be a 1-form");
  const int m = xi.dim();
  return SectionField(Field::make(
      FieldShape::section(m),
      [xi, m](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        for (int i = 0; i < m; ++i) out[sz(i)] = 0.0;
        xi.eval<S>(p, out.subspan(sz(m), sz(m)));
      },
      xi.order()));
}

SectionField exact_section(const ScalarField& f) { return form_section(exterior_derivative(f)); }

SectionField add(const SectionField& a, const SectionField& b) {
  require_same_dim(a, b, "section sum");
  return SectionField(Field::make(
      FieldShape::section(a.dim()),
      [a, b](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        a.eval<S>(p, out);
        auto bv = b.eval<S>(p);
        for (std::size_t i = 0; i < bv.size(); ++i) out[i] = out[i] + bv[i];
      },
      std::min(a.order(), b.order())));
}

SectionField scale(const ScalarField& f, const SectionField& e) {
  require_same_dim(f, e, "section scaling");
  return SectionField(Field::make(
      FieldShape::section(e.dim()),
      [f, e](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        e.eval<S>(p, out);
        auto fv = f.eval<S>(p);
        for (auto& v : out) v = v * fv[0];
      },
      std::min(f.order(), e.order())));
}

SectionField apply(const MatrixField& a, const SectionField& e) {
  require_same_dim(a, e, "operator application");
  const int n = 2 * e.dim();
  if (a.rows() != n || a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "operator must be 2m x 2m");
  return SectionField(Field::make(
      FieldShape::section(e.dim()),
      [a, e, n](auto p, auto out) {
        using S = typename decltype(out)::value_type;
        auto av = a.eval<S>(p);
        auto ev = e.eval<S>(p);
        for (int i = 0; i < n; ++i) {
          S acc(0.0);
          for (int j = 0; j < n; ++j) acc = acc + av[sz(i * n + j)] * ev[sz(j)];
          out[sz(i)] = acc;
        }
      },
      std::min(a.order(), e.order())));
}

double evaluate_form(const Eigen::VectorXd& comps, int m, std::span<const Eigen::VectorXd> vectors) {
  const int k = static_cast<int>(vectors.size());
  std::vector<int> t(sz(k), 0);
  const int total = int_pow(m, k);
  double acc = 0.0;
  for (int off = 0; off < total; ++off, next_tuple(t, m)) {
    double term = comps(off);
    if (term == 0.0) continue;
    for (int a = 0; a < k; ++a) term *= vectors[sz(a)](t[sz(a)]);
    acc += term;
  }
  return acc;
}

double AxiomResiduals::max() const { return *std::max_element(c.begin(), c.end()); }

AxiomResiduals axioms_residual(const FormField& h, const SectionField& e1, const SectionField& e2,
                               const SectionField& e3, const ScalarField& f, const Eigen::VectorXd& p) {
  const int m = e1.dim();
  AxiomResiduals r;

  // C1: [[e1,[[e2,e3]]]] = [[[[e1,e2]],e3]] + [[e2,[[e1,e3]]]]
  {
    auto b23 = courant_bracket(e2, e3, h);
    auto b12 = courant_bracket(e1, e2, h);
    auto b13 = courant_bracket(e1, e3, h);
    Eigen::VectorXd lhs = courant_bracket(e1, b23, h).at(p);
    Eigen::VectorXd rhs = courant_bracket(b12, e3, h).at(p) + courant_bracket(e2, b13, h).at(p);
    r.c[0] = (lhs - rhs).norm();
  }
  // C2: [[e1, f e2]] = f [[e1,e2]] + (pi(e1) f) e2
  {
    Eigen::VectorXd lhs = courant_bracket(e1, scale(f, e2), h).at(p);
    Eigen::VectorXd grad = jacobian_at(f, p).row(0).transpose();
    double fp = f.at(p)(0);
    Eigen::VectorXd x1 = e1.at(p).head(m);
    Eigen::VectorXd rhs = fp * courant_bracket(e1, e2, h).at(p) + grad.dot(x1) * e2.at(p);
    r.c[1] = (lhs - rhs).norm();
  }
  // C3: pi(e1) <e2,e3> = <[[e1,e2]],e3> + <e2,[[e1,e3]]>
  {
    Eigen::VectorXd grad = jacobian_at(pairing_field(e2, e3), p).row(0).transpose();
    Eigen::VectorXd x1 = e1.at(p).head(m);
    double lhs = grad.dot(x1);
    double rhs = fiber_pairing(courant_bracket(e1, e2, h).at(p), e3.at(p)) +
                 fiber_pairing(e2.at(p), courant_bracket(e1, e3, h).at(p));
    r.c[2] = std::abs(lhs - rhs);
  }
  // C4: pi [[e1,e2]] = [pi e1, pi e2]
  {
    Eigen::VectorXd lhs = courant_bracket(e1, e2, h).at(p).head(m);
    Eigen::VectorXd rhs = lie_bracket(anchor(e1), anchor(e2)).at(p);
    r.c[3] = (lhs - rhs).norm();
  }
  // C5: [[e1,e1]] = 1/2 d<e1,e1> (as a covector inside E)
  {
    Eigen::VectorXd lhs = courant_bracket(e1, e1, h).at(p);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * m);
    rhs.tail(m) = 0.5 * jacobian_at(pairing_field(e1, e1), p).row(0).transpose();
    r.c[4] = (lhs - rhs).norm();
  }
  return r;
}

double splitting_curvature(const FormField& b, const FormField& h0, const VectorField& x, const VectorField& y,
                           const VectorField& z, const Eigen::VectorXd& p) {
  auto nx = b_transform(vector_section(x), b);
  auto ny = b_transform(vector_section(y), b);
  auto nz = b_transform(vector_section(z), b);
  return fiber_pairing(courant_bracket(nx, ny, h0).at(p), nz.at(p));
}

}  // namespace gkq
