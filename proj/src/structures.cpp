// SPDX-License-Identifier: Apache-2.0
#include "gkq/structures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gkq/builders.hpp"
#include "gkq/calculus.hpp"
#include "gkq/small_matrix.hpp"

namespace gkq {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

template <class S>
SMat<S> load(const Field& f, std::span<const S> x, int rows, int cols) {
  auto v = f.eval<S>(x);
  return SMat<S>::from_span(rows, cols, std::span<const S>(v));
}

template <class S>
double value_residual_square(const SMat<S>& a) {
  const int n = a.rows();
  double r = 0.0;
  SMat<S> sq = a * a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r = std::max(r, std::abs(value_of(sq(i, j)) + (i == j ? 1.0 : 0.0)));
  return r;
}

template <class S>
SMat<S> b_block(const SMat<S>& bmap, double sign) {
  const int m = bmap.rows();
  SMat<S> r = SMat<S>::identity(2 * m);
  r.set_block(m, 0, sign * bmap);
  return r;
}

// (J, G) of the bihermitian dictionary from maps I+, I-, g and the flat map of b.
template <class S>
void gk_blocks(const SMat<S>& ip, const SMat<S>& im, const SMat<S>& g, const SMat<S>& bmap, SMat<S>* j,
               SMat<S>* gm) {
  const int m = g.rows();
  SMat<S> ginv = inverse(g);
  SMat<S> mid(2 * m, 2 * m);
  mid.set_block(0, 0, ip + im);
  mid.set_block(0, m, (ip - im) * ginv);
  mid.set_block(m, 0, g * ip - g * im);
  mid.set_block(m, m, -(ip.transpose() + im.transpose()));
  SMat<S> gmid(2 * m, 2 * m);
  gmid.set_block(0, m, ginv);
  gmid.set_block(m, 0, g);
  SMat<S> bp = b_block(bmap, 1.0);
  SMat<S> bm = b_block(bmap, -1.0);
  if (j) *j = 0.5 * (bp * mid * bm);
  if (gm) *gm = bp * gmid * bm;
}

SMat<double> to_smat(const Eigen::MatrixXd& a) {
  SMat<double> r(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r(i, j) = a(i, j);
  return r;
}

Eigen::MatrixXd to_eigen(const SMat<double>& a) {
  Eigen::MatrixXd r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  return r;
}

void require_square(const MatrixField& a, int n, const char* what) {
  if (a.rows() != n || a.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected " + std::to_string(n) + "x" +
                                                  std::to_string(n) + " matrix field");
}

template <class S>
bool spd_value(const SMat<S>& g) {
  const int m = g.rows();
  Eigen::MatrixXd v(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) v(i, j) = value_of(g(i, j));
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, v.cwiseAbs().maxCoeff())) return false;
  Eigen::LLT<Eigen::MatrixXd> llt(v);
  return llt.info() == Eigen::Success;
}

MatrixField product_field(const MatrixField& a, const MatrixField& b) {
  const int n = a.rows();
  return MatrixField(Field::make(
      FieldShape::matrix(a.dim(), n, b.cols()),
      [a, b, n](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        (load<S>(a, x, n, a.cols()) * load<S>(b, x, b.rows(), b.cols())).copy_to(out);
      },
      std::min(a.order(), b.order())));
}

Eigen::VectorXd unit(int n, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace

StructureField::StructureField(MatrixField f, StructureKind kind) : MatrixField(std::move(f)), kind_(kind) {
  if (valid() && (rows() != 2 * dim() || cols() != 2 * dim()))
    throw Error(ErrorCode::DimensionMismatch, "structure field must be 2m x 2m");
}

GCStructureField from_symplectic(const FormField& omega, double degeneracy_tol) {
  if (omega.degree() != 2) throw Error(ErrorCode::InvalidInput, "symplectic form must be a 2-form");
  const int m = omega.dim();
  return GCStructureField(MatrixField(Field::make(
      FieldShape::matrix(m, 2 * m, 2 * m),
      [omega, m, degeneracy_tol](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        SMat<S> w = load<S>(omega, x, m, m).transpose();
        SMat<S> winv;
        try {
          winv = inverse(w, degeneracy_tol);
        } catch (const std::domain_error&) {
          throw Error(ErrorCode::Degenerate, "degenerate omega");
        }
        SMat<S> j(2 * m, 2 * m);
        j.set_block(0, m, -winv);
        j.set_block(m, 0, w);
        j.copy_to(out);
      },
      omega.order())));
}

GCStructureField from_complex(const MatrixField& i) {
  const int m = i.dim();
  require_square(i, m, "complex structure");
  return GCStructureField(MatrixField(Field::make(
      FieldShape::matrix(m, 2 * m, 2 * m),
      [i, m](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        SMat<S> a = load<S>(i, x, m, m);
        if (value_residual_square(a) > 1e-8) throw Error(ErrorCode::InvalidInput, "I^2 != -Id");
        SMat<S> j(2 * m, 2 * m);
        j.set_block(0, 0, -a);
        j.set_block(m, m, a.transpose());
        j.copy_to(out);
      },
      i.order())));
}

GMetricField metric_from(const MatrixField& g, const FormField& b) {
  const int m = g.dim();
  require_square(g, m, "metric");
  if (b.degree() != 2 || b.dim() != m) throw Error(ErrorCode::DimensionMismatch, "b must be a 2-form on the chart");
  return GMetricField(MatrixField(Field::make(
      FieldShape::matrix(m, 2 * m, 2 * m),
      [g, b, m](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        SMat<S> gm = load<S>(g, x, m, m);
        if (!spd_value(gm)) throw Error(ErrorCode::InvalidInput, "metric is not positive definite");
        SMat<S> bmap = load<S>(b, x, m, m).transpose();
        SMat<S> ginv = inverse(gm);
        SMat<S> mid(2 * m, 2 * m);
        mid.set_block(0, m, ginv);
        mid.set_block(m, 0, gm);
        (b_block(bmap, 1.0) * mid * b_block(bmap, -1.0)).copy_to(out);
      },
      std::min(g.order(), b.order()))));
}

GMetricField metric_from(const MatrixField& g) { return metric_from(g, zero_form(g.dim(), 2)); }

GKFields gk_from_bihermitian(const BihermitianData& d) {
  const int m = d.chart_dim();
  require_square(d.i_plus, m, "I+");
  require_square(d.i_minus, m, "I-");
  require_square(d.g, m, "g");
  const int order = std::min({d.i_plus.order(), d.i_minus.order(), d.g.order(), d.b.order()});
  auto make = [&](bool want_j, bool want_prime) {
    return MatrixField(Field::make(
        FieldShape::matrix(m, 2 * m, 2 * m),
        [d, m, want_j, want_prime](auto x, auto out) {
          using S = typename decltype(out)::value_type;
          SMat<S> ip = load<S>(d.i_plus, x, m, m);
          SMat<S> im = load<S>(d.i_minus, x, m, m);
          SMat<S> g = load<S>(d.g, x, m, m);
          if (value_residual_square(ip) > 1e-8 || value_residual_square(im) > 1e-8)
            throw Error(ErrorCode::InvalidInput, "I+- must square to -Id");
          if (!spd_value(g)) throw Error(ErrorCode::InvalidInput, "metric is not positive definite");
          SMat<S> bmap = load<S>(d.b, x, m, m).transpose();
          SMat<S> j;
          SMat<S> gm;
          gk_blocks(ip, im, g, bmap, &j, &gm);
          if (want_prime) (j * gm).copy_to(out);
          else if (want_j) j.copy_to(out);
          else gm.copy_to(out);
        },
        order));
  };
  return {GCStructureField(make(true, false)), GCStructureField(make(false, true)), GMetricField(make(false, false))};
}

GKMatrices gk_from_bihermitian(const BihermitianPoint& d) {
  SMat<double> j;
  SMat<double> gm;
  gk_blocks(to_smat(d.i_plus), to_smat(d.i_minus), to_smat(d.g), to_smat(d.b.transpose()), &j, &gm);
  GKMatrices out;
  out.j = to_eigen(j);
  out.g = to_eigen(gm);
  out.j_prime = out.j * out.g;
  return out;
}

BihermitianPoint bihermitian_at(const BihermitianData& d, const Eigen::VectorXd& p) {
  const int m = d.chart_dim();
  BihermitianPoint out;
  out.i_plus = d.i_plus.matrix_at(p);
  out.i_minus = d.i_minus.matrix_at(p);
  out.g = d.g.matrix_at(p);
  Eigen::VectorXd bv = d.b.at(p);
  out.b = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(bv.data(), m, m);
  return out;
}

MetricSplitting metric_eigenspaces(const Eigen::MatrixXd& g, double cluster_tol) {
  const auto n = g.rows();
  const int m = static_cast<int>(n / 2);
  const Eigen::MatrixXd q = FiberMetric::standard(m).pairing_matrix;
  Eigen::MatrixXd qg = q * g;
  qg = 0.5 * (qg + qg.transpose());
  // Q v = (1/s) QG v for G v = s v; QG is the positive definite side.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(q, qg);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "generalized metric eigen-decomposition failed");
  const double scale = std::max(1.0, qg.norm());
  std::vector<Eigen::VectorXd> plus;
  std::vector<Eigen::VectorXd> minus;
  for (Eigen::Index k = 0; k < n; ++k) {
    double lam = es.eigenvalues()(k);
    double dev = std::abs(std::abs(lam) - 1.0);
    if (dev > cluster_tol * scale)
      throw Error(ErrorCode::EigenFailure, "generalized metric eigenvalue " + std::to_string(lam) + " is not +-1");
    (lam > 0 ? plus : minus).push_back(es.eigenvectors().col(k));
  }
  MetricSplitting s;
  s.c_plus = Subspace::span(std::span<const Eigen::VectorXd>(plus), static_cast<int>(n));
  s.c_minus = Subspace::span(std::span<const Eigen::VectorXd>(minus), static_cast<int>(n));
  if (s.c_plus.dim() != m || s.c_minus.dim() != m)
    throw Error(ErrorCode::EigenFailure, "generalized metric eigenspaces have the wrong dimension");
  return s;
}

BihermitianPoint bihermitian_from_gk(const Eigen::MatrixXd& j, const Eigen::MatrixXd& g, double cluster_tol) {
  const int m = static_cast<int>(g.rows() / 2);
  MetricSplitting s = metric_eigenspaces(g, cluster_tol);
  auto graph_map = [m](const Subspace& c) -> Eigen::MatrixXd {
    Eigen::MatrixXd top = c.basis().topRows(m);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(top);
    if (!lu.isInvertible()) throw Error(ErrorCode::Degenerate, "eigenspace of G meets T*M");
    return c.basis().bottomRows(m) * lu.inverse();
  };
  Eigen::MatrixXd ap = graph_map(s.c_plus);
  Eigen::MatrixXd am = graph_map(s.c_minus);
  auto restrict_to = [&](const Eigen::MatrixXd& a) -> Eigen::MatrixXd {
    Eigen::MatrixXd sec(2 * m, m);
    sec << Eigen::MatrixXd::Identity(m, m), a;
    return (j * sec).topRows(m);
  };
  BihermitianPoint out;
  out.g = 0.5 * (ap - am);
  out.b = (0.5 * (ap + am)).transpose();
  out.i_plus = restrict_to(ap);
  out.i_minus = restrict_to(am);
  return out;
}

ComplexSubspace eigenbundle(const Eigen::MatrixXd& j, double tol) {
  const auto n = j.rows();
  if (square_residual(j, -1.0) > 1e-8)
    throw Error(ErrorCode::EigenFailure, "J^2 != -Id; eigenbundle undefined");
  Eigen::MatrixXcd p = 0.5 * (Eigen::MatrixXcd::Identity(n, n) - cplx(0.0, 1.0) * j.cast<cplx>());
  ComplexSubspace l = ComplexSubspace::span(p, tol);
  if (2 * l.dim() != n) throw Error(ErrorCode::EigenFailure, "+i eigenspace has the wrong dimension");
  return l;
}

ComplexSubspace eigenbundle(const GCStructureField& j, const Eigen::VectorXd& p) {
  return eigenbundle(j.matrix_at(p));
}

DiracField graph_of_two_form(const FormField& omega) {
  const int m = omega.dim();
  DiracField l;
  l.re = MatrixField(Field::make(
      FieldShape::matrix(m, 2 * m, 2 * m),
      [omega, m](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        SMat<S> p(2 * m, 2 * m);
        p.set_block(0, 0, SMat<S>::identity(m));
        p.set_block(m, 0, load<S>(omega, x, m, m).transpose());
        p.copy_to(out);
      },
      omega.order()));
  return l;
}

DiracField graph_of_bivector(const MatrixField& pi) {
  const int m = pi.dim();
  require_square(pi, m, "bivector");
  DiracField l;
  l.re = MatrixField(Field::make(
      FieldShape::matrix(m, 2 * m, 2 * m),
      [pi, m](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        SMat<S> p(2 * m, 2 * m);
        p.set_block(0, m, load<S>(pi, x, m, m).transpose());
        p.set_block(m, m, SMat<S>::identity(m));
        p.copy_to(out);
      },
      pi.order()));
  return l;
}

DiracField eigenbundle_field(const GCStructureField& j) {
  const int m = j.dim();
  DiracField l;
  l.re = constant_matrix(m, 0.5 * Eigen::MatrixXd::Identity(2 * m, 2 * m));
  l.im = MatrixField(Field::make(
      FieldShape::matrix(m, 2 * m, 2 * m),
      [j](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        j.eval<S>(x, out);
        for (auto& v : out) v = -0.5 * v;
      },
      j.order()));
  return l;
}

double integrability_residual(const DiracField& l, const FormField& h, const Eigen::VectorXd& p) {
  const int m = l.chart_dim();
  const int n = 2 * m;
  std::vector<SectionField> re;
  std::vector<SectionField> im;
  std::vector<Eigen::VectorXd> re_at;
  std::vector<Eigen::VectorXd> im_at;
  for (int a = 0; a < n; ++a) {
    auto c = constant_section(unit(n, a));
    re.push_back(apply(l.re, c));
    re_at.push_back(re.back().at(p));
    if (l.is_complex()) {
      im.push_back(apply(l.im, c));
      im_at.push_back(im.back().at(p));
    }
  }
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Eigen::VectorXd br_re = courant_bracket_at(re[sz(a)], re[sz(b)], h, p);
      Eigen::VectorXd br_im = Eigen::VectorXd::Zero(n);
      if (l.is_complex()) {
        br_re -= courant_bracket_at(im[sz(a)], im[sz(b)], h, p);
        br_im = courant_bracket_at(re[sz(a)], im[sz(b)], h, p) + courant_bracket_at(im[sz(a)], re[sz(b)], h, p);
      }
      for (int c = 0; c < n; ++c) {
        double vr = fiber_pairing(br_re, re_at[sz(c)]);
        double vi = 0.0;
        if (l.is_complex()) {
          vr -= fiber_pairing(br_im, im_at[sz(c)]);
          vi = fiber_pairing(br_re, im_at[sz(c)]) + fiber_pairing(br_im, re_at[sz(c)]);
        }
        worst = std::max(worst, std::hypot(vr, vi));
      }
    }
  }
  return worst;
}

double integrability_residual(const GCStructureField& j, const FormField& h, const Eigen::VectorXd& p) {
  const int n = 2 * j.dim();
  const Eigen::MatrixXd jp = j.matrix_at(p);
  std::vector<SectionField> e;
  std::vector<SectionField> je;
  for (int a = 0; a < n; ++a) {
    e.push_back(constant_section(unit(n, a)));
    je.push_back(apply(j, e.back()));
  }
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Eigen::VectorXd nij = courant_bracket_at(je[sz(a)], je[sz(b)], h, p) -
                            courant_bracket_at(e[sz(a)], e[sz(b)], h, p) -
                            jp * (courant_bracket_at(je[sz(a)], e[sz(b)], h, p) +
                                  courant_bracket_at(e[sz(a)], je[sz(b)], h, p));
      worst = std::max(worst, nij.norm());
    }
  }
  return worst;
}

double square_residual(const Eigen::MatrixXd& a, double sign) {
  return (a * a - sign * Eigen::MatrixXd::Identity(a.rows(), a.cols())).norm();
}

double orthogonality_residual(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd q = FiberMetric::standard(static_cast<int>(a.rows() / 2)).pairing_matrix;
  return (a.transpose() * q * a - q).norm();
}

double metric_positivity(const Eigen::MatrixXd& g) {
  const Eigen::MatrixXd q = FiberMetric::standard(static_cast<int>(g.rows() / 2)).pairing_matrix;
  Eigen::MatrixXd qg = q * g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (qg + qg.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

GKReport check_gk(const GCStructureField& j, const GMetricField& g, const FormField& h,
                  std::span<const Eigen::VectorXd> points, double tol) {
  GCStructureField jprime(product_field(j, g));
  GKReport r;
  r.metric_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    Eigen::MatrixXd jm = j.matrix_at(p);
    Eigen::MatrixXd gm = g.matrix_at(p);
    r.j_square = std::max(r.j_square, square_residual(jm, -1.0));
    r.j_orthogonal = std::max(r.j_orthogonal, orthogonality_residual(jm));
    r.commutator = std::max(r.commutator, (jm * gm - gm * jm).norm());
    r.j_prime_square = std::max(r.j_prime_square, square_residual(jm * gm, -1.0));
    r.j_integrability = std::max(r.j_integrability, integrability_residual(j, h, p));
    r.j_prime_integrability = std::max(r.j_prime_integrability, integrability_residual(jprime, h, p));
    r.metric_min_eigenvalue = std::min(r.metric_min_eigenvalue, metric_positivity(gm));
  }
  r.pass = r.j_square < tol && r.j_orthogonal < tol && r.commutator < tol && r.j_prime_square < tol &&
           r.j_integrability < tol && r.j_prime_integrability < tol && r.metric_min_eigenvalue > 0.0;
  return r;
}

GHKReport check_ghk(const GCStructureField& j1, const GCStructureField& j2, const GCStructureField& j3,
                    const GMetricField& g, const FormField& h, std::span<const Eigen::VectorXd> points, double tol) {
  GHKReport r;
  for (const auto& p : points) {
    Eigen::MatrixXd a = j1.matrix_at(p);
    Eigen::MatrixXd b = j2.matrix_at(p);
    Eigen::MatrixXd c = j3.matrix_at(p);
    r.quaternion = std::max(r.quaternion, (a * b - c).norm());
    r.anticommutator = std::max(r.anticommutator, (a * b + b * a).norm());
  }
  r.pass = r.quaternion < tol && r.anticommutator < tol;
  for (const auto* j : {&j1, &j2, &j3}) {
    r.pairs.push_back(check_gk(*j, g, h, points, tol));
    r.pass = r.pass && r.pairs.back().pass;
  }
  return r;
}

FormField kaehler_form(const MatrixField& g, const MatrixField& i) {
  const int m = g.dim();
  require_square(g, m, "metric");
  require_square(i, m, "complex structure");
  return FormField(Field::make(
      FieldShape::form(m, 2),
      [g, i, m](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        (load<S>(g, x, m, m) * load<S>(i, x, m, m)).transpose().copy_to(out);
      },
      std::min(g.order(), i.order())));
}

double dc_form_residual(const BihermitianData& d, const Eigen::VectorXd& p) {
  const int m = d.chart_dim();
  Eigen::VectorXd db = exterior_derivative(d.b).at(p);
  auto dc = [&](const MatrixField& i) {
    Eigen::VectorXd dw = exterior_derivative(kaehler_form(d.g, i)).at(p);
    Eigen::MatrixXd im = i.matrix_at(p);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dw.size());
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          double w = dw((a * m + b) * m + c);
          if (w == 0.0) continue;
          for (int x = 0; x < m; ++x) {
            double wx = w * im(a, x);
            if (wx == 0.0) continue;
            for (int y = 0; y < m; ++y) {
              double wxy = wx * im(b, y);
              if (wxy == 0.0) continue;
              for (int z = 0; z < m; ++z) out((x * m + y) * m + z) -= wxy * im(c, z);
            }
          }
        }
    return out;
  };
  Eigen::VectorXd minus = dc(d.i_minus) - db;
  Eigen::VectorXd plus = dc(d.i_plus) + db;
  return std::max(minus.cwiseAbs().maxCoeff(), plus.cwiseAbs().maxCoeff());
}

}  // namespace gkq
