// SPDX-License-Identifier: Apache-2.0
#include "gkq/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gkq/builders.hpp"
#include "gkq/calculus.hpp"

namespace gkq {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

Eigen::VectorXd unit(int n, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(i) = 1.0;
  return v;
}

Subspace coordinate_block(int m, int first) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * m, m);
  b.block(first, 0, m, m) = Eigen::MatrixXd::Identity(m, m);
  return Subspace::span(b);
}

double min_sym_eigenvalue(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

double LieAlgebraData::c(int i, int j, int k) const {
  if (structure_constants.empty()) return 0.0;
  return structure_constants[sz((i * dim_g + j) * dim_g + k)];
}

Eigen::VectorXd LieAlgebraData::bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(dim_g);
  for (int i = 0; i < dim_g; ++i)
    for (int j = 0; j < dim_g; ++j) {
      if (u(i) == 0.0 || v(j) == 0.0) continue;
      for (int k = 0; k < dim_g; ++k) r(k) += u(i) * v(j) * c(i, j, k);
    }
  return r;
}

LieAlgebraData LieAlgebraData::abelian(std::vector<VectorField> psi) {
  LieAlgebraData l;
  l.dim_g = static_cast<int>(psi.size());
  l.structure_constants.assign(sz(l.dim_g * l.dim_g * l.dim_g), 0.0);
  l.psi = std::move(psi);
  return l;
}

Eigen::VectorXd GModuleData::act(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(dim_h);
  for (std::size_t i = 0; i < rho.size(); ++i) r += u(static_cast<Eigen::Index>(i)) * (rho[i] * w);
  return r;
}

GModuleData GModuleData::trivial(int dim_g, int dim_h) {
  GModuleData mod;
  mod.dim_h = dim_h;
  mod.rho.assign(sz(dim_g), Eigen::MatrixXd::Zero(dim_h, dim_h));
  return mod;
}

SectionField ReductionData::lifted_generator(int i) const {
  SectionField s = vector_section(lie.psi[sz(i)]);
  if (!nu.empty()) s = add(s, exact_section(nu[sz(i)]));
  if (!theta.empty()) s = add(s, form_section(theta[sz(i)]));
  return s;
}

Eigen::VectorXd ReductionData::mu_at(const Eigen::VectorXd& p) const {
  Eigen::VectorXd v(module.dim_h);
  for (int j = 0; j < module.dim_h; ++j) v(j) = mu[sz(j)].at(p)(0);
  return v;
}

Eigen::MatrixXd ReductionData::dmu_at(const Eigen::VectorXd& p) const {
  Eigen::MatrixXd d(module.dim_h, dim_m);
  for (int j = 0; j < module.dim_h; ++j) d.row(j) = jacobian_at(mu[sz(j)], p).row(0);
  return d;
}

InvariantResiduals check_invariants(const ReductionData& rd, std::span<const Eigen::VectorXd> points) {
  InvariantResiduals r;
  const int n = rd.lie.dim_g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int t = 0; t < n; ++t) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l)
            acc += rd.lie.c(i, j, l) * rd.lie.c(l, k, t) + rd.lie.c(j, k, l) * rd.lie.c(l, i, t) +
                   rd.lie.c(k, i, l) * rd.lie.c(l, j, t);
          r.jacobi = std::max(r.jacobi, std::abs(acc));
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(rd.module.dim_h, rd.module.dim_h);
      for (int k = 0; k < n; ++k) lhs += rd.lie.c(i, j, k) * rd.module.rho[sz(k)];
      Eigen::MatrixXd rhs = rd.module.rho[sz(i)] * rd.module.rho[sz(j)] - rd.module.rho[sz(j)] * rd.module.rho[sz(i)];
      if (lhs.size() > 0) r.representation = std::max(r.representation, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  std::vector<SectionField> gens;
  for (int i = 0; i < n; ++i) gens.push_back(rd.lifted_generator(i));
  for (const auto& p : points) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Eigen::VectorXd lhs = lie_bracket(rd.lie.psi[sz(i)], rd.lie.psi[sz(j)]).at(p);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rd.dim_m);
        for (int k = 0; k < n; ++k) rhs += rd.lie.c(i, j, k) * rd.lie.psi[sz(k)].at(p);
        r.homomorphism = std::max(r.homomorphism, (lhs - rhs).norm());
        r.isotropy = std::max(r.isotropy, std::abs(pairing(gens[sz(i)], gens[sz(j)], p)));
      }
    if (rd.module.dim_h == 0) continue;
    Eigen::VectorXd mu = rd.mu_at(p);
    Eigen::MatrixXd dmu = rd.dmu_at(p);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd x = rd.lie.psi[sz(i)].at(p);
      Eigen::VectorXd lhs = dmu * x;
      Eigen::VectorXd rhs = rd.module.rho[sz(i)].transpose() * mu;
      r.equivariance = std::max(r.equivariance, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return r;
}

AlgebraElement hemisemi_bracket(const AlgebraElement& a1, const AlgebraElement& a2, const LieAlgebraData& lie,
                                const GModuleData& module) {
  if (a1.u.size() != lie.dim_g || a2.u.size() != lie.dim_g || a1.w.size() != module.dim_h ||
      a2.w.size() != module.dim_h)
    throw Error(ErrorCode::DimensionMismatch, "hemisemidirect bracket: element dimensions");
  return {lie.bracket(a1.u, a2.u), module.act(a1.u, a2.w)};
}

SectionField extended_action(const ReductionData& rd, const AlgebraElement& a) {
  if (a.u.size() != rd.lie.dim_g || a.w.size() != rd.module.dim_h)
    throw Error(ErrorCode::DimensionMismatch, "extended action: element dimensions");
  const int m = rd.dim_m;
  std::vector<double> u(a.u.data(), a.u.data() + a.u.size());
  std::vector<double> w(a.w.data(), a.w.data() + a.w.size());
  int order = 3;
  for (const auto& f : rd.lie.psi) order = std::min(order, f.order());
  for (const auto& f : rd.nu) order = std::min(order, f.order() - 1);
  for (const auto& f : rd.mu) order = std::min(order, f.order() - 1);
  for (const auto& f : rd.theta) order = std::min(order, f.order());
  return SectionField(Field::make<2>(
      FieldShape::section(m),
      [rd, u, w, m](auto x, auto out) {
        using S = typename decltype(out)::value_type;
        for (auto& v : out) v = 0.0;
        std::vector<S> val;
        std::vector<S> jac;
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (u[i] == 0.0) continue;
          auto xv = rd.lie.psi[i].template eval<S>(x);
          for (int c = 0; c < m; ++c) out[sz(c)] = out[sz(c)] + u[i] * xv[sz(c)];
          if (!rd.theta.empty()) {
            auto tv = rd.theta[i].template eval<S>(x);
            for (int c = 0; c < m; ++c) out[sz(m + c)] = out[sz(m + c)] + u[i] * tv[sz(c)];
          }
          if (rd.nu.empty()) continue;
          jet<S>(rd.nu[i], x, val, jac);
          for (int c = 0; c < m; ++c) out[sz(m + c)] = out[sz(m + c)] + u[i] * jac[sz(c)];
        }
        for (std::size_t j = 0; j < w.size(); ++j) {
          if (w[j] == 0.0) continue;
          jet<S>(rd.mu[j], x, val, jac);
          for (int c = 0; c < m; ++c) out[sz(m + c)] = out[sz(m + c)] + w[j] * jac[sz(c)];
        }
      },
      order));
}

Subspace K_at(const ReductionData& rd, const Eigen::VectorXd& p, double rank_tol) {
  const int m = rd.dim_m;
  const int ng = rd.lie.dim_g;
  const int nh = rd.module.dim_h;
  Eigen::MatrixXd gens = Eigen::MatrixXd::Zero(2 * m, ng + nh);
  for (int i = 0; i < ng; ++i) gens.col(i) = rd.lifted_generator(i).at(p);
  if (nh > 0) gens.block(m, ng, m, nh) = rd.dmu_at(p).transpose();
  return Subspace::span(gens, rank_tol);
}

Subspace KG_at(const Subspace& k, const Eigen::MatrixXd& g) {
  const FiberMetric q = FiberMetric::standard(static_cast<int>(g.rows() / 2));
  Subspace kperp = perp_pairing(k, q);
  return intersect(image<double>(g, kperp), kperp);
}

Subspace KG_at(const ReductionData& rd, const GMetricField& g, const Eigen::VectorXd& p, double rank_tol) {
  return KG_at(K_at(rd, p, rank_tol), g.matrix_at(p));
}

Eigen::VectorXd project_to_level(const ReductionData& rd, const Eigen::VectorXd& p0, double level_tol, int max_iter) {
  if (rd.module.dim_h == 0) return p0;
  Eigen::VectorXd p = p0;
  for (int it = 0; it <= max_iter; ++it) {
    Eigen::VectorXd mu = rd.mu_at(p);
    Eigen::MatrixXd d = rd.dmu_at(p);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    const auto& sv = svd.singularValues();
    if (sv.size() < rd.module.dim_h || sv(sv.size() - 1) <= 1e-10 * std::max(1.0, sv(0)))
      throw Error(ErrorCode::SingularLevel, "singular level: d mu is rank deficient");
    if (mu.cwiseAbs().maxCoeff() < level_tol) return p;
    if (it == max_iter) break;
    Eigen::MatrixXd ddt = d * d.transpose();
    p -= d.transpose() * ddt.ldlt().solve(mu);
  }
  throw Error(ErrorCode::NoConvergence,
              "no convergence: level-set projection did not converge in " + std::to_string(max_iter) + " iterations");
}

const char* to_string(ConditionId id) {
  switch (id) {
    case ConditionId::JKK: return "JKK";
    case ConditionId::RED: return "RED";
    case ConditionId::JKG: return "JKG";
    case ConditionId::EASY: return "EASY";
  }
  return "?";
}

ConditionResult check_condition(ConditionId id, const Eigen::MatrixXd& j, const Eigen::MatrixXd* g,
                                const Subspace& k, double angle_tol) {
  const FiberMetric q = FiberMetric::standard(static_cast<int>(j.rows() / 2));
  auto eq = [&](const Subspace& s) {
    Comparison c = subspace_equal(image<double>(j, s), s, angle_tol);
    return ConditionResult{c.equal, c.angle};
  };
  switch (id) {
    case ConditionId::JKK: return eq(k);
    case ConditionId::RED: {
      Subspace a = intersect(image<double>(j, k), perp_pairing(k, q));
      double ang = inclusion_angle(a, k);
      return {ang < angle_tol, ang};
    }
    case ConditionId::JKG:
    case ConditionId::EASY: {
      if (!g) throw Error(ErrorCode::InvalidInput, std::string(to_string(id)) + " needs a generalized metric");
      if (id == ConditionId::JKG) return eq(KG_at(k, *g));
      return eq(sum(k, image<double>(*g, k)));
    }
  }
  return {};
}

ConditionResult check_condition(ConditionId id, const ReductionData& rd, const GCStructureField& j,
                                const GMetricField* g, const Eigen::VectorXd& p, double angle_tol, double rank_tol) {
  Eigen::MatrixXd gm;
  if (g) gm = g->matrix_at(p);
  return check_condition(id, j.matrix_at(p), g ? &gm : nullptr, K_at(rd, p, rank_tol), angle_tol);
}

double invariance_residual(const MatrixField& s, const ReductionData& rd, const FormField& h,
                           const Eigen::VectorXd& p) {
  const int n = 2 * rd.dim_m;
  const Eigen::MatrixXd sp = s.matrix_at(p);
  double worst = 0.0;
  for (int i = 0; i < rd.lie.dim_g; ++i) {
    SectionField gen = rd.lifted_generator(i);
    for (int a = 0; a < n; ++a) {
      SectionField e = constant_section(unit(n, a));
      Eigen::VectorXd lhs = courant_bracket_at(gen, apply(s, e), h, p);
      Eigen::VectorXd rhs = sp * courant_bracket_at(gen, e, h, p);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

ComplexSubspace dirac_reduce_at(const ComplexSubspace& l, const Subspace& k, const Subspace& kg) {
  const FiberMetric q = FiberMetric::standard(k.ambient_dim() / 2);
  ComplexSubspace kc = complexify(k);
  ComplexSubspace kperp = complexify(perp_pairing(k, q));
  return intersect(sum(intersect(l, kperp), kc), complexify(kg));
}

FrameOperator frame_operator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& frame, const Eigen::MatrixXd& k) {
  const auto d = frame.cols();
  Eigen::MatrixXd m(frame.rows(), d + k.cols());
  m << frame, k;
  Eigen::MatrixXd rhs = a * frame;
  Eigen::MatrixXd coef = m.completeOrthogonalDecomposition().solve(rhs);
  FrameOperator out;
  out.x = coef.topRows(d);
  out.along_k = k.cols() > 0 ? (k * coef.bottomRows(k.cols())).norm() : 0.0;
  out.leakage = (m * coef - rhs).norm();
  return out;
}

const char* to_string(ReductionMode mode) {
  switch (mode) {
    case ReductionMode::J: return "J";
    case ReductionMode::JG: return "JG";
    case ReductionMode::GK: return "GK";
    case ReductionMode::GHK: return "GHK";
  }
  return "?";
}

const Eigen::MatrixXd* ReducedFiberReport::find_reduced(const std::string& name) const {
  for (const auto& r : reduced)
    if (r.name == name) return &r.value;
  return nullptr;
}

const Eigen::MatrixXd* ReducedFiberReport::find_split(const std::string& name) const {
  for (const auto& r : reduced_split)
    if (r.name == name) return &r.value;
  return nullptr;
}

const NamedCondition* ReducedFiberReport::find_condition(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

double ReducedFiberReport::residual(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r.value;
  return std::nan("");
}

namespace {

// Tangent half h (normalized by dp when given) and covector half eta dual to h.
Eigen::MatrixXd split_frame(const Subspace& tang, const Subspace& cot, int m, const Eigen::MatrixXd* dp) {
  Eigen::MatrixXd h = tang.basis().topRows(m);
  if (dp) {
    Eigen::MatrixXd dh = *dp * h;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(dh);
    if (dh.rows() != dh.cols() || !lu.isInvertible())
      throw Error(ErrorCode::Degenerate, "dp is not an isomorphism on the horizontal space");
    h = h * lu.inverse();
  }
  Eigen::MatrixXd e = cot.basis().bottomRows(m);
  Eigen::MatrixXd he = h.transpose() * e;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(he);
  if (he.rows() != he.cols() || !lu.isInvertible())
    throw Error(ErrorCode::Degenerate, "tangent and covector halves of K^G are not dual");
  Eigen::MatrixXd eta = e * lu.inverse();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2 * m, h.cols() + eta.cols());
  t.topLeftCorner(m, h.cols()) = h;
  t.bottomRightCorner(m, eta.cols()) = eta;
  return t;
}

int intersection_dim(const ComplexSubspace& l, const Subspace& kperp) {
  return intersect(l, complexify(kperp)).dim();
}

}  // namespace

ReducedFiberReport reduce_at(const ReductionData& rd, const StructureSet& st, const Eigen::VectorXd& p,
                             const Tolerances& tol, const Eigen::MatrixXd* dp) {
  ReducedFiberReport r;
  r.point = p;
  const int m = rd.dim_m;
  const FiberMetric q = FiberMetric::standard(m);
  try {
    if (rd.module.dim_h > 0) r.level_residual = rd.mu_at(p).cwiseAbs().maxCoeff();
    r.k = K_at(rd, p, tol.rank);
    r.dim_k = r.k.dim();
    r.expected_dim_k = rd.lie.dim_g + rd.module.dim_h;
    r.rank_drop = r.dim_k < r.expected_dim_k;

    if (rd.lie.dim_g > 0) {
      Eigen::MatrixXd orbit(m, rd.lie.dim_g);
      for (int i = 0; i < rd.lie.dim_g; ++i) orbit.col(i) = rd.lie.psi[sz(i)].at(p);
      r.free_action = Subspace::span(orbit, tol.rank).dim() == rd.lie.dim_g;
    }
    {
      std::vector<Eigen::VectorXd> gens;
      for (int i = 0; i < rd.lie.dim_g; ++i) gens.push_back(rd.lifted_generator(i).at(p));
      if (rd.module.dim_h > 0) {
        Eigen::MatrixXd dmu = rd.dmu_at(p);
        for (int j = 0; j < rd.module.dim_h; ++j) {
          Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * m);
          v.tail(m) = dmu.row(j).transpose();
          gens.push_back(v);
        }
      }
      for (const auto& a : gens)
        for (const auto& b : gens) r.k_isotropy = std::max(r.k_isotropy, std::abs(fiber_pairing(a, b)));
    }

    const Eigen::MatrixXd gm = st.g.matrix_at(p);
    r.kperp = perp_pairing(r.k, q);
    r.kg = intersect(image<double>(gm, r.kperp), r.kperp);
    r.dim_kperp = r.kperp.dim();
    r.dim_kg = r.kg.dim();
    Subspace tang = intersect(r.kg, coordinate_block(m, 0));
    Subspace cot = intersect(r.kg, coordinate_block(m, m));
    r.dim_kg_tangent = tang.dim();
    r.dim_kg_cotangent = cot.dim();
    r.residuals.push_back({"dims", static_cast<double>(std::abs(r.dim_kperp - (2 * m - r.dim_k)) +
                                                       std::abs(r.dim_kg - (2 * m - 2 * r.dim_k)))});

    std::vector<Eigen::MatrixXd> jm;
    for (const auto& s : st.j) {
      jm.push_back(s.field.matrix_at(p));
      for (ConditionId id : {ConditionId::JKK, ConditionId::RED, ConditionId::JKG, ConditionId::EASY}) {
        ConditionResult c = check_condition(id, jm.back(), &gm, r.k, tol.angle);
        r.conditions.push_back({std::string(to_string(id)) + ":" + s.name, id, s.name, c});
      }
    }

    const ConditionId required = st.mode == ReductionMode::J ? ConditionId::JKK : ConditionId::JKG;
    for (const auto& c : r.conditions)
      if (c.id == required && !c.result.holds)
        throw Error(ErrorCode::ConditionFailure, "condition " + c.name + " fails (angle " +
                                                     std::to_string(c.result.angle) + ")");

    const Eigen::MatrixXd b = r.kg.basis();
    const Eigen::MatrixXd q_red = b.transpose() * q.pairing_matrix * b;
    const Eigen::MatrixXd id_red = Eigen::MatrixXd::Identity(r.dim_kg, r.dim_kg);
    const bool split = r.dim_kg_tangent + r.dim_kg_cotangent == r.dim_kg;
    if (split) r.split_frame = split_frame(tang, cot, m, dp);

    auto reduce_one = [&](const std::string& name, const Eigen::MatrixXd& a) -> Eigen::MatrixXd {
      Eigen::MatrixXd red;
      if (st.mode == ReductionMode::J) {
        FrameOperator fo = frame_operator(a, b, r.k.basis());
        if (fo.leakage > tol.residual)
          throw Error(ErrorCode::NotInvariant, name + " does not preserve K^perp: leakage " + std::to_string(fo.leakage));
        red = fo.x;
      } else {
        red = restrict_operator<double>(a, r.kg, tol.residual);
      }
      r.reduced.push_back({name, red});
      if (split) {
        FrameOperator fs = frame_operator(a, r.split_frame, st.mode == ReductionMode::J ? r.k.basis() : Eigen::MatrixXd(2 * m, 0));
        r.reduced_split.push_back({name, fs.x});
        const int t = r.dim_kg_tangent;
        r.residuals.push_back({name + ".tangent_leak", fs.x.bottomLeftCorner(fs.x.rows() - t, t).norm()});
      }
      return red;
    };

    std::vector<Eigen::MatrixXd> jred;
    for (std::size_t i = 0; i < st.j.size(); ++i) {
      const std::string& name = st.j[i].name;
      jred.push_back(reduce_one(name, jm[i]));
      r.residuals.push_back({name + ".square", (jred.back() * jred.back() + id_red).norm()});
      r.residuals.push_back({name + ".orthogonal", (jred.back().transpose() * q_red * jred.back() - q_red).norm()});
    }

    Eigen::MatrixXd gred;
    if (st.mode != ReductionMode::J) {
      gred = reduce_one("G", gm);
      r.residuals.push_back({"G.square", (gred * gred - id_red).norm()});
      Eigen::MatrixXd qg = b.transpose() * q.pairing_matrix * gm * b;
      r.residuals.push_back({"G.min_eigenvalue", min_sym_eigenvalue(qg)});
      for (std::size_t i = 0; i < st.j.size(); ++i)
        r.residuals.push_back({st.j[i].name + ".commutator", (jred[i] * gred - gred * jred[i]).norm()});
    }
    if (st.mode == ReductionMode::GK) {
      for (std::size_t i = 0; i < st.j.size(); ++i) {
        Eigen::MatrixXd jp = reduce_one(st.j[i].name + "'", jm[i] * gm);
        r.residuals.push_back({st.j[i].name + "'.product", (jp - jred[i] * gred).norm()});
        r.residuals.push_back({st.j[i].name + "'.square", (jp * jp + id_red).norm()});
      }
    }
    if (st.mode == ReductionMode::GHK && jred.size() == 3) {
      r.residuals.push_back({"quaternion", (jred[0] * jred[1] - jred[2]).norm()});
      r.residuals.push_back({"anticommutation", (jred[0] * jred[1] + jred[1] * jred[0]).norm()});
    }

    // Two-path Dirac consistency and reduced eigenbundle properties.
    const Eigen::MatrixXcd bc = b.cast<cplx>();
    std::optional<Eigen::VectorXd> nearby;
    for (std::size_t i = 0; i < st.j.size(); ++i) {
      const std::string& name = st.j[i].name;
      ComplexSubspace l = eigenbundle(jm[i], tol.rank);
      ComplexSubspace lred = dirac_reduce_at(l, r.k, r.kg);
      ComplexSubspace lred_j = ComplexSubspace::span(bc * eigenbundle(jred[i], tol.rank).basis(), tol.rank);
      r.residuals.push_back({name + ".two_path_angle", subspace_equal(lred, lred_j, tol.angle).angle});
      r.residuals.push_back({name + ".lred_isotropy", isotropy_residual(lred, q)});
      r.residuals.push_back({name + ".lred_dim_defect", static_cast<double>(std::abs(2 * lred.dim() - r.dim_kg))});
      r.residuals.push_back({name + ".lred_real_part", static_cast<double>(intersect(lred, conj(lred)).dim())});
      if (st.alt_metric) {
        Subspace kg2 = KG_at(r.k, st.alt_metric->matrix_at(p));
        ComplexSubspace lred2 = dirac_reduce_at(l, r.k, kg2);
        ComplexSubspace kc = complexify(r.k);
        r.residuals.push_back({name + ".aux_metric_angle", subspace_equal(sum(lred, kc), sum(lred2, kc), tol.angle).angle});
      }
      // Rank of L cap K^perp at a nearby level-set point.
      try {
        if (!nearby) {
          Eigen::VectorXd dir = Eigen::VectorXd::LinSpaced(m, 1.0, static_cast<double>(m));
          nearby = project_to_level(rd, p + 1e-3 * dir.normalized(), tol.level);
        }
        Subspace k2 = K_at(rd, *nearby, tol.rank);
        ComplexSubspace l2 = eigenbundle(st.j[i].field.matrix_at(*nearby), tol.rank);
        if (intersection_dim(l, r.kperp) != intersection_dim(l2, perp_pairing(k2, q))) r.rank_unstable = true;
      } catch (const Error&) {
        r.rank_unstable = true;
      }
    }
  } catch (const Error& e) {
    r.ok = false;
    r.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return r;
}

}  // namespace gkq
