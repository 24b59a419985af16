// SPDX-License-Identifier: Apache-2.0
#include "gkq/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gkq/builders.hpp"
#include "gkq/calculus.hpp"

namespace gkq {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

double max_abs_diff(const MatrixXd& a, const MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return kInf;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

VectorXd flow(const VectorField& v, VectorXd x, double t, int steps) {
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    VectorXd k1 = v.at(x);
    VectorXd k2 = v.at(x + 0.5 * h * k1);
    VectorXd k3 = v.at(x + 0.5 * h * k2);
    VectorXd k4 = v.at(x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

std::vector<AlgebraElement> algebra_basis(const ReductionData& rd) {
  std::vector<AlgebraElement> out;
  const int ng = rd.lie.dim_g;
  const int nh = rd.module.dim_h;
  for (int i = 0; i < ng + nh; ++i) {
    AlgebraElement a{VectorXd::Zero(ng), VectorXd::Zero(nh)};
    if (i < ng) a.u(i) = 1.0;
    else a.w(i - ng) = 1.0;
    out.push_back(a);
  }
  return out;
}

struct Context {
  const Scenario& s;
  const RunConfig& c;
  std::vector<AlgebraElement> basis;
  std::vector<SectionField> actions;
};

ReducedFiberReport reduce_with_chart(const Context& ctx, const VectorXd& p) {
  if (ctx.s.oracle) {
    MatrixXd dp = jacobian_at(ctx.s.oracle->submersion, p);
    return reduce_at(ctx.s.rd, ctx.s.structures, p, ctx.c.tol, &dp);
  }
  return reduce_at(ctx.s.rd, ctx.s.structures, p, ctx.c.tol);
}

void add(ReducedFiberReport& r, const std::string& name, double v) { r.residuals.push_back({name, v}); }

void morphism_checks(const Context& ctx, ReducedFiberReport& r, const VectorXd& p) {
  const ReductionData& rd = ctx.s.rd;
  const FormField& h = ctx.s.structures.h;
  VectorXd off = p + 0.1 * VectorXd::LinSpaced(p.size(), 1.0, 2.0);
  VectorXd mu_off = rd.module.dim_h > 0 ? rd.mu_at(off) : VectorXd();
  double morph = 0.0;
  double offlevel = 0.0;
  for (std::size_t a = 0; a < ctx.basis.size(); ++a)
    for (std::size_t b = 0; b < ctx.basis.size(); ++b) {
      AlgebraElement br = hemisemi_bracket(ctx.basis[a], ctx.basis[b], rd.lie, rd.module);
      SectionField rhs = extended_action(rd, br);
      for (const VectorXd* x : std::array<const VectorXd*, 2>{&p, &off}) {
        VectorXd lhs = courant_bracket_at(ctx.actions[a], ctx.actions[b], h, *x);
        morph = std::max(morph, (lhs - rhs.at(*x)).norm());
      }
      double expected = 0.0;
      if (rd.module.dim_h > 0)
        expected = mu_off.dot(rd.module.act(ctx.basis[a].u, ctx.basis[b].w)) +
                   mu_off.dot(rd.module.act(ctx.basis[b].u, ctx.basis[a].w));
      offlevel = std::max(offlevel, std::abs(pairing(ctx.actions[a], ctx.actions[b], off) - expected));
    }
  add(r, "morphism", morph);
  add(r, "offlevel", offlevel);
}

void invariance_checks(const Context& ctx, ReducedFiberReport& r, const VectorXd& p) {
  const StructureSet& st = ctx.s.structures;
  for (const auto& j : st.j) add(r, "invariance." + j.name, invariance_residual(j.field, ctx.s.rd, st.h, p));
  if (st.mode != ReductionMode::J) add(r, "invariance.G", invariance_residual(st.g, ctx.s.rd, st.h, p));
}

void moment_checks(const Context& ctx, ReducedFiberReport& r, const VectorXd& p) {
  const int m = ctx.s.m;
  for (const auto& mc : ctx.s.moments) {
    VectorXd comps = mc.omega.at(p);
    MatrixXd w = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        comps.data(), m, m);
    VectorXd lhs = flat_map(w) * ctx.s.rd.lie.psi[sz(mc.generator)].at(p);
    VectorXd rhs = jacobian_at(ctx.s.rd.mu[sz(mc.component)], p).row(0).transpose();
    add(r, "moment." + mc.name, (lhs - rhs).norm());
  }
}

void oracle_checks(const Context& ctx, ReducedFiberReport& r, const VectorXd& p) {
  if (!ctx.s.oracle || !r.ok) return;
  VectorXd y = ctx.s.oracle->submersion.at(p);
  for (const auto& e : ctx.s.oracle->expected(y)) {
    const MatrixXd* got = r.find_split(e.name);
    add(r, "oracle." + e.name, got ? max_abs_diff(*got, e.value) : kInf);
  }
}

void commutation_check(const Context& ctx, ReducedFiberReport& r, const VectorXd& p) {
  if (!ctx.s.commutation || !r.ok) return;
  if (r.split_frame.size() == 0) {
    add(r, "commutation", kInf);
    return;
  }
  const int m = ctx.s.m;
  const int t = r.dim_kg_tangent;
  auto reduce_complex = [&](const MatrixField& i) {
    MatrixXd im = i.matrix_at(p);
    MatrixXd a = MatrixXd::Zero(2 * m, 2 * m);
    a.topLeftCorner(m, m) = im;
    a.bottomRightCorner(m, m) = -im.transpose();
    FrameOperator fo = frame_operator(a, r.split_frame, MatrixXd(2 * m, 0));
    return std::make_pair(MatrixXd(fo.x.topLeftCorner(t, t)), fo.leakage);
  };
  auto [ip, leak_p] = reduce_complex(ctx.s.commutation->i_plus);
  auto [im, leak_m] = reduce_complex(ctx.s.commutation->i_minus);
  const MatrixXd* gsplit = r.find_split("G");
  const MatrixXd* jsplit = r.find_split(ctx.s.structures.j.front().name);
  if (!gsplit || !jsplit) {
    add(r, "commutation", kInf);
    return;
  }
  BihermitianPoint red{ip, im, gsplit->bottomLeftCorner(t, t), MatrixXd::Zero(t, t)};
  GKMatrices expected = gk_from_bihermitian(red);
  double d = std::max({max_abs_diff(*jsplit, expected.j), max_abs_diff(*gsplit, expected.g), leak_p, leak_m});
  if (const MatrixXd* jp = r.find_split(ctx.s.structures.j.front().name + "'"))
    d = std::max(d, max_abs_diff(*jp, expected.j_prime));
  add(r, "commutation", d);
}

double orbit_delta(const Context& ctx, const ReducedFiberReport& r, const VectorXd& p) {
  const ReductionData& rd = ctx.s.rd;
  VectorXd q = project_to_level(rd, flow(rd.lie.psi.front(), p, 0.5, 20), ctx.c.tol.level);
  ReducedFiberReport r2 = reduce_with_chart(ctx, q);
  if (r2.ok != r.ok || r2.dim_k != r.dim_k || r2.dim_kg != r.dim_kg || r2.dim_kg_tangent != r.dim_kg_tangent ||
      r2.conditions.size() != r.conditions.size())
    return kInf;
  double d = 0.0;
  for (std::size_t i = 0; i < r.conditions.size(); ++i) {
    if (r.conditions[i].result.holds != r2.conditions[i].result.holds) return kInf;
    d = std::max(d, std::abs(r.conditions[i].result.angle - r2.conditions[i].result.angle));
  }
  if (ctx.s.oracle)
    for (const auto& a : r.reduced_split) {
      const MatrixXd* b = r2.find_split(a.name);
      d = std::max(d, b ? max_abs_diff(a.value, *b) : kInf);
    }
  return d;
}

ReducedFiberReport evaluate(const Context& ctx, const VectorXd& p) {
  ReducedFiberReport r = reduce_with_chart(ctx, p);
  try {
    morphism_checks(ctx, r, p);
    invariance_checks(ctx, r, p);
    moment_checks(ctx, r, p);
    oracle_checks(ctx, r, p);
    commutation_check(ctx, r, p);
    if (ctx.c.orbit_check && ctx.s.rd.lie.dim_g > 0 && r.ok) add(r, "orbit_delta", orbit_delta(ctx, r, p));
  } catch (const Error& e) {
    r.ok = false;
    r.error = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

std::vector<VectorXd> sample_points(const Scenario& s, const RunConfig& c) {
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unif(-s.box, s.box);
  std::vector<VectorXd> out;
  const int max_attempts = 200 * c.samples;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < c.samples; ++attempt) {
    VectorXd x(s.m);
    for (int i = 0; i < s.m; ++i) x(i) = unif(rng);
    if (x.norm() < s.min_radius) continue;
    VectorXd p;
    try {
      p = project_to_level(s.rd, x, c.tol.level);
    } catch (const Error&) {
      continue;
    }
    if (p.norm() < s.min_radius || p.cwiseAbs().maxCoeff() > 4.0 * s.box) continue;
    out.push_back(p);
  }
  return out;
}

bool is_min_aggregate(const std::string& name) {
  return name.size() >= 14 && name.compare(name.size() - 14, 14, "min_eigenvalue") == 0;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

class CheckBuilder {
 public:
  explicit CheckBuilder(std::vector<Check>& out) : out_(out) {}
  void less(const std::string& name, double v, double thr) { out_.push_back({name, v < thr, v, thr, "<"}); }
  void greater(const std::string& name, double v, double thr) { out_.push_back({name, v > thr, v, thr, ">"}); }
  void zero(const std::string& name, double v) { out_.push_back({name, v == 0.0, v, 0.0, "=="}); }

 private:
  std::vector<Check>& out_;
};

void aggregate(RunReport& rep) {
  std::map<std::string, double> agg;
  for (const auto& r : rep.points)
    for (const auto& v : r.residuals) {
      auto it = agg.find(v.name);
      double x = std::isnan(v.value) ? kInf : v.value;
      if (it == agg.end()) agg[v.name] = x;
      else it->second = is_min_aggregate(v.name) ? std::min(it->second, x) : std::max(it->second, x);
    }
  for (const auto& [k, v] : agg) rep.aggregates.push_back({k, v});
}

// Max aggregate over names matching `pred`; -inf when none.
template <class Pred>
double max_matching(const RunReport& rep, Pred pred) {
  double v = -kInf;
  for (const auto& a : rep.aggregates)
    if (pred(a.name)) v = std::max(v, a.value);
  return v;
}

void build_checks(const Scenario& s, RunReport& rep) {
  const RunConfig& c = rep.config;
  CheckBuilder cb(rep.checks);
  int failed = 0, rank_drop = 0, not_free = 0, unstable = 0, kg_dim = 0;
  double level = 0.0, iso = 0.0;
  for (const auto& r : rep.points) {
    if (!r.ok) ++failed;
    if (r.rank_drop) ++rank_drop;
    if (!r.free_action) ++not_free;
    if (r.rank_unstable) ++unstable;
    if (s.expected_kg_tangent >= 0 && r.dim_kg_tangent != s.expected_kg_tangent) ++kg_dim;
    level = std::max(level, r.level_residual);
    iso = std::max(iso, r.k_isotropy);
  }
  cb.zero("sampling", static_cast<double>(c.samples - static_cast<int>(rep.points.size())));
  cb.zero("reduction_failures", failed);
  cb.less("level", level, c.tol.level);
  cb.less("k_isotropy", iso, c.isotropy_tol);
  cb.zero("rank_drop", rank_drop);
  cb.zero("free_action", not_free);
  cb.zero("rank_stability", unstable);
  if (s.expected_kg_tangent >= 0) cb.zero("kg_tangent_dim", kg_dim);

  {
    std::vector<VectorXd> pts;
    for (const auto& r : rep.points) pts.push_back(r.point);
    InvariantResiduals inv = check_invariants(s.rd, pts);
    cb.less("reduction_data",
            std::max({inv.jacobi, inv.homomorphism, inv.representation, inv.isotropy, inv.equivariance}),
            c.morphism_tol);
  }

  for (const auto& e : s.expectations) {
    int mismatch = 0;
    for (const auto& r : rep.points) {
      const NamedCondition* nc = r.find_condition(e.condition);
      if (!nc || nc->result.holds != e.holds) ++mismatch;
    }
    cb.zero("expect:" + e.condition + (e.holds ? "=true" : "=false"), mismatch);
  }
  {
    int bad_implication = 0, bad_equivalence = 0;
    for (const auto& r : rep.points)
      for (const auto& j : s.structures.j) {
        const NamedCondition* jkg = r.find_condition("JKG:" + j.name);
        const NamedCondition* red = r.find_condition("RED:" + j.name);
        const NamedCondition* easy = r.find_condition("EASY:" + j.name);
        if (!jkg || !red || !easy) continue;
        if (jkg->result.holds && !red->result.holds) ++bad_implication;
        if (jkg->result.holds != easy->result.holds) ++bad_equivalence;
      }
    cb.zero("jkg_implies_red", bad_implication);
    cb.zero("easy_iff_jkg", bad_equivalence);
  }

  cb.zero("dims", std::max(0.0, max_matching(rep, [](const std::string& n) { return n == "dims"; })));
  const double algebra = max_matching(rep, [](const std::string& n) {
    return ends_with(n, ".square") || ends_with(n, ".orthogonal") || ends_with(n, ".commutator") ||
           ends_with(n, ".product") || n == "quaternion" || n == "anticommutation";
  });
  if (algebra > -kInf) cb.less("reduced_algebra", algebra, c.tol.residual);
  if (s.structures.mode == ReductionMode::GHK) {
    cb.less("quaternion", rep.aggregate("quaternion"), c.tol.residual);
    cb.less("anticommutation", rep.aggregate("anticommutation"), c.tol.residual);
  }
  if (s.structures.mode != ReductionMode::J)
    cb.greater("metric_positive", rep.aggregate("G.min_eigenvalue"), 0.0);

  auto suffix_check = [&](const std::string& name, const std::string& suffix, double thr, bool exact_zero) {
    double v = max_matching(rep, [&](const std::string& n) { return ends_with(n, suffix); });
    if (v == -kInf) return;
    if (exact_zero) cb.zero(name, v);
    else cb.less(name, v, thr);
  };
  suffix_check("two_path", ".two_path_angle", c.tol.angle, false);
  suffix_check("lred_isotropic", ".lred_isotropy", c.isotropy_tol, false);
  suffix_check("lred_lagrangian", ".lred_dim_defect", 0.0, true);
  suffix_check("lred_transverse", ".lred_real_part", 0.0, true);
  suffix_check("aux_metric_independence", ".aux_metric_angle", c.tol.angle, false);

  for (const auto& n : s.complex_type) cb.less("complex_type:" + n, rep.aggregate(n + ".tangent_leak"), c.tol.residual);
  for (const auto& n : s.invariant) cb.less("invariance:" + n, rep.aggregate("invariance." + n), c.tol.residual);
  for (const auto& mc : s.moments) cb.less("moment:" + mc.name, rep.aggregate("moment." + mc.name), c.isotropy_tol);
  cb.less("morphism", rep.aggregate("morphism"), c.morphism_tol);
  cb.less("offlevel", rep.aggregate("offlevel"), c.morphism_tol);
  if (s.oracle) {
    double v = max_matching(rep, [](const std::string& n) { return starts_with(n, "oracle."); });
    cb.less("oracle", v == -kInf ? kInf : v, c.oracle_tol);
  }
  if (s.commutation) cb.less("commutation", rep.aggregate("commutation"), c.oracle_tol);
  if (c.orbit_check && s.rd.lie.dim_g > 0) cb.less("orbit", rep.aggregate("orbit_delta"), c.orbit_tol);

  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& k) { return k.pass; });
}

Json matrix_json(const MatrixXd& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidInput, msg);
}

}  // namespace

const Check* RunReport::find_check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

double RunReport::aggregate(const std::string& name) const {
  for (const auto& a : aggregates)
    if (a.name == name) return a.value;
  return kInf;
}

void validate(const RunConfig& c) {
  require(c.samples >= 1, "samples must be at least 1");
  require(c.jobs >= 1, "jobs must be at least 1");
  for (double t : {c.tol.rank, c.tol.angle, c.tol.level, c.tol.residual, c.oracle_tol, c.isotropy_tol,
                   c.morphism_tol, c.orbit_tol})
    require(t > 0.0 && std::isfinite(t), "tolerances must be positive");
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("config parse error: ") + e.what());
  }
  require(j.is_object(), "config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "samples") base.samples = v.get<int>();
      else if (key == "seed") base.seed = v.get<std::uint64_t>();
      else if (key == "rank_tol") base.tol.rank = v.get<double>();
      else if (key == "angle_tol") base.tol.angle = v.get<double>();
      else if (key == "level_tol") base.tol.level = v.get<double>();
      else if (key == "residual_tol") base.tol.residual = v.get<double>();
      else if (key == "oracle_tol") base.oracle_tol = v.get<double>();
      else if (key == "jobs") base.jobs = v.get<int>();
      else if (key == "variant") base.variant = v.get<std::string>();
      else throw Error(ErrorCode::InvalidInput, "unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("config value error: ") + e.what());
  }
  validate(base);
  return base;
}

RunReport run(const Scenario& s, const RunConfig& config) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.scenario = s.name;
  rep.description = s.description;
  rep.config = config;

  Context ctx{s, config, algebra_basis(s.rd), {}};
  for (const auto& a : ctx.basis) ctx.actions.push_back(extended_action(s.rd, a));

  std::vector<VectorXd> pts = sample_points(s, config);
  rep.points.resize(pts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pts.size(); i = next++) rep.points[i] = evaluate(ctx, pts[i]);
  };
  const int jobs = std::min<int>(config.jobs, static_cast<int>(std::max<std::size_t>(pts.size(), 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  aggregate(rep);
  build_checks(s, rep);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string to_json(const RunReport& rep) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["scenario"] = rep.scenario;
  j["description"] = rep.description;
  const RunConfig& c = rep.config;
  j["config"] = {{"samples", c.samples},
                 {"seed", c.seed},
                 {"rank_tol", c.tol.rank},
                 {"angle_tol", c.tol.angle},
                 {"level_tol", c.tol.level},
                 {"residual_tol", c.tol.residual},
                 {"oracle_tol", c.oracle_tol},
                 {"isotropy_tol", c.isotropy_tol},
                 {"morphism_tol", c.morphism_tol},
                 {"orbit_tol", c.orbit_tol},
                 {"jobs", c.jobs}};
  Json points = Json::array();
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const auto& r = rep.points[i];
    Json p;
    p["index"] = i;
    p["point"] = std::vector<double>(r.point.data(), r.point.data() + r.point.size());
    p["ok"] = r.ok;
    if (!r.ok) p["error"] = r.error;
    p["level_residual"] = number(r.level_residual);
    p["dims"] = {{"k", r.dim_k},
                 {"expected_k", r.expected_dim_k},
                 {"k_perp", r.dim_kperp},
                 {"k_g", r.dim_kg},
                 {"k_g_tangent", r.dim_kg_tangent},
                 {"k_g_cotangent", r.dim_kg_cotangent}};
    p["flags"] = {{"rank_drop", r.rank_drop}, {"free_action", r.free_action}, {"rank_unstable", r.rank_unstable}};
    p["k_isotropy"] = number(r.k_isotropy);
    Json conds = Json::array();
    for (const auto& nc : r.conditions)
      conds.push_back({{"name", nc.name}, {"holds", nc.result.holds}, {"angle", number(nc.result.angle)}});
    p["conditions"] = conds;
    Json red = Json::object();
    for (const auto& m : r.reduced) red[m.name] = matrix_json(m.value);
    p["reduced"] = red;
    Json split = Json::object();
    for (const auto& m : r.reduced_split) split[m.name] = matrix_json(m.value);
    p["reduced_split"] = split;
    Json res = Json::object();
    for (const auto& v : r.residuals) res[v.name] = number(v.value);
    p["residuals"] = res;
    points.push_back(p);
  }
  j["points"] = points;
  Json agg = Json::object();
  for (const auto& a : rep.aggregates) agg[a.name] = number(a.value);
  j["aggregates"] = agg;
  Json checks = Json::array();
  for (const auto& k : rep.checks)
    checks.push_back({{"name", k.name},
                      {"pass", k.pass},
                      {"value", number(k.value)},
                      {"relation", k.relation},
                      {"threshold", number(k.threshold)}});
  j["checks"] = checks;
  j["pass"] = rep.pass;
  return j.dump(2) + "\n";
}

std::string summary(const RunReport& rep, bool verbose) {
  std::ostringstream os;
  int ok = 0;
  for (const auto& r : rep.points) ok += r.ok ? 1 : 0;
  os << "scenario " << rep.scenario << ": " << rep.description << "\n";
  os << "points: " << rep.points.size() << " sampled, " << ok << " reduced\n";
  for (const auto& k : rep.checks) {
    os << (k.pass ? "  PASS  " : "  FAIL  ") << k.name << "  " << k.value << " " << k.relation << " " << k.threshold
       << "\n";
  }
  if (verbose) {
    for (std::size_t i = 0; i < rep.points.size(); ++i)
      if (!rep.points[i].ok) os << "  point " << i << ": " << rep.points[i].error << "\n";
    for (const auto& a : rep.aggregates) os << "  max " << a.name << " = " << a.value << "\n";
  }
  os << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace gkq
