#include "conictr/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "conictr/model_update.hpp"

namespace conictr {

namespace {

using json = nlohmann::json;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Row {
  std::string problem;
  std::size_t n;
  Strategy strategy;
  RunReport rep;
};

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << "problem,n,strategy,status,iters,nf,ng,f_final,gnorm_final,wall_time_s\n";
  for (const Row& r : rows) {
    os << r.problem << ',' << r.n << ',' << to_string(r.strategy) << ','
       << to_string(r.rep.status) << ',' << r.rep.iters << ',' << r.rep.nf << ',' << r.rep.ng
       << ',' << fmt("%.6e", r.rep.f_final) << ',' << fmt("%.6e", r.rep.gnorm_final) << ','
       << fmt("%.6f", r.rep.wall_time) << '\n';
  }
}

void write_markdown(std::ostream& os, const std::vector<Row>& rows) {
  os << "| problem | n | strategy | status | iters | nf/ng | f_final | gnorm | time (s) |\n";
  os << "|---|---|---|---|---|---|---|---|---|\n";
  for (const Row& r : rows) {
    std::string status = to_string(r.rep.status);
    if (r.rep.status != Status::Converged) status += "*";
    os << "| " << r.problem << " | " << r.n << " | " << to_string(r.strategy) << " | " << status
       << " | " << r.rep.iters << " | " << r.rep.nf << "/" << r.rep.ng << " | "
       << fmt("%.4e", r.rep.f_final) << " | " << fmt("%.4e", r.rep.gnorm_final) << " | "
       << fmt("%.6f", r.rep.wall_time) << " |\n";
  }
}

}  // namespace

int run_bench(const BenchSpec& spec, std::ostream& diag) {
  if (spec.problems.empty()) {
    diag << "error: no problems selected\n";
    return 2;
  }
  if (spec.strategies.empty()) {
    diag << "error: no strategy selected\n";
    return 2;
  }
  for (Strategy s : spec.strategies) {
    if (s == Strategy::QuadDogleg) {
      diag << "error: strategy must be adm or dctr\n";
      return 2;
    }
  }
  // Validate every row before running anything.
  std::vector<TestProblem> probs;
  try {
    spec.base.validate();
    for (const auto& [name, n] : spec.problems) probs.push_back(get_problem(name, n));
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  }

  std::vector<Row> rows;
  bool all_converged = true;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    for (Strategy s : spec.strategies) {
      SolverConfig cfg = spec.base;
      cfg.strategy = s;
      Row row{probs[i].name, probs[i].n, s,
              minimize(probs[i].objective, probs[i].gradient, probs[i].x0, cfg)};
      all_converged = all_converged && row.rep.status == Status::Converged;
      rows.push_back(std::move(row));
    }
  }

  std::ostringstream body;
  if (spec.format == ReportFormat::Csv)
    write_csv(body, rows);
  else
    write_markdown(body, rows);

  if (spec.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(spec.out_path);
    if (!f) {
      diag << "error: cannot write " << spec.out_path << '\n';
      return 2;
    }
    f << body.str();
  }
  return all_converged ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Oracles. These evaluate the model restriction rho(tau) directly from its
// scalar coefficients, independent of the closed-form case analysis they
// check.

namespace {

struct ScalarRestriction {
  double alpha;  // a^T a
  double c;      // a^T g
  double q;      // a^T B a
  double rho(double tau) const {
    const double d = 1.0 - tau * alpha;
    return tau * c / d + tau * tau * q / (2.0 * d * d);
  }
};

struct GridResult {
  double min = 0.0;
  double argmin = 0.0;
};

// Dense scan of Omega = [-tau_delta, min(tau_delta, tau_d)] u
// [tau_u, tau_delta] (when nonempty) with `points` samples total.
GridResult grid_min_rho(const ScalarRestriction& r, const TauQuantities& q, int points) {
  struct Interval {
    double lo, hi;
  };
  Interval iv[2];
  int niv = 0;
  iv[niv++] = {-q.tau_delta, std::min(q.tau_delta, q.tau_d)};
  if (q.tau_u <= q.tau_delta) iv[niv++] = {q.tau_u, q.tau_delta};

  double total = 0.0;
  for (int i = 0; i < niv; ++i) total += iv[i].hi - iv[i].lo;

  GridResult best;
  bool first = true;
  for (int i = 0; i < niv; ++i) {
    const double len = iv[i].hi - iv[i].lo;
    int m = niv == 1 ? points : std::max(2, static_cast<int>(points * (len / total)));
    for (int k = 0; k < m; ++k) {
      const double tau = iv[i].lo + (iv[i].hi - iv[i].lo) * k / static_cast<double>(m - 1);
      const double val = r.rho(tau);
      if (first || val < best.min) {
        best = {val, tau};
        first = false;
      }
    }
  }
  return best;
}

struct Instance {
  ConicSubproblem p;
};

SymMatrix random_spd(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> m(n * n);
  for (double& v : m) v = u(rng);
  SymMatrix b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += m[k * n + i] * m[k * n + j];
      b.set(i, j, s + (i == j ? 1.0 : 0.0));
    }
  return b;
}

Vector random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// tau_case: 0 => P1, 1 => P2, 2 => P3.
Instance random_instance(std::mt19937_64& rng, int tau_case) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
  Instance inst;
  inst.p.b = random_spd(rng, n);
  for (;;) {
    inst.p.a = random_vec(rng, n);
    inst.p.g = random_vec(rng, n);
    const double na = norm2(inst.p.a);
    const double ng = norm2(inst.p.g);
    if (na < 0.1 || ng < 0.1) continue;
    if (std::abs(dot(inst.p.a, inst.p.g)) <= 1e-8 * na * ng) continue;
    break;
  }
  inst.p.eps0 = std::pow(10.0, -5.0 + 4.3 * u01(rng));  // ~[1e-5, 0.2]
  const double na = norm2(inst.p.a);
  double t;
  switch (tau_case) {
    case 0: t = (1.0 - inst.p.eps0) * (0.05 + 0.95 * u01(rng)); break;
    case 1: t = 1.0 + inst.p.eps0 * (-0.999 + 1.998 * u01(rng)); break;
    default: t = (1.0 + inst.p.eps0) * (1.0 + 3.0 * u01(rng)); break;
  }
  inst.p.delta = t / na;
  return inst;
}

json to_json(const ConicSubproblem& p, const char* kind) {
  json j;
  j["kind"] = kind;
  j["n"] = p.g.size();
  j["eps0"] = p.eps0;
  j["delta"] = p.delta;
  j["a"] = p.a;
  j["g"] = p.g;
  std::vector<std::vector<double>> b(p.b.size(), std::vector<double>(p.b.size()));
  for (std::size_t i = 0; i < p.b.size(); ++i)
    for (std::size_t k = 0; k < p.b.size(); ++k) b[i][k] = p.b(i, k);
  j["b"] = b;
  return j;
}

ConicSubproblem subproblem_from_json(const json& j) {
  ConicSubproblem p;
  p.eps0 = j.at("eps0").get<double>();
  p.delta = j.at("delta").get<double>();
  p.a = j.at("a").get<Vector>();
  p.g = j.at("g").get<Vector>();
  const auto rows = j.at("b").get<std::vector<std::vector<double>>>();
  SymMatrix b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k <= i; ++k) b.set(i, k, rows[i][k]);
  p.b = std::move(b);
  return p;
}

struct OracleContext {
  const OracleOptions& opt;
  std::ostream& out;
  std::ostream& err;
  int failures = 0;

  void report(const ConicSubproblem& p, const char* kind, const json& detail) {
    ++failures;
    json j = to_json(p, kind);
    j["detail"] = detail;
    if (opt.dump_path.empty()) {
      err << j.dump(2) << '\n';
    } else {
      std::ofstream f(opt.dump_path);
      f << j.dump(2) << '\n';
      err << "counterexample written to " << opt.dump_path << '\n';
    }
  }
};

constexpr int kGridPoints = 100000;

TauResult tau_stage_under_test(const ConicSubproblem& p, bool inject_fault) {
  TauResult r = solve_tau_stage(p);
  if (inject_fault &&
      (r.hit == TauHit::TauCP || r.hit == TauHit::TauD || r.hit == TauHit::TauU)) {
    // Deliberately wrong branch: fall back to the left trust-region corner.
    const TauQuantities q = tau_quantities(p);
    r.tau_star = -q.tau_delta;
    r.hit = TauHit::MinusTauDelta;
  }
  return r;
}

bool check_tau_grid(OracleContext& ctx, const ConicSubproblem& p) {
  const TauQuantities q = tau_quantities(p);
  const ScalarRestriction r{dot(p.a, p.a), dot(p.a, p.g), dot(p.a, p.b.multiply(p.a))};
  const TauResult res = tau_stage_under_test(p, ctx.opt.inject_tau_fault);
  const GridResult grid = grid_min_rho(r, q, kGridPoints);
  const double rho_star = r.rho(res.tau_star);

  const double na = std::sqrt(r.alpha);
  const bool feasible = std::abs(res.tau_star) * na <= p.delta * (1.0 + 1e-12);
  const bool optimal = rho_star <= grid.min + 1e-8 * (1.0 + std::abs(grid.min));
  if (feasible && optimal) return true;

  json detail;
  detail["tau_star"] = res.tau_star;
  detail["rho_star"] = rho_star;
  detail["grid_min"] = grid.min;
  detail["grid_argmin"] = grid.argmin;
  detail["feasible"] = feasible;
  ctx.report(p, "tau-grid", detail);
  return false;
}

double phi_direct(const ConicSubproblem& p, const Vector& s) {
  const double d = 1.0 - dot(p.a, s);
  return dot(p.g, s) / d + dot(s, p.b.multiply(s)) / (2.0 * d * d);
}

bool check_feasibility(OracleContext& ctx, const ConicSubproblem& p) {
  SubproblemResult res;
  try {
    res = solve_conic_adm(p);
  } catch (const std::exception& e) {
    ctx.report(p, "feasibility", json{{"exception", e.what()}});
    return false;
  }
  json detail;
  bool ok = true;
  const double ns = norm2(res.s);
  if (!(ns <= p.delta * (1.0 + 1e-12))) {
    detail["ball"] = ns - p.delta;
    ok = false;
  }
  if (!(std::abs(res.gauge) >= p.eps0 * (1.0 - 1e-12))) {
    detail["gauge"] = res.gauge;
    ok = false;
  }
  const double recompute = 1.0 - dot(p.a, res.s);
  if (!(std::abs(recompute) >= p.eps0 * (1.0 - 1e-6))) {
    detail["gauge_recomputed"] = recompute;
    ok = false;
  }
  if (!(res.pred > 0.0)) {
    detail["pred"] = res.pred;
    ok = false;
  }
  const double phi_s = phi_direct(p, res.s);
  if (res.tau) {
    const ScalarRestriction r{dot(p.a, p.a), dot(p.a, p.g), dot(p.a, p.b.multiply(p.a))};
    const double rho_star = r.rho(res.tau->tau_star);
    if (!(phi_s <= rho_star + 1e-8 * (1.0 + std::abs(rho_star)))) {
      detail["phi_s"] = phi_s;
      detail["rho_star"] = rho_star;
      ok = false;
    }
  }
  const double pred_direct = -phi_s;
  if (!(std::abs(res.pred - pred_direct) <= 1e-6 * (1.0 + std::abs(pred_direct)))) {
    detail["pred_reported"] = res.pred;
    detail["pred_direct"] = pred_direct;
    ok = false;
  }
  if (!ok) ctx.report(p, "feasibility", detail);
  return ok;
}

bool check_pred_bounds(OracleContext& ctx, const ConicSubproblem& p) {
  SubproblemResult res;
  try {
    res = solve_conic_adm(p);
  } catch (const std::exception& e) {
    ctx.report(p, "pred-bound", json{{"exception", e.what()}});
    return false;
  }
  const double na = norm2(p.a);
  const double ng = norm2(p.g);
  const double bnorm = spectral_norm_estimate(p.b) * (1.0 + 1e-6);
  const double slack = 1.0 - 1e-8;
  json detail;
  bool ok = true;
  if (res.strategy == Strategy::QuadDogleg) {
    const double required = 0.5 * ng * std::min(p.delta, ng / bnorm);
    if (!(res.pred >= slack * required)) {
      detail["pred"] = res.pred;
      detail["required"] = required;
      ok = false;
    }
  } else {
    const double cos_ag = std::abs(dot(p.a, p.g)) / (na * ng);
    const double c1 = cos_ag / std::max(2.0 + p.eps0, 1.0 + p.delta * na);
    if (res.tau &&
        (res.tau->hit == TauHit::PlusTauDelta || res.tau->hit == TauHit::MinusTauDelta)) {
      const double required = 0.5 * c1 * p.delta * ng;
      if (!(res.pred >= slack * required)) {
        detail["pred"] = res.pred;
        detail["required_boundary"] = required;
        ok = false;
      }
    }
    const double c4 = std::min(c1, std::min(cos_ag * cos_ag, cos_ag * (1.0 - p.eps0) / p.eps0));
    const double required =
        0.5 * c4 * ng * std::min(p.delta, std::min(1.0 / na, ng / bnorm));
    if (!(res.pred >= slack * required)) {
      detail["pred"] = res.pred;
      detail["required_general"] = required;
      ok = false;
    }
  }
  if (!ok) ctx.report(p, "pred-bound", detail);
  return ok;
}

bool check_bfgs_pd(OracleContext& ctx, std::mt19937_64& rng) {
  const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
  const SymMatrix b = random_spd(rng, n);
  Vector s = random_vec(rng, n);
  Vector y = random_vec(rng, n);
  HessianUpdate upd = update_hessian_with_factor(b, s, y);
  if (!upd.skipped && upd.factor && upd.b.is_symmetric_exact()) return true;
  ConicSubproblem p;  // reuse the serializer; g/y and delta unused here
  p.a = s;
  p.g = y;
  p.b = b;
  p.delta = 0.0;
  p.eps0 = 0.5;
  ctx.report(p, "bfgs-pd", json{{"skipped", upd.skipped}});
  return false;
}

}  // namespace

int run_oracles(const OracleOptions& opt, std::ostream& out, std::ostream& err) {
  OracleContext ctx{opt, out, err};
  std::mt19937_64 rng(opt.seed);

  for (int c = 0; c < 3 && ctx.failures == 0; ++c) {
    for (int i = 0; i < opt.count; ++i) {
      const Instance inst = random_instance(rng, c);
      if (!check_tau_grid(ctx, inst.p)) break;
    }
  }
  out << "tau-grid oracle: " << (ctx.failures ? "FAIL" : "pass") << " (" << 3 * opt.count
      << " instances)\n";

  if (ctx.failures == 0) {
    std::mt19937_64 rng2(opt.seed ^ 0x9e3779b97f4a7c15ull);
    for (int i = 0; i < 3 * opt.count; ++i) {
      Instance inst = random_instance(rng2, i % 3);
      if (i % 7 == 0) inst.p.a.assign(inst.p.a.size(), 0.0);
      if (i % 11 == 0 && i % 7 != 0) {
        // Make a^T g ~ 0 to exercise the quadratic degeneration route.
        const double alpha = dot(inst.p.a, inst.p.a);
        axpy(-dot(inst.p.a, inst.p.g) / alpha, inst.p.a, inst.p.g);
      }
      if (!check_feasibility(ctx, inst.p)) break;
    }
    out << "feasibility oracle: " << (ctx.failures ? "FAIL" : "pass") << '\n';
  }

  if (ctx.failures == 0) {
    std::mt19937_64 rng3(opt.seed ^ 0xda942042e4dd58b5ull);
    for (int i = 0; i < 3 * opt.count; ++i) {
      Instance inst = random_instance(rng3, i % 3);
      if (!check_pred_bounds(ctx, inst.p)) break;
    }
    out << "pred-bound oracle: " << (ctx.failures ? "FAIL" : "pass") << '\n';
  }

  if (ctx.failures == 0) {
    std::mt19937_64 rng4(opt.seed ^ 0xc2b2ae3d27d4eb4full);
    for (int i = 0; i < opt.count; ++i)
      if (!check_bfgs_pd(ctx, rng4)) break;
    out << "bfgs-pd oracle: " << (ctx.failures ? "FAIL" : "pass") << '\n';
  }

  return ctx.failures == 0 ? 0 : 1;
}

int replay_oracle(const std::string& path, std::ostream& out, std::ostream& err) {
  json j;
  try {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f >> j;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  OracleOptions opt;
  opt.dump_path.clear();
  OracleContext ctx{opt, out, err};
  const std::string kind = j.at("kind").get<std::string>();
  const ConicSubproblem p = subproblem_from_json(j);
  bool ok;
  if (kind == "tau-grid")
    ok = check_tau_grid(ctx, p);
  else if (kind == "feasibility")
    ok = check_feasibility(ctx, p);
  else if (kind == "pred-bound")
    ok = check_pred_bounds(ctx, p);
  else {
    err << "error: unknown counterexample kind " << kind << '\n';
    return 2;
  }
  out << "replay " << kind << ": " << (ok ? "pass" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

int run_gradcheck(std::uint64_t seed, int points, std::ostream& out) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  bool all_ok = true;
  for (const auto& [name, n] : small_benchmark_rows()) {
    const TestProblem p = get_problem(name, n);
    double worst = fd_check(p, p.x0);
    for (int k = 0; k < points; ++k) {
      Vector x = p.x0;
      for (double& xi : x) xi += u(rng);
      worst = std::max(worst, fd_check(p, x));
    }
    const bool ok = worst <= 1e-6;
    all_ok = all_ok && ok;
    out << (ok ? "pass" : "FAIL") << "  " << name << " n=" << n << "  max_rel_err="
        << fmt("%.3e", worst) << '\n';
  }
  return all_ok ? 0 : 1;
}

}  // namespace conictr
