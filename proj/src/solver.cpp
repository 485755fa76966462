#include "conictr/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conictr/model_update.hpp"

namespace conictr {

const char* to_string(Status s) {
  switch (s) {
    case Status::Converged: return "Converged";
    case Status::MaxIter: return "MaxIter";
    case Status::Stalled: return "Stalled";
    case Status::SubproblemFailure: return "SubproblemFailure";
  }
  return "?";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::ADM: return "adm";
    case Strategy::DCTR: return "dctr";
    case Strategy::QuadDogleg: return "quad";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(0.0 < eta1 && eta1 < eta2 && eta2 < 1.0))
    throw std::invalid_argument("SolverConfig: need 0 < eta1 < eta2 < 1");
  if (!(0.0 < delta_shrink && delta_shrink < 1.0 && delta_grow > 1.0))
    throw std::invalid_argument("SolverConfig: need 0 < delta1 < 1 < delta2");
  if (!(0.0 < delta0 && delta0 <= delta_max))
    throw std::invalid_argument("SolverConfig: need 0 < delta0 <= delta_max");
  if (!(0.0 < eps0 && eps0 < 1.0)) throw std::invalid_argument("SolverConfig: need 0 < eps0 < 1");
  if (!(delta_min > 0.0)) throw std::invalid_argument("SolverConfig: need delta_min > 0");
  if (max_iter < 0) throw std::invalid_argument("SolverConfig: need max_iter >= 0");
  if (strategy == Strategy::QuadDogleg)
    throw std::invalid_argument("SolverConfig: strategy must be ADM or DCTR");
}

namespace {

bool all_finite(const Vector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

RunReport minimize(const Objective& objective, const Gradient& gradient, const Vector& x0,
                   const SolverConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = x0.size();

  RunReport rep;
  Vector x = x0;
  double f = objective(x);
  rep.nf = 1;
  Vector g = gradient(x);
  rep.ng = 1;

  Vector a(n, 0.0);
  SymMatrix b = SymMatrix::identity(n);
  CholeskyFactor factor = cholesky(b);
  double delta = cfg.delta0;
  double bnorm = cfg.check_bounds ? spectral_norm_estimate(b) : 0.0;

  int consecutive_rejections = 0;
  int consecutive_degenerate = 0;

  while (true) {
    const double gnorm = norm2(g);
    if (!std::isfinite(gnorm) || !std::isfinite(f)) {
      rep.status = Status::SubproblemFailure;
      break;
    }
    if (gnorm <= cfg.grad_tol) {
      rep.status = Status::Converged;
      break;
    }
    if (rep.iters >= cfg.max_iter) {
      rep.status = Status::MaxIter;
      break;
    }
    if (delta < cfg.delta_min) {
      rep.status = Status::Stalled;
      break;
    }

    ConicSubproblem sub{a, g, b, delta, cfg.eps0};
    SubproblemResult res;
    try {
      res = cfg.strategy == Strategy::ADM ? solve_conic_adm(sub, &factor)
                                          : solve_conic_dogleg(sub, &factor);
    } catch (const DegenerateConicStep&) {
      ++rep.degenerate;
      if (++consecutive_degenerate >= 5) {
        rep.status = Status::SubproblemFailure;
        break;
      }
      delta *= cfg.delta_shrink;
      continue;
    } catch (const NotPositiveDefinite&) {
      ++rep.degenerate;
      if (++consecutive_degenerate >= 5) {
        rep.status = Status::SubproblemFailure;
        break;
      }
      delta *= cfg.delta_shrink;
      continue;
    }
    consecutive_degenerate = 0;

    ++rep.iters;
    Vector x_trial = x;
    axpy(1.0, res.s, x_trial);
    const double f_trial = objective(x_trial);
    ++rep.nf;

    const double ared = f - f_trial;
    const double ratio = (std::isfinite(f_trial) && res.pred > 0.0)
                             ? ared / res.pred
                             : -std::numeric_limits<double>::infinity();

    TrialRecord rec;
    rec.delta = delta;
    rec.pred = res.pred;
    rec.ared = ared;
    rec.ratio = ratio;
    rec.on_boundary = res.on_boundary;
    rec.strategy = res.strategy;
    if (res.tau) rec.hit = res.tau->hit;
    rec.snorm = norm2(res.s);
    rec.gauge = res.gauge;
    rec.gnorm = gnorm;
    rec.eps0 = cfg.eps0;
    if (res.strategy == Strategy::QuadDogleg) {
      rec.anorm = 0.0;
      rec.cos_ag = 0.0;
    } else {
      const double na = norm2(a);
      rec.anorm = na;
      rec.cos_ag = na > 0.0 ? std::abs(dot(a, g)) / (na * gnorm) : 0.0;
    }
    if (cfg.check_bounds) rec.bnorm_est = bnorm;

    bool accept = ratio > cfg.eta1;
    Vector g_trial;
    if (accept) {
      g_trial = gradient(x_trial);
      if (!all_finite(g_trial)) accept = false;
    }

    rec.accepted = accept;
    rep.trace.push_back(rec);

    if (!accept) {
      delta *= cfg.delta_shrink;
      if (++consecutive_rejections >= cfg.max_consecutive_rejections) {
        rep.status = Status::Stalled;
        break;
      }
      continue;
    }

    ++rep.ng;
    ++rep.accepted;
    consecutive_rejections = 0;

    if (ratio >= cfg.eta2 && rec.snorm >= delta * (1.0 - 1e-10))
      delta = std::min(cfg.delta_grow * delta, cfg.delta_max);

    StepRecord step;
    step.s = res.s;
    step.f_prev = f;
    step.f_cur = f_trial;
    step.g_prev = g;
    step.g_cur = g_trial;
    step.y = g_trial;
    axpy(-1.0, g, step.y);

    a = update_horizon(step);
    HessianUpdate upd = update_hessian_with_factor(b, step.s, step.y);
    b = std::move(upd.b);
    if (!upd.skipped) {
      factor = *std::move(upd.factor);
      if (cfg.check_bounds) bnorm = spectral_norm_estimate(b);
    }

    x = std::move(x_trial);
    f = f_trial;
    g = std::move(g_trial);
  }

  rep.f_final = f;
  rep.gnorm_final = norm2(g);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<BoundViolation> verify_pred_bounds(const std::vector<TrialRecord>& trace,
                                               double tolerance) {
  std::vector<BoundViolation> out;
  const double slack = 1.0 - tolerance;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TrialRecord& r = trace[i];
    if (r.strategy == Strategy::DCTR) continue;  // no theorem covers the comparison strategy
    const double bnorm = r.bnorm_est * (1.0 + 1e-6);
    if (!(bnorm > 0.0)) continue;  // trace recorded without check_bounds

    if (r.strategy == Strategy::QuadDogleg) {
      const double required = 0.5 * r.gnorm * std::min(r.delta, r.gnorm / bnorm);
      if (r.pred < slack * required)
        out.push_back({i, "general", r.pred, required});
      continue;
    }

    const double c1 = r.cos_ag / std::max(2.0 + r.eps0, 1.0 + r.delta * r.anorm);
    if (r.hit && (*r.hit == TauHit::PlusTauDelta || *r.hit == TauHit::MinusTauDelta)) {
      const double required = 0.5 * c1 * r.delta * r.gnorm;
      if (r.pred < slack * required)
        out.push_back({i, "boundary-hit", r.pred, required});
    }
    const double c4 =
        std::min(c1, std::min(r.cos_ag * r.cos_ag, r.cos_ag * (1.0 - r.eps0) / r.eps0));
    double m = std::min(r.delta, r.gnorm / bnorm);
    if (r.anorm > 0.0) m = std::min(m, 1.0 / r.anorm);
    const double required = 0.5 * c4 * r.gnorm * m;
    if (r.pred < slack * required)
      out.push_back({i, "general", r.pred, required});
  }
  return out;
}

}  // namespace conictr
