#include "conictr/conic.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace conictr {

namespace {

constexpr double kAtgRelTol = 1e-14;   // a^T g treated as zero below this
constexpr double kBoundaryRelTol = 1e-10;
constexpr double kStageTwoMinRadius = 1e-14;

double nudge_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
double nudge_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

SubproblemResult quad_degeneration(const ConicSubproblem& p, const CholeskyFactor* factor) {
  DoglegStep step = factor ? solve_dogleg(p.g, p.b, *factor, p.delta)
                           : solve_dogleg(QuadSubproblem{p.g, p.b, p.delta});
  SubproblemResult out;
  out.s = std::move(step.s);
  out.pred = step.pred;
  out.on_boundary = step.on_boundary;
  out.strategy = Strategy::QuadDogleg;
  out.gauge = 1.0;
  return out;
}

}  // namespace

double conic_pred(const Vector& g, const SymMatrix& b, const Vector& s, double gauge) {
  return -dot(g, s) / gauge - 0.5 * dot(s, b.multiply(s)) / (gauge * gauge);
}

TauQuantities tau_quantities(const ConicSubproblem& p) {
  const double alpha = dot(p.a, p.a);
  if (alpha == 0.0) throw ZeroHorizon("tau_quantities: zero horizon vector");
  const double na = std::sqrt(alpha);
  const double ng = norm2(p.g);

  TauQuantities q;
  q.tau_delta = p.delta / na;
  q.tau_m = 1.0 / alpha;
  q.tau_d = (1.0 - p.eps0) / alpha;
  q.tau_u = (1.0 + p.eps0) / alpha;
  // Pull the gauge endpoints inward until the evaluated constraint clears
  // eps0 (at most a few ulps; see header).
  for (int k = 0; k < 64 && !(1.0 - q.tau_d * alpha >= p.eps0); ++k) q.tau_d = nudge_down(q.tau_d);
  for (int k = 0; k < 64 && !(q.tau_u * alpha - 1.0 >= p.eps0); ++k) q.tau_u = nudge_up(q.tau_u);

  const double atg = dot(p.a, p.g);
  q.a_tau = dot(p.a, p.b.multiply(p.a)) - alpha * atg;
  if (q.a_tau != 0.0) q.tau_cp = -atg / q.a_tau;
  q.cos_ag = ng > 0.0 ? std::abs(atg) / (na * ng) : 0.0;
  return q;
}

double rho(const ConicSubproblem& p, double tau) {
  const double alpha = dot(p.a, p.a);
  const double d = 1.0 - tau * alpha;
  if (std::abs(d) < 1e-300) throw PoleAtTauM("rho: evaluated at the pole tau_m");
  const double atg = dot(p.a, p.g);
  const double aba = dot(p.a, p.b.multiply(p.a));
  return tau * atg / d + tau * tau * aba / (2.0 * d * d);
}

TauResult solve_tau_stage(const ConicSubproblem& p) {
  const TauQuantities q = tau_quantities(p);
  const double alpha = dot(p.a, p.a);
  const double na = std::sqrt(alpha);
  const double ng = norm2(p.g);
  const double atg = dot(p.a, p.g);
  const double t = p.delta * na;

  TauResult r;
  r.tau_case = (1.0 - t >= p.eps0) ? TauCase::P1
             : (std::abs(1.0 - t) < p.eps0) ? TauCase::P2
                                            : TauCase::P3;

  if (std::abs(atg) <= kAtgRelTol * na * ng) {
    // Theorem: rho(tau) >= 0 = rho(0) when a^T g = 0. Callers route this
    // to the quadratic path instead.
    r.tau_star = 0.0;
    r.hit = TauHit::Zero;
    r.rho_value = 0.0;
    return r;
  }

  const auto pick = [&](double tau, TauHit hit) {
    r.tau_star = tau;
    r.hit = hit;
  };

  switch (r.tau_case) {
    case TauCase::P1:
      if (q.a_tau <= 0.0) {
        pick(-q.tau_delta, TauHit::MinusTauDelta);
      } else if (atg > 0.0) {
        // tau_cp < 0 here
        if (*q.tau_cp <= -q.tau_delta)
          pick(-q.tau_delta, TauHit::MinusTauDelta);
        else
          pick(*q.tau_cp, TauHit::TauCP);
      } else {
        // tau_cp > 0. tau_delta <= tau_d in P1 up to ulps of the endpoint
        // adjustment; the min keeps the pick inside the certified gauge set.
        const double cap = std::min(q.tau_delta, q.tau_d);
        if (*q.tau_cp >= cap)
          pick(cap, cap == q.tau_delta ? TauHit::PlusTauDelta : TauHit::TauD);
        else
          pick(*q.tau_cp, TauHit::TauCP);
      }
      break;
    case TauCase::P2:
      if (q.a_tau <= 0.0) {
        pick(-q.tau_delta, TauHit::MinusTauDelta);
      } else if (atg > 0.0) {
        if (*q.tau_cp <= -q.tau_delta)
          pick(-q.tau_delta, TauHit::MinusTauDelta);
        else
          pick(*q.tau_cp, TauHit::TauCP);
      } else {
        if (*q.tau_cp >= q.tau_d)
          pick(q.tau_d, TauHit::TauD);
        else
          pick(*q.tau_cp, TauHit::TauCP);
      }
      break;
    case TauCase::P3:
      if (q.a_tau < 0.0) {
        // a^T g > 0 and tau_m < tau_cp here.
        if (*q.tau_cp <= q.tau_u) {
          pick(q.tau_u, TauHit::TauU);
        } else if (*q.tau_cp < q.tau_delta) {
          pick(*q.tau_cp, TauHit::TauCP);
        } else {
          // Ties prefer -tau_delta.
          const double rm = rho(p, -q.tau_delta);
          const double rp = rho(p, q.tau_delta);
          if (rm <= rp)
            pick(-q.tau_delta, TauHit::MinusTauDelta);
          else
            pick(q.tau_delta, TauHit::PlusTauDelta);
        }
      } else if (q.a_tau == 0.0) {
        pick(-q.tau_delta, TauHit::MinusTauDelta);
      } else if (atg > 0.0) {
        if (*q.tau_cp <= -q.tau_delta)
          pick(-q.tau_delta, TauHit::MinusTauDelta);
        else
          pick(*q.tau_cp, TauHit::TauCP);
      } else {
        if (*q.tau_cp >= q.tau_d)
          pick(q.tau_d, TauHit::TauD);
        else
          pick(*q.tau_cp, TauHit::TauCP);
      }
      break;
  }
  r.rho_value = rho(p, r.tau_star);
  return r;
}

QuadSubproblem reduce(const ConicSubproblem& p, double tau_star, const NullSpaceBasis& basis) {
  const double alpha = dot(p.a, p.a);
  const double d = 1.0 - tau_star * alpha;
  const double d2 = d * d;

  QuadSubproblem red;
  const double rad2 = p.delta * p.delta - tau_star * tau_star * alpha;
  red.delta = rad2 > 0.0 ? std::sqrt(rad2) : 0.0;

  Vector w = scaled(1.0 / d, p.g);
  axpy(tau_star / d2, p.b.multiply(p.a), w);
  red.g = apply_Qt(basis, w);

  const SymMatrix hbh = reflect_symmetric(basis, p.b);
  const std::size_t n = p.a.size();
  SymMatrix bt(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j <= i; ++j) bt.set(i - 1, j - 1, hbh(i, j) / d2);
  red.b = std::move(bt);
  return red;
}

// A single pass of Algorithm-style alternation fixes tau from the y = 0
// section first and solves the reduced quadratic once. When B couples the
// a-direction with its complement that one pass captures only a fraction
// of the available model decrease, so after the first pass alternate
// exactly: re-minimize over tau with y fixed (still closed form, the
// derivative numerator stays linear in tau), then re-solve the reduced
// dogleg at the new tau, keeping the best composite step. Every pass
// preserves the structural constraints a^T y = 0 and tau in Omega, and
// pred is monotone over passes, so the first-pass lower bounds remain
// valid for the returned step.
SubproblemResult solve_conic_adm(const ConicSubproblem& p, const CholeskyFactor* factor) {
  const std::size_t n = p.g.size();
  const double alpha = dot(p.a, p.a);
  if (alpha == 0.0) return quad_degeneration(p, factor);
  const double na = std::sqrt(alpha);
  const double ng = norm2(p.g);
  const double atg = dot(p.a, p.g);
  if (std::abs(atg) <= kAtgRelTol * na * ng) return quad_degeneration(p, factor);

  TauResult tau1 = solve_tau_stage(p);
  const double t = p.delta * na;

  SubproblemResult out;
  out.strategy = Strategy::ADM;
  out.tau = tau1;

  if (tau1.hit == TauHit::PlusTauDelta || tau1.hit == TauHit::MinusTauDelta) {
    out.s = scaled(tau1.tau_star, p.a);
    out.on_boundary = true;
    // The case test already certified |1 -+ t| >= eps0; reuse that exact
    // quantity as the structural gauge.
    out.gauge = tau1.hit == TauHit::PlusTauDelta ? 1.0 - t : 1.0 + t;
    out.pred = conic_pred(p.g, p.b, out.s, out.gauge);
    return out;
  }

  const auto finish_tau_only = [&]() {
    out.s = scaled(tau1.tau_star, p.a);
    out.gauge = 1.0 - tau1.tau_star * alpha;
    out.on_boundary = norm2(out.s) >= p.delta * (1.0 - kBoundaryRelTol);
    out.pred = conic_pred(p.g, p.b, out.s, out.gauge);
    return out;
  };

  double tau = tau1.tau_star;
  const double rad2_1 = p.delta * p.delta - tau * tau * alpha;
  if (n == 1 || rad2_1 <= kStageTwoMinRadius * kStageTwoMinRadius) return finish_tau_only();

  const NullSpaceBasis basis = nullspace_of(p.a);
  const Vector ba = p.b.multiply(p.a);
  const double aba = dot(p.a, ba);
  const Vector qg = apply_Qt(basis, p.g);
  const Vector qba = apply_Qt(basis, ba);
  const SymMatrix hbh = reflect_symmetric(basis, p.b);
  SymMatrix redb(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j <= i; ++j) redb.set(i - 1, j - 1, hbh(i, j));
  const auto lred = try_cholesky(redb);
  if (!lred)
    throw NotPositiveDefinite("conic reduction: Q^T B Q is numerically singular");

  // Reduced dogleg at fixed tau; nullopt when stage 2 has no room and a
  // zero vector when the reduced gradient vanishes.
  const auto solve_y = [&](double tau_fixed) -> std::optional<Vector> {
    const double rad2 = p.delta * p.delta - tau_fixed * tau_fixed * alpha;
    if (rad2 <= kStageTwoMinRadius * kStageTwoMinRadius) return std::nullopt;
    const double d = 1.0 - tau_fixed * alpha;
    Vector gt(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) gt[i] = qg[i] / d + tau_fixed * qba[i] / (d * d);
    if (norm2(gt) <= 1e-300) return Vector(n - 1, 0.0);
    const DoglegStep step =
        solve_dogleg(gt, redb.scaled(1.0 / (d * d)), lred->scaled(1.0 / std::abs(d)),
                     std::sqrt(rad2));
    return step.s;
  };

  const auto compose = [&](double tau_c, const Vector& u, double& gauge) {
    Vector s = scaled(tau_c, p.a);
    Vector y = apply_Q(basis, u);
    // a^T (Q u) = 0 up to rounding; project the drift out so the gauge
    // stays structural.
    axpy(-dot(p.a, y) / alpha, p.a, y);
    axpy(1.0, y, s);
    gauge = 1.0 - tau_c * alpha;
    return s;
  };

  std::optional<Vector> u = solve_y(tau);
  if (!u || norm2(*u) == 0.0) return finish_tau_only();

  double gauge = 0.0;
  Vector s = compose(tau, *u, gauge);
  double pred = conic_pred(p.g, p.b, s, gauge);

  const TauQuantities q = tau_quantities(p);
  const double c = atg;
  for (int pass = 1; pass < 60; ++pass) {
    // tau-update with y = Q u fixed: rho_y(tau) = phi(tau a + y) has one
    // stationary point (linear derivative numerator), so the minimum over
    // the feasible tau-set is at an endpoint or that stationary point.
    const double e = dot(qg, *u);
    const double pp = dot(qba, *u);
    const double w = dot(*u, redb.multiply(*u));
    const double yn2 = dot(*u, *u);
    const double ball2 = p.delta * p.delta - yn2;
    if (ball2 <= 0.0) break;
    const double tdy = std::sqrt(ball2) / na;
    const double num_a = aba + alpha * pp - alpha * c - alpha * alpha * e;
    const double num_c = c + alpha * e + pp + alpha * w;
    double cand[6];
    int nc = 0;
    cand[nc++] = -tdy;
    cand[nc++] = tdy;
    cand[nc++] = std::min(tdy, q.tau_d);
    if (q.tau_u <= tdy) cand[nc++] = q.tau_u;
    if (num_a != 0.0) {
      const double th = -num_c / num_a;
      if (std::abs(th) <= tdy) cand[nc++] = th;
    }
    cand[nc++] = 0.0;
    const auto rho_y = [&](double tc) {
      const double d = 1.0 - tc * alpha;
      return (tc * c + e) / d + (tc * tc * aba + 2.0 * tc * pp + w) / (2.0 * d * d);
    };
    double best_tau = tau;
    double best_val = rho_y(tau);
    for (int i = 0; i < nc; ++i) {
      if (std::abs(1.0 - cand[i] * alpha) < p.eps0) continue;
      const double v = rho_y(cand[i]);
      if (v < best_val) {
        best_val = v;
        best_tau = cand[i];
      }
    }

    std::optional<Vector> u_next = solve_y(best_tau);
    if (!u_next) break;
    double gauge_next = 0.0;
    Vector s_next = compose(best_tau, *u_next, gauge_next);
    const double pred_next = conic_pred(p.g, p.b, s_next, gauge_next);
    if (!(pred_next > pred + 1e-12 * (1.0 + std::abs(pred)))) break;
    tau = best_tau;
    u = std::move(u_next);
    s = std::move(s_next);
    gauge = gauge_next;
    pred = pred_next;
  }

  out.s = std::move(s);
  out.gauge = gauge;
  out.pred = pred;
  out.on_boundary = norm2(out.s) >= p.delta * (1.0 - kBoundaryRelTol);
  return out;
}

SubproblemResult solve_conic_dogleg(const ConicSubproblem& p, const CholeskyFactor* factor) {
  std::optional<CholeskyFactor> own;
  if (!factor) {
    own = cholesky(p.b);
    factor = &*own;
  }

  const Vector w = factor->solve(p.g);  // B^{-1} g
  const double atw = dot(p.a, w);
  const double denom_n = 1.0 - atw;
  if (std::abs(denom_n) <= 1e-12 * (1.0 + norm2(p.a) * norm2(w)))
    throw DegenerateConicStep("conic dogleg: Newton denominator 1 - a^T B^{-1} g vanishes");

  SubproblemResult out;
  out.strategy = Strategy::DCTR;

  Vector sn = scaled(-1.0 / denom_n, w);
  const double nsn = norm2(sn);
  if (nsn <= p.delta) {
    out.s = std::move(sn);
    out.on_boundary = nsn >= p.delta * (1.0 - kBoundaryRelTol);
  } else {
    const double gg = dot(p.g, p.g);
    const double gbg = dot(p.g, p.b.multiply(p.g));
    const double atg = dot(p.a, p.g);
    const double denom_c = gbg - atg * gg;
    if (std::abs(denom_c) <= 1e-12 * (gbg + std::abs(atg) * gg))
      throw DegenerateConicStep("conic dogleg: Cauchy denominator vanishes");
    Vector sc = scaled(-gg / denom_c, p.g);
    const double nsc = norm2(sc);
    if (nsc >= p.delta) {
      out.s = scaled(-p.delta / std::sqrt(gg), p.g);
    } else {
      Vector diff = sn;
      axpy(-1.0, sc, diff);
      const double d = dot(diff, diff);
      if (d <= 1e-30) {
        out.s = scaled(p.delta / nsn, sn);
      } else {
        const double e = dot(diff, sc);
        const double f = nsc * nsc - p.delta * p.delta;
        const double disc = std::max(e * e - d * f, 0.0);
        const double lambda = (-e + std::sqrt(disc)) / d;
        out.s = std::move(sc);
        axpy(lambda, diff, out.s);
        const double ns = norm2(out.s);
        if (ns > p.delta) {
          Vector clipped = scaled(p.delta / ns, out.s);
          out.s = std::move(clipped);
        }
      }
    }
    out.on_boundary = true;
  }

  // Gauge feasibility: backtrack s <- sigma*s with the largest sigma in
  // (0,1] keeping |1 - a^T s| >= eps0. Only the window
  // 1-eps0 < a^T s < 1+eps0 is infeasible, so sigma = (1-eps0)/(a^T s).
  double ats = dot(p.a, out.s);
  double gauge = 1.0 - ats;
  if (std::abs(gauge) < p.eps0) {
    double sigma = (1.0 - p.eps0) / ats;
    for (int k = 0; k < 64 && !(1.0 - sigma * ats >= p.eps0); ++k) sigma = nudge_down(sigma);
    Vector shrunk = scaled(sigma, out.s);
    out.s = std::move(shrunk);
    ats = sigma * ats;
    gauge = 1.0 - ats;
    out.on_boundary = norm2(out.s) >= p.delta * (1.0 - kBoundaryRelTol);
  }
  out.gauge = gauge;
  out.pred = conic_pred(p.g, p.b, out.s, gauge);
  if (!(out.pred > 0.0))
    throw DegenerateConicStep("conic dogleg: no model decrease at the clipped step");
  return out;
}

}  // namespace conictr
