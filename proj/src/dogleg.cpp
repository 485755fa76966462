#include "conictr/dogleg.hpp"

#include <cmath>

namespace conictr {

namespace {

double quad_pred(const Vector& g, const SymMatrix& b, const Vector& s) {
  return -(dot(g, s) + 0.5 * dot(s, b.multiply(s)));
}

constexpr double kBoundaryRelTol = 1e-10;

}  // namespace

DoglegStep solve_dogleg(const Vector& g, const SymMatrix& b, const CholeskyFactor& factor,
                        double delta) {
  DoglegStep out;

  Vector sn = factor.solve(scaled(-1.0, g));
  const double nsn = norm2(sn);
  if (nsn <= delta) {
    out.s = std::move(sn);
    out.branch = DoglegBranch::Newton;
    out.on_boundary = nsn >= delta * (1.0 - kBoundaryRelTol);
    out.pred = quad_pred(g, b, out.s);
    return out;
  }

  const double gg = dot(g, g);
  const double gbg = dot(g, b.multiply(g));
  Vector sc = scaled(-gg / gbg, g);
  const double nsc = norm2(sc);
  if (nsc >= delta) {
    out.s = scaled(-delta / std::sqrt(gg), g);
    out.branch = DoglegBranch::ScaledCauchy;
    out.on_boundary = true;
    out.pred = quad_pred(g, b, out.s);
    return out;
  }

  // ||sc|| < delta < ||sn||: walk from the Cauchy point toward the Newton
  // point until the boundary.
  Vector diff = sn;
  axpy(-1.0, sc, diff);
  const double d = dot(diff, diff);
  if (d <= 1e-30) {
    // sn and sc coincide; clip the Newton step to the ball.
    out.s = scaled(delta / nsn, sn);
    out.branch = DoglegBranch::Interpolated;
    out.on_boundary = true;
    out.pred = quad_pred(g, b, out.s);
    return out;
  }
  const double e = dot(diff, sc);
  const double f = nsc * nsc - delta * delta;
  const double disc = std::max(e * e - d * f, 0.0);
  const double lambda = (-e + std::sqrt(disc)) / d;
  out.s = std::move(sc);
  axpy(lambda, diff, out.s);
  out.branch = DoglegBranch::Interpolated;
  out.on_boundary = true;
  out.pred = quad_pred(g, b, out.s);
  return out;
}

DoglegStep solve_dogleg(const QuadSubproblem& p) {
  return solve_dogleg(p.g, p.b, cholesky(p.b), p.delta);
}

}  // namespace conictr
