#include "conictr/model_update.hpp"

#include <cmath>

namespace conictr {

namespace {
constexpr double kHorizonNormCap = 1e3;
}

Vector update_horizon(const StepRecord& r) {
  const double df = r.f_cur - r.f_prev;
  const double gps = dot(r.g_prev, r.s);
  const double gcs = dot(r.g_cur, r.s);
  const double beta = df * df - gps * gcs;

  double beta_k = 1.0;
  if (beta > 0.0 && std::abs(gps) > 1e-14 * norm2(r.g_prev) * norm2(r.s))
    beta_k = (r.f_prev - r.f_cur + std::sqrt(beta)) / (-gps);

  if (beta_k == 1.0) return Vector(r.s.size(), 0.0);

  // beta_k is the reciprocal gauge 1 - a^T(x_prev - x_cur) of the conic
  // interpolation, which fixes the horizon as below; a quadratic objective
  // gives beta_k = 1 and hence a = 0.
  Vector a = scaled((1.0 - beta_k) / (-gps), r.g_prev);
  const double na = norm2(a);
  if (na > kHorizonNormCap) {
    Vector clamped = scaled(kHorizonNormCap / na, a);
    return clamped;
  }
  return a;
}

HessianUpdate update_hessian_with_factor(const SymMatrix& b, const Vector& s, const Vector& y) {
  HessianUpdate out;
  const Vector bs = b.multiply(s);
  const double sbs = dot(s, bs);
  if (sbs <= 1e-30) {
    out.b = b;
    out.skipped = true;
    return out;
  }

  const double ys = dot(y, s);
  const double theta = ys >= 0.2 * sbs ? 1.0 : 0.8 * sbs / (sbs - ys);
  Vector z = scaled(theta, y);
  axpy(1.0 - theta, bs, z);
  const double zs = dot(z, s);

  SymMatrix next = b;
  next.add_rank1(-1.0 / sbs, bs);
  next.add_rank1(1.0 / zs, z);

  out.factor = try_cholesky(next);
  if (!out.factor) {
    // Damping guarantees z^T s = max(y^T s, 0.2 s^T B s) > 0, so B' is PD
    // in exact arithmetic; a failed factorization here is roundoff on a
    // nearly singular update and the step is ignored instead.
    out.b = b;
    out.skipped = true;
    return out;
  }
  out.b = std::move(next);
  return out;
}

SymMatrix update_hessian(const SymMatrix& b, const Vector& s, const Vector& y) {
  return update_hessian_with_factor(b, s, y).b;
}

}  // namespace conictr
