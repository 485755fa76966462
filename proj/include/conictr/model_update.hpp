#pragma once

#include <optional>

#include "conictr/linalg.hpp"

namespace conictr {

/// Data of one accepted step, x_prev -> x_cur.
struct StepRecord {
  Vector s;        // x_cur - x_prev
  double f_prev = 0.0;
  double f_cur = 0.0;
  Vector g_prev;
  Vector g_cur;
  Vector y;        // g_cur - g_prev
};

// Next horizon vector:
//   beta   = (f_cur - f_prev)^2 - (g_prev^T s)(g_cur^T s)
//   beta_k = (f_prev - f_cur + sqrt(beta)) / (-g_prev^T s)   when beta > 0
//            and g_prev^T s is not negligible; otherwise beta_k = 1
//   a      = (1 - beta_k)/(g_prev^T s) * g_prev  (exactly 0 when beta_k = 1)
// ||a|| is clamped to 1e3 to keep the horizon sequence bounded.
Vector update_horizon(const StepRecord& r);

// Damped BFGS:
//   theta = 1                           if y^T s >= 0.2 s^T B s
//           0.8 s^T B s/(s^T B s - y^T s)  otherwise
//   z = theta y + (1 - theta) B s
//   B' = B - (B s)(B s)^T/(s^T B s) + z z^T/(z^T s)
// Returns B unchanged (skipped) when s^T B s <= 1e-30 or when the verifying
// factorization of B' fails.
SymMatrix update_hessian(const SymMatrix& b, const Vector& s, const Vector& y);

struct HessianUpdate {
  SymMatrix b;
  bool skipped = false;
  std::optional<CholeskyFactor> factor;  // factor of b when the update ran
};
HessianUpdate update_hessian_with_factor(const SymMatrix& b, const Vector& s, const Vector& y);

}  // namespace conictr
