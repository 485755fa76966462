#pragma once

#include "conictr/linalg.hpp"

namespace conictr {

/// Quadratic trust-region subproblem: minimize g^T s + s^T B s / 2 over
/// ||s|| <= delta, with B positive definite and g != 0.
struct QuadSubproblem {
  Vector g;
  SymMatrix b;
  double delta = 0.0;
};

enum class DoglegBranch { Newton, ScaledCauchy, Interpolated };

struct DoglegStep {
  Vector s;
  double pred = 0.0;  // model decrease, always > 0
  bool on_boundary = false;
  DoglegBranch branch = DoglegBranch::Newton;
};

// Single-dogleg approximate solve. Full Newton step when it fits in the
// ball; the scaled steepest-descent step when even the Cauchy point does
// not; otherwise the dogleg interpolation hitting the boundary. Throws
// NotPositiveDefinite via cholesky().
DoglegStep solve_dogleg(const QuadSubproblem& p);
// Variant reusing an existing factorization of p.b.
DoglegStep solve_dogleg(const Vector& g, const SymMatrix& b, const CholeskyFactor& factor,
                        double delta);

}  // namespace conictr
