#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "conictr/conic.hpp"
#include "conictr/linalg.hpp"

namespace conictr {

enum class Status { Converged, MaxIter, Stalled, SubproblemFailure };

const char* to_string(Status s);
const char* to_string(Strategy s);

struct SolverConfig {
  double grad_tol = 1e-5;      // stop when ||g|| <= grad_tol
  double eps0 = 1e-5;          // gauge constraint parameter
  double eta1 = 0.01;          // reject when ratio <= eta1
  double eta2 = 0.75;          // expand when ratio >= eta2 on the boundary
  double delta_shrink = 0.5;   // delta_1
  double delta_grow = 2.0;     // delta_2
  double delta0 = 1.0;
  double delta_max = 10.0;     // Delta-bar
  int max_iter = 5000;
  double delta_min = 1e-30;
  int max_consecutive_rejections = 60;
  bool check_bounds = false;   // record data for verify_pred_bounds
  Strategy strategy = Strategy::ADM;

  void validate() const;  // throws std::invalid_argument
};

/// Per-iterate state of the conic model m(s) = f + g^Ts/(1-a^Ts) + ...
struct ConicState {
  Vector x;
  double f = 0.0;
  Vector g;
  Vector a;
  SymMatrix b;
  double delta = 0.0;
};

struct TrialRecord {
  double delta = 0.0;      // radius the subproblem was solved with
  double pred = 0.0;
  double ared = 0.0;
  double ratio = 0.0;
  bool accepted = false;
  bool on_boundary = false;
  Strategy strategy = Strategy::ADM;  // QuadDogleg marks a-degenerated trials
  std::optional<TauHit> hit;
  double snorm = 0.0;
  double gauge = 1.0;      // 1 - a^T s (structural)
  double gnorm = 0.0;      // ||g|| at the iterate
  double anorm = 0.0;      // ||a|| actually used (0 for QuadDogleg)
  double cos_ag = 0.0;     // |a^Tg|/(||a|| ||g||)
  double bnorm_est = 0.0;  // spectral norm estimate (when check_bounds)
  double eps0 = 0.0;
};

struct RunReport {
  Status status = Status::Converged;
  int iters = 0;      // subproblem solves that produced a trial point
  int nf = 0;         // objective evaluations; nf = iters + 1
  int ng = 0;         // gradient evaluations; ng = accepted + 1
  int accepted = 0;
  int degenerate = 0; // degenerate subproblem returns (no trial point)
  double f_final = 0.0;
  double gnorm_final = 0.0;
  std::vector<TrialRecord> trace;
  double wall_time = 0.0;
};

using Objective = std::function<double(const Vector&)>;
using Gradient = std::function<Vector(const Vector&)>;

// Algorithm: solve the conic (or comparison) subproblem at the current
// iterate, accept when ared/pred > eta1, shrink otherwise; expand only on
// ratio >= eta2 with the step on the boundary; update a (beta-formulas)
// and B (damped BFGS) after each acceptance.
RunReport minimize(const Objective& objective, const Gradient& gradient, const Vector& x0,
                   const SolverConfig& cfg);

struct BoundViolation {
  std::size_t trial = 0;   // index into the trace
  const char* which = "";  // "boundary-hit" or "general"
  double pred = 0.0;
  double required = 0.0;
};

// Checks every recorded trial against the predicted-reduction lower
// bounds: boundary hits against pred >= c1/2 * Delta * ||g|| and every
// alternating-direction or quadratic-degeneration trial against
// pred >= c4/2 * ||g|| * min{Delta, 1/||a||, ||g||/||B||}, with
//   c1 = cos_ag / max(2 + eps0, 1 + Delta*||a||),
//   c4 = min{c1, cos_ag^2, cos_ag (1-eps0)/eps0}
// (c4 = 1 on quadratic-degeneration trials, where the classical Cauchy
// bound applies). Comparison-strategy (DCTR) trials carry no such
// guarantee and are skipped. Requires a trace recorded with check_bounds.
std::vector<BoundViolation> verify_pred_bounds(const std::vector<TrialRecord>& trace,
                                               double tolerance = 1e-8);

}  // namespace conictr
