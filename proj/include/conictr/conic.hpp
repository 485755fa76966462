#pragma once

#include <optional>

#include "conictr/dogleg.hpp"
#include "conictr/linalg.hpp"

namespace conictr {

struct ZeroHorizon : std::invalid_argument {
  explicit ZeroHorizon(const std::string& what) : std::invalid_argument(what) {}
};

/// Conic trust-region subproblem: minimize
///   phi(s) = g^T s/(1 - a^T s) + s^T B s / (2 (1 - a^T s)^2)
/// over ||s|| <= delta, |1 - a^T s| >= eps0, with B positive definite.
struct ConicSubproblem {
  Vector a;  // horizon vector; may be zero (quadratic degeneration)
  Vector g;
  SymMatrix b;
  double delta = 0.0;
  double eps0 = 1e-5;
};

/// Quantities of the one-dimensional restriction rho(tau) = phi(tau*a).
///
/// tau_d and tau_u are realized in floating point so that the *evaluated*
/// gauge 1 - tau*||a||^2 clears eps0 for every tau in the feasible set
/// (a few-ulp inward adjustment of (1 -+ eps0)/||a||^2); rounding would
/// otherwise let boundary optima land epsilon-short of feasibility.
struct TauQuantities {
  double tau_delta = 0.0;  // Delta/||a||
  double tau_d = 0.0;      // (1-eps0)/||a||^2
  double tau_m = 0.0;      // 1/||a||^2, the pole
  double tau_u = 0.0;      // (1+eps0)/||a||^2
  double a_tau = 0.0;      // a^T B a - (a^T a)(a^T g)
  std::optional<double> tau_cp;  // -a^T g / a_tau, absent when a_tau = 0
  double cos_ag = 0.0;     // |a^T g| / (||a|| ||g||)
};

enum class TauCase { P1, P2, P3 };
enum class TauHit { Zero, PlusTauDelta, MinusTauDelta, TauD, TauU, TauCP };

struct TauResult {
  double tau_star = 0.0;
  TauCase tau_case = TauCase::P1;
  TauHit hit = TauHit::Zero;
  double rho_value = 0.0;  // rho(tau_star) <= 0
};

enum class Strategy { ADM, DCTR, QuadDogleg };

struct SubproblemResult {
  Vector s;
  double pred = 0.0;     // conic model decrease (Eq. form: -g^Ts/D - s^TBs/(2D^2))
  bool on_boundary = false;
  Strategy strategy = Strategy::ADM;
  std::optional<TauResult> tau;  // present when the tau-stage ran
  double gauge = 1.0;    // D = 1 - a^T s, the structural value used for pred
};

// Throws ZeroHorizon when ||a|| = 0.
TauQuantities tau_quantities(const ConicSubproblem& p);

// rho(tau) = tau a^Tg/(1 - tau a^Ta) + tau^2 a^TBa/(2 (1 - tau a^Ta)^2).
// Throws PoleAtTauM when the denominator underflows to zero.
double rho(const ConicSubproblem& p, double tau);

// Closed-form solve of min rho(tau) over
// Omega = {|tau| ||a|| <= delta} ∩ {tau <= tau_d or tau >= tau_u},
// by the P1/P2/P3 case analysis. Requires a != 0; a^T g == 0 returns
// tau* = 0 (hit Zero), which callers route to the quadratic path.
TauResult solve_tau_stage(const ConicSubproblem& p);

// Null-space reduction at a fixed tau*: the remaining subproblem in
// y = Q u is the quadratic (g_tilde, B_tilde, delta_tilde) with
//   delta_tilde = sqrt(delta^2 - tau*^2 ||a||^2),
//   g_tilde = Q^T g/(1-tau* a^Ta) + tau* Q^T B a/(1-tau* a^Ta)^2,
//   B_tilde = Q^T B Q/(1-tau* a^Ta)^2.
QuadSubproblem reduce(const ConicSubproblem& p, double tau_star, const NullSpaceBasis& basis);

// Alternating-direction solve: tau-stage along a, then the reduced
// quadratic dogleg in the null space of a. a = 0 or a^T g ~ 0 degenerates
// to the plain quadratic dogleg (strategy QuadDogleg, a treated as zero).
// `factor`, when given, must factor p.b.
SubproblemResult solve_conic_adm(const ConicSubproblem& p, const CholeskyFactor* factor = nullptr);

// Conic-dogleg comparison strategy: Algorithm-1.1 template on the conic
// Newton/Cauchy steps, then backtracking onto the gauge-feasible set.
// Throws DegenerateConicStep when a denominator vanishes or no model
// decrease remains.
SubproblemResult solve_conic_dogleg(const ConicSubproblem& p,
                                    const CholeskyFactor* factor = nullptr);

// pred per the conic model with precomputed gauge D = 1 - a^T s.
double conic_pred(const Vector& g, const SymMatrix& b, const Vector& s, double gauge);

}  // namespace conictr
