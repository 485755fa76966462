#include <doctest.h>

#include <cmath>

#include "conictr/conic.hpp"
#include "oracle_utils.hpp"

using namespace conictr;

namespace {

ConicSubproblem two_dim(Vector a, Vector g, double bscale, double delta, double eps0 = 1e-5) {
  ConicSubproblem p;
  p.a = std::move(a);
  p.g = std::move(g);
  p.b = SymMatrix::identity(2).scaled(bscale);
  p.delta = delta;
  p.eps0 = eps0;
  return p;
}

}  // namespace

TEST_CASE("tau_quantities worked examples") {
  {
    const auto q = tau_quantities(two_dim({1, 0}, {-1, 0}, 1.0, 0.3));
    CHECK(q.a_tau == doctest::Approx(2.0));
    REQUIRE(q.tau_cp);
    CHECK(*q.tau_cp == doctest::Approx(0.5));
    CHECK(q.cos_ag == doctest::Approx(1.0));
    CHECK(q.tau_delta == doctest::Approx(0.3));
    CHECK(q.tau_m == doctest::Approx(1.0));
    CHECK(q.tau_d == doctest::Approx(1.0 - 1e-5));
    CHECK(q.tau_u == doctest::Approx(1.0 + 1e-5));
    CHECK(q.tau_d < q.tau_m);
    CHECK(q.tau_m < q.tau_u);
  }
  {
    const auto q = tau_quantities(two_dim({1, 0}, {0, 1}, 1.0, 0.3));
    CHECK(q.a_tau == doctest::Approx(1.0));
    REQUIRE(q.tau_cp);
    CHECK(*q.tau_cp == doctest::Approx(0.0));
    CHECK(q.cos_ag == doctest::Approx(0.0));
  }
  {
    const auto q = tau_quantities(two_dim({1, 0}, {1, 0}, 1.0, 0.3));
    CHECK(q.a_tau == 0.0);
    CHECK(!q.tau_cp);
  }
  CHECK_THROWS_AS((void)tau_quantities(two_dim({0, 0}, {1, 0}, 1.0, 0.3)), ZeroHorizon);
}

TEST_CASE("rho evaluation") {
  const ConicSubproblem p = two_dim({1, 0}, {-1, 0}, 1.0, 0.3);
  CHECK(rho(p, 0.0) == 0.0);
  // 0.3*(-1)/0.7 + 0.09/(2*0.49), frozen from the direct formula
  CHECK(rho(p, 0.3) == doctest::Approx(-0.33673469387755106).epsilon(1e-14));
  // rho(tau) == phi(tau a) on random feasible tau
  auto rng = oracle::rng(19);
  for (int it = 0; it < 100; ++it) {
    const ConicSubproblem q = oracle::random_conic(rng, static_cast<int>(rng() % 3));
    const auto tq = tau_quantities(q);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double tau = u(rng) * std::min(tq.tau_delta, tq.tau_d);
    const Vector s = scaled(tau, q.a);
    CHECK(rho(q, tau) == doctest::Approx(oracle::phi(q, s)).epsilon(1e-10));
  }
}

TEST_CASE("tau stage worked examples") {
  {
    // P1, a_tau > 0, a^T g < 0: min(tau_cp, tau_delta) = tau_delta
    const auto r = solve_tau_stage(two_dim({1, 0}, {-1, 0}, 1.0, 0.3));
    CHECK(r.tau_case == TauCase::P1);
    CHECK(r.hit == TauHit::PlusTauDelta);
    CHECK(r.tau_star == doctest::Approx(0.3));
  }
  {
    // P3 with a_tau = 0: -tau_delta
    const auto r = solve_tau_stage(two_dim({1, 0}, {1, 0}, 1.0, 2.0));
    CHECK(r.tau_case == TauCase::P3);
    CHECK(r.hit == TauHit::MinusTauDelta);
    CHECK(r.tau_star == doctest::Approx(-2.0));
  }
  {
    // P1 with a_tau > 0, a^T g > 0: max(-tau_delta, tau_cp) and the tie
    // resolves to the boundary
    const auto r = solve_tau_stage(two_dim({1, 0}, {1, 0}, 3.0, 0.5));
    CHECK(r.tau_case == TauCase::P1);
    CHECK(r.tau_star == doctest::Approx(-0.5));
    CHECK(r.hit == TauHit::MinusTauDelta);
  }
}

TEST_CASE("tau stage P3 interior stationary point") {
  // find instances with a_tau < 0, tau_u < tau_cp < tau_delta; the stage
  // must return tau_cp and the grid confirms optimality
  auto rng = oracle::rng(41);
  int seen = 0;
  while (seen < 25) {
    ConicSubproblem p = oracle::random_conic(rng, 2);
    const auto q = tau_quantities(p);
    if (!(q.a_tau < 0.0) || !q.tau_cp) continue;
    if (!(*q.tau_cp > q.tau_u && *q.tau_cp < q.tau_delta)) continue;
    ++seen;
    const auto r = solve_tau_stage(p);
    CHECK(r.hit == TauHit::TauCP);
    CHECK(r.tau_star == doctest::Approx(*q.tau_cp));
    const auto grid = oracle::grid_min_rho(p, 20000);
    CHECK(rho(p, r.tau_star) <= grid.value + 1e-8 * (1.0 + std::abs(grid.value)));
  }
}

TEST_CASE("tau stage beats a dense grid on every case") {
  auto rng = oracle::rng(53);
  for (int c = 0; c < 3; ++c) {
    for (int it = 0; it < 60; ++it) {
      const ConicSubproblem p = oracle::random_conic(rng, c);
      const auto r = solve_tau_stage(p);
      const double na = norm2(p.a);
      CHECK(std::abs(r.tau_star) * na <= p.delta * (1.0 + 1e-12));
      CHECK(r.rho_value <= 0.0);
      const auto grid = oracle::grid_min_rho(p, 20000);
      CHECK(rho(p, r.tau_star) <= grid.value + 1e-8 * (1.0 + std::abs(grid.value)));
    }
  }
}

TEST_CASE("lemma monotonicity of rho") {
  auto rng = oracle::rng(59);
  int n_neg = 0, n_zero = 0, n_pos = 0;
  while (n_neg < 10 || n_pos < 10) {
    const ConicSubproblem p = oracle::random_conic(rng, 2);
    const auto q = tau_quantities(p);
    const oracle::RhoCoeffs rc(p);
    const double guard = 1e-6;
    auto decreasing_on = [&](double lo, double hi) {
      bool ok = true;
      for (int k = 0; k + 1 < 1000; ++k) {
        const double t0 = lo + (hi - lo) * k / 999.0;
        const double t1 = lo + (hi - lo) * (k + 1) / 999.0;
        if (rc(t1) > rc(t0) + 1e-9 * (1.0 + std::abs(rc(t0)))) ok = false;
      }
      return ok;
    };
    auto increasing_on = [&](double lo, double hi) {
      bool ok = true;
      for (int k = 0; k + 1 < 1000; ++k) {
        const double t0 = lo + (hi - lo) * k / 999.0;
        const double t1 = lo + (hi - lo) * (k + 1) / 999.0;
        if (rc(t1) < rc(t0) - 1e-9 * (1.0 + std::abs(rc(t0)))) ok = false;
      }
      return ok;
    };
    if (q.a_tau < 0.0 && q.tau_cp) {
      ++n_neg;
      // increasing left of the pole, decreasing on (tau_m, tau_cp),
      // increasing after tau_cp
      CHECK(increasing_on(q.tau_m - 2.0 / dot(p.a, p.a), q.tau_m - guard));
      if (*q.tau_cp - guard > q.tau_m + guard)
        CHECK(decreasing_on(q.tau_m + guard, *q.tau_cp - guard));
      CHECK(increasing_on(*q.tau_cp + guard, *q.tau_cp + 2.0 / dot(p.a, p.a)));
    } else if (q.a_tau > 0.0 && q.tau_cp) {
      ++n_pos;
      if (*q.tau_cp - guard > *q.tau_cp - 2.0 / dot(p.a, p.a))
        CHECK(decreasing_on(*q.tau_cp - 2.0 / dot(p.a, p.a), *q.tau_cp - guard));
      if (q.tau_m - guard > *q.tau_cp + guard)
        CHECK(increasing_on(*q.tau_cp + guard, q.tau_m - guard));
      CHECK(decreasing_on(q.tau_m + guard, q.tau_m + 2.0 / dot(p.a, p.a)));
    } else {
      ++n_zero;
    }
    if (n_neg + n_zero + n_pos > 2000) break;
  }
  CHECK(n_neg >= 10);
  CHECK(n_pos >= 10);
}

TEST_CASE("reduce at tau = 0 and the radius formula") {
  auto rng = oracle::rng(61);
  const std::size_t n = 4;
  ConicSubproblem p;
  p.a = {1.0, 0.0, 0.0, 0.0};
  p.g = oracle::random_vec(rng, n);
  p.b = oracle::random_spd(rng, n);
  p.delta = 0.5;
  p.eps0 = 1e-5;
  const NullSpaceBasis basis = nullspace_of(p.a);

  const QuadSubproblem r0 = reduce(p, 0.0, basis);
  CHECK(r0.delta == doctest::Approx(0.5));
  const Vector qg = apply_Qt(basis, p.g);
  for (std::size_t i = 0; i + 1 < n; ++i) CHECK(r0.g[i] == doctest::Approx(qg[i]));
  // B_tilde = Q^T B Q at tau = 0: probe quadratic forms
  for (int it = 0; it < 10; ++it) {
    const Vector u = oracle::random_vec(rng, n - 1);
    const Vector qu = apply_Q(basis, u);
    CHECK(dot(u, r0.b.multiply(u)) == doctest::Approx(dot(qu, p.b.multiply(qu))).epsilon(1e-11));
  }

  const QuadSubproblem r3 = reduce(p, 0.3, basis);
  CHECK(r3.delta == doctest::Approx(0.4));  // sqrt(0.25 - 0.09)
}

TEST_CASE("reduced matrix eigenvalues interlace") {
  auto rng = oracle::rng(67);
  for (int it = 0; it < 30; ++it) {
    const ConicSubproblem p = oracle::random_conic(rng, 0, 3, 6);
    const auto q = tau_quantities(p);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    const double tau = u(rng) * std::min(q.tau_delta, q.tau_d);
    const NullSpaceBasis basis = nullspace_of(p.a);
    const QuadSubproblem red = reduce(p, tau, basis);
    const auto ev_b = oracle::jacobi_eigenvalues(p.b);
    const auto ev_r = oracle::jacobi_eigenvalues(red.b);
    double lmin = ev_b[0], lmax = ev_b[0];
    for (double e : ev_b) {
      lmin = std::min(lmin, e);
      lmax = std::max(lmax, e);
    }
    const double scale = 1.0 - tau * dot(p.a, p.a);
    for (double e : ev_r) {
      CHECK(e * scale * scale >= lmin * (1.0 - 1e-9));
      CHECK(e * scale * scale <= lmax * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("adm degenerates to the quadratic dogleg") {
  {
    ConicSubproblem p = two_dim({0, 0}, {0.3, -0.4}, 1.0, 2.0);
    const SubproblemResult r = solve_conic_adm(p);
    CHECK(r.strategy == Strategy::QuadDogleg);
    CHECK(r.s[0] == doctest::Approx(-0.3));
    CHECK(r.s[1] == doctest::Approx(0.4));
    CHECK(r.gauge == 1.0);
    CHECK(!r.tau);
  }
  {
    // a orthogonal to g routes through the same path
    ConicSubproblem p = two_dim({1, 0}, {0, 1}, 1.0, 2.0);
    const SubproblemResult r = solve_conic_adm(p);
    CHECK(r.strategy == Strategy::QuadDogleg);
    CHECK(r.s[1] == doctest::Approx(-1.0));
  }
}

TEST_CASE("adm boundary exit example") {
  const SubproblemResult r = solve_conic_adm(two_dim({1, 0}, {-1, 0}, 1.0, 0.3));
  REQUIRE(r.tau);
  CHECK(r.tau->hit == TauHit::PlusTauDelta);
  CHECK(r.s[0] == doctest::Approx(0.3));
  CHECK(r.s[1] == doctest::Approx(0.0));
  CHECK(r.on_boundary);
  CHECK(r.pred == doctest::Approx(0.33673469387755106).epsilon(1e-12));
}

TEST_CASE("adm never increases the model and stays feasible") {
  auto rng = oracle::rng(71);
  for (int it = 0; it < 300; ++it) {
    const ConicSubproblem p = oracle::random_conic(rng, static_cast<int>(rng() % 3), 2, 6);
    const SubproblemResult r = solve_conic_adm(p);
    CHECK(norm2(r.s) <= p.delta * (1.0 + 1e-12));
    CHECK(std::abs(r.gauge) >= p.eps0 * (1.0 - 1e-12));
    CHECK(std::abs(1.0 - dot(p.a, r.s)) >= p.eps0 * (1.0 - 1e-6));
    CHECK(r.pred > 0.0);
    const double phi_s = oracle::phi(p, r.s);
    CHECK(r.pred == doctest::Approx(-phi_s).epsilon(1e-6));
    if (r.tau) {
      const double rho_star = oracle::RhoCoeffs(p)(r.tau->tau_star);
      CHECK(rho_star <= 1e-12);
      CHECK(phi_s <= rho_star + 1e-8 * (1.0 + std::abs(rho_star)));
    }
  }
}

TEST_CASE("predicted reduction lower bounds on random instances") {
  auto rng = oracle::rng(73);
  for (int it = 0; it < 300; ++it) {
    const ConicSubproblem p = oracle::random_conic(rng, static_cast<int>(rng() % 3), 2, 6);
    const SubproblemResult r = solve_conic_adm(p);
    const double na = norm2(p.a);
    const double ng = norm2(p.g);
    const double bnorm = spectral_norm_estimate(p.b) * (1.0 + 1e-6);
    REQUIRE(r.tau);
    const double cos_ag = std::abs(dot(p.a, p.g)) / (na * ng);
    const double c1 = cos_ag / std::max(2.0 + p.eps0, 1.0 + p.delta * na);
    if (r.tau->hit == TauHit::PlusTauDelta || r.tau->hit == TauHit::MinusTauDelta)
      CHECK(r.pred >= 0.5 * c1 * p.delta * ng * (1.0 - 1e-8));
    const double c4 = std::min(c1, std::min(cos_ag * cos_ag, cos_ag * (1.0 - p.eps0) / p.eps0));
    const double m = std::min(p.delta, std::min(1.0 / na, ng / bnorm));
    CHECK(r.pred >= 0.5 * c4 * ng * m * (1.0 - 1e-8));
  }
}

TEST_CASE("conic dogleg collapses to the quadratic one at a = 0") {
  auto rng = oracle::rng(79);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 2 + rng() % 5;
    ConicSubproblem p;
    p.a.assign(n, 0.0);
    p.g = oracle::random_vec(rng, n);
    if (norm2(p.g) < 0.1) continue;
    p.b = oracle::random_spd(rng, n);
    std::uniform_real_distribution<double> ud(0.05, 2.0);
    p.delta = ud(rng);
    p.eps0 = 1e-5;
    const SubproblemResult r = solve_conic_dogleg(p);
    const DoglegStep q = solve_dogleg({p.g, p.b, p.delta});
    for (std::size_t i = 0; i < n; ++i) CHECK(r.s[i] == doctest::Approx(q.s[i]).epsilon(1e-12));
    CHECK(r.strategy == Strategy::DCTR);
  }
}

TEST_CASE("conic dogleg newton step formula") {
  // a = 0.1 e1, g = e1, B = I: a^T B^{-1} g = 0.1, so
  // s_N = -g / (1 - 0.1) = (-1/0.9, 0); inside a wide ball the step is s_N.
  ConicSubproblem p = two_dim({0.1, 0.0}, {1.0, 0.0}, 1.0, 10.0);
  const SubproblemResult r = solve_conic_dogleg(p);
  CHECK(r.s[0] == doctest::Approx(-1.0 / 0.9).epsilon(1e-14));
  CHECK(r.s[1] == doctest::Approx(0.0));
  CHECK(!r.on_boundary);
  CHECK(std::abs(1.0 - dot(p.a, r.s)) >= p.eps0);
}

TEST_CASE("conic dogleg feasibility after clipping") {
  auto rng = oracle::rng(83);
  int solved = 0;
  for (int it = 0; it < 400; ++it) {
    const ConicSubproblem p = oracle::random_conic(rng, static_cast<int>(rng() % 3), 2, 6);
    try {
      const SubproblemResult r = solve_conic_dogleg(p);
      ++solved;
      CHECK(norm2(r.s) <= p.delta * (1.0 + 1e-12));
      CHECK(std::abs(r.gauge) >= p.eps0 * (1.0 - 1e-12));
      CHECK(r.pred > 0.0);
    } catch (const DegenerateConicStep&) {
      // legal outcome; the driver shrinks and retries
    }
  }
  CHECK(solved > 300);
}
