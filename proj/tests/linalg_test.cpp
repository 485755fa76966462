#include <doctest.h>

#include <cmath>

#include "conictr/linalg.hpp"
#include "oracle_utils.hpp"

using namespace conictr;

TEST_CASE("cholesky identity") {
  const SymMatrix b = SymMatrix::identity(3);
  const CholeskyFactor f = cholesky(b);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j <= i; ++j) CHECK(f(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("cholesky 2x2") {
  SymMatrix b(2);
  b.set(0, 0, 4.0);
  b.set(1, 0, 2.0);
  b.set(1, 1, 3.0);
  const CholeskyFactor f = cholesky(b);
  CHECK(f(0, 0) == doctest::Approx(2.0));
  CHECK(f(1, 0) == doctest::Approx(1.0));
  CHECK(f(1, 1) == doctest::Approx(std::sqrt(2.0)));
  // multiply back: L L^T = B
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 2; ++k) s += f(i, k) * f(j, k);
      CHECK(s == doctest::Approx(b(i, j)).epsilon(1e-14));
    }
}

TEST_CASE("cholesky rejects indefinite input") {
  SymMatrix b(2);
  b.set(0, 0, 1.0);
  b.set(1, 0, 2.0);
  b.set(1, 1, 1.0);
  CHECK_THROWS_AS((void)cholesky(b), NotPositiveDefinite);
  CHECK(!try_cholesky(b));
}

TEST_CASE("solve_spd examples") {
  {
    const CholeskyFactor f = cholesky(SymMatrix::identity(2));
    const Vector x = solve_spd(f, {3.0, -1.0});
    CHECK(x[0] == 3.0);
    CHECK(x[1] == -1.0);
  }
  {
    SymMatrix b(2);
    b.set(0, 0, 4.0);
    b.set(1, 0, 2.0);
    b.set(1, 1, 3.0);
    const Vector rhs = {2.0, 1.0};
    const Vector x = solve_spd(cholesky(b), rhs);
    const Vector bx = b.multiply(x);
    double res = std::hypot(bx[0] - rhs[0], bx[1] - rhs[1]);
    CHECK(res <= 1e-10 * (1.0 + norm2(rhs)));
  }
  {
    SymMatrix b(2);
    b.set(0, 0, 2.0);
    b.set(1, 1, 4.0);
    const Vector x = solve_spd(cholesky(b), {2.0, 4.0});
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS((void)solve_spd(cholesky(SymMatrix::identity(2)), Vector(3, 0.0)),
                  DimensionMismatch);
}

TEST_CASE("cholesky-solve round trip on random spd") {
  auto rng = oracle::rng(11);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + rng() % 49;
    const SymMatrix b = oracle::random_spd(rng, n);
    const Vector rhs = oracle::random_vec(rng, n);
    const Vector x = solve_spd(cholesky(b), rhs);
    Vector r = b.multiply(x);
    axpy(-1.0, rhs, r);
    CHECK(norm2(r) <= 1e-10 * (1.0 + norm2(rhs)));
  }
}

TEST_CASE("nullspace_of axis vector") {
  const NullSpaceBasis basis = nullspace_of({1.0, 0.0, 0.0});
  // columns of Q span {e2, e3}: Q^T e1 = 0 and isometry on the complement
  const Vector q1 = apply_Q(basis, {1.0, 0.0});
  const Vector q2 = apply_Q(basis, {0.0, 1.0});
  CHECK(std::abs(q1[0]) <= 1e-15);
  CHECK(std::abs(q2[0]) <= 1e-15);
  CHECK(norm2(q1) == doctest::Approx(1.0));
  CHECK(norm2(q2) == doctest::Approx(1.0));
  CHECK(std::abs(dot(q1, q2)) <= 1e-15);
}

TEST_CASE("nullspace_of diagonal vector") {
  const double r = 1.0 / std::sqrt(2.0);
  const NullSpaceBasis basis = nullspace_of({r, r});
  const Vector q = apply_Q(basis, {1.0});
  CHECK(std::abs(q[0] * r + q[1] * r) <= 1e-12);
  CHECK(norm2(q) == doctest::Approx(1.0));
}

TEST_CASE("nullspace_of error cases") {
  CHECK_THROWS_AS((void)nullspace_of(Vector{0.0, 0.0}), ZeroVector);
  CHECK_THROWS_AS((void)nullspace_of(Vector{2.0}), Dimension1);
}

TEST_CASE("apply_Q / apply_Qt") {
  const NullSpaceBasis basis = nullspace_of({1.0, 0.0, 0.0});
  CHECK(norm2(apply_Q(basis, {0.0, 0.0})) == 0.0);
  // dropping the a-component of (5, 1, 2) keeps norm sqrt(5)
  const Vector qt = apply_Qt(basis, {5.0, 1.0, 2.0});
  CHECK(norm2(qt) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  // Q Q^T is the projector onto a-perp
  auto rng = oracle::rng(23);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 2 + rng() % 6;
    Vector a = oracle::random_vec(rng, n);
    if (norm2(a) < 0.1) continue;
    const NullSpaceBasis nb = nullspace_of(a);
    const Vector v = oracle::random_vec(rng, n);
    const Vector proj = apply_Q(nb, apply_Qt(nb, v));
    Vector expect = v;
    axpy(-dot(a, v) / dot(a, a), a, expect);
    Vector diff = proj;
    axpy(-1.0, expect, diff);
    CHECK(norm2(diff) <= 1e-12 * (1.0 + norm2(v)));
    // Pythagoras: |Q^T v|^2 + (a^T v/|a|)^2 = |v|^2
    const double c = dot(a, v) / norm2(a);
    const double lhs = dot(apply_Qt(nb, v), apply_Qt(nb, v)) + c * c;
    CHECK(lhs == doctest::Approx(dot(v, v)).epsilon(1e-10));
  }
}

TEST_CASE("basis orthonormality and isometry over random horizons") {
  auto rng = oracle::rng(5);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + rng() % 49;
    Vector a = oracle::random_vec(rng, n);
    if (norm2(a) < 1e-3) a[0] += 1.0;
    const NullSpaceBasis basis = nullspace_of(a);

    // ||Q^T a|| <= 1e-12 ||a||
    Vector qa = apply_Qt(basis, a);
    CHECK(norm2(qa) <= 1e-12 * norm2(a));

    // isometry ||Q u|| = ||u|| and Q^T Q = I via random probes
    const Vector u = oracle::random_vec(rng, n - 1);
    const Vector qu = apply_Q(basis, u);
    CHECK(norm2(qu) == doctest::Approx(norm2(u)).epsilon(1e-12));
    CHECK(std::abs(dot(a, qu)) <= 1e-12 * norm2(a) * (norm2(u) + 1e-300));
    const Vector v = oracle::random_vec(rng, n - 1);
    CHECK(dot(apply_Q(basis, u), apply_Q(basis, v)) ==
          doctest::Approx(dot(u, v)).epsilon(1e-11));
  }
}

TEST_CASE("explicit Q columns are orthonormal on small dimensions") {
  auto rng = oracle::rng(31);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 2 + rng() % 7;
    Vector a = oracle::random_vec(rng, n);
    if (norm2(a) < 0.1) continue;
    const NullSpaceBasis basis = nullspace_of(a);
    std::vector<Vector> cols;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Vector ej(n - 1, 0.0);
      ej[j] = 1.0;
      cols.push_back(apply_Q(basis, ej));
    }
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const double want = i == j ? 1.0 : 0.0;
        CHECK(std::abs(dot(cols[i], cols[j]) - want) <= 1e-12);
      }
  }
}

TEST_CASE("reflect_symmetric matches H B H") {
  auto rng = oracle::rng(77);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 2 + rng() % 5;
    Vector a = oracle::random_vec(rng, n);
    if (norm2(a) < 0.1) continue;
    const NullSpaceBasis basis = nullspace_of(a);
    const SymMatrix b = oracle::random_spd(rng, n);
    const SymMatrix hbh = reflect_symmetric(basis, b);
    CHECK(hbh.is_symmetric_exact());
    // probe: x^T (H B H) y == (H x)^T B (H y)
    const Vector x = oracle::random_vec(rng, n);
    const Vector y = oracle::random_vec(rng, n);
    auto reflect = [&](const Vector& v) {
      Vector out = v;
      const double c = basis.beta * dot(basis.v, v);
      axpy(-c, basis.v, out);
      return out;
    };
    const double lhs = dot(x, hbh.multiply(y));
    const double rhs = dot(reflect(x), b.multiply(reflect(y)));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("spectral norm estimate") {
  auto rng = oracle::rng(13);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 2 + rng() % 7;
    const SymMatrix b = oracle::random_spd(rng, n);
    const auto ev = oracle::jacobi_eigenvalues(b);
    double lmax = 0.0;
    for (double e : ev) lmax = std::max(lmax, std::abs(e));
    CHECK(spectral_norm_estimate(b) == doctest::Approx(lmax).epsilon(1e-6));
  }
}
