#include "conictr/linalg.hpp"

#include <cmath>
#include <cstring>

#include "conictr/kernels.hpp"

namespace conictr {

double dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
  return kernels::dot(x.data(), y.data(), x.size());
}

double norm2(const Vector& x) { return std::sqrt(kernels::dot(x.data(), x.data(), x.size())); }

void axpy(double alpha, const Vector& x, Vector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: length mismatch");
  kernels::axpy(alpha, x.data(), y.data(), x.size());
}

Vector scaled(double alpha, const Vector& x) {
  Vector y(x.size());
  kernels::scale(alpha, x.data(), y.data(), x.size());
  return y;
}

Vector SymMatrix::multiply(const Vector& x) const {
  if (x.size() != n_) throw DimensionMismatch("SymMatrix::multiply: length mismatch");
  Vector y(n_);
  kernels::matvec(a_.data(), x.data(), y.data(), n_, n_);
  return y;
}

SymMatrix SymMatrix::scaled(double k) const {
  SymMatrix m(*this);
  for (double& v : m.a_) v *= k;
  return m;
}

void SymMatrix::add_rank1(double alpha, const Vector& v) {
  if (v.size() != n_) throw DimensionMismatch("add_rank1: length mismatch");
  kernels::rank1(a_.data(), alpha, v.data(), n_);
}

void SymMatrix::sub_rank2(const Vector& u, const Vector& v) {
  if (u.size() != n_ || v.size() != n_) throw DimensionMismatch("sub_rank2: length mismatch");
  kernels::rank2_sub(a_.data(), u.data(), v.data(), n_);
}

bool SymMatrix::is_symmetric_exact() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (a_[i * n_ + j] != a_[j * n_ + i]) return false;
  return true;
}

Vector CholeskyFactor::solve(const Vector& b) const {
  if (b.size() != n_) throw DimensionMismatch("CholeskyFactor::solve: length mismatch");
  Vector x(b);
  // Forward substitution L y = b.
  for (std::size_t i = 0; i < n_; ++i) {
    const double s = kernels::dot(l_.data() + i * n_, x.data(), i);
    x[i] = (x[i] - s) / l_[i * n_ + i];
  }
  // Back substitution L^T x = y, column oriented.
  for (std::size_t ii = n_; ii-- > 0;) {
    x[ii] /= l_[ii * n_ + ii];
    const double xi = x[ii];
    const double* row = l_.data() + ii * n_;
    for (std::size_t j = 0; j < ii; ++j) x[j] -= row[j] * xi;
  }
  return x;
}

CholeskyFactor CholeskyFactor::scaled(double k) const {
  CholeskyFactor f(*this);
  for (double& v : f.l_) v *= k;
  return f;
}

std::optional<CholeskyFactor> try_cholesky(const SymMatrix& b) {
  const std::size_t n = b.size();
  CholeskyFactor f;
  f.n_ = n;
  f.l_.assign(n * n, 0.0);
  double* l = f.l_.data();
  const double* a = b.data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double s = kernels::dot(l + i * n, l + j * n, j);
      if (j == i) {
        const double d = a[i * n + i] - s;
        if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
        l[i * n + i] = std::sqrt(d);
      } else {
        l[i * n + j] = (a[i * n + j] - s) / l[j * n + j];
      }
    }
  }
  return f;
}

CholeskyFactor cholesky(const SymMatrix& b) {
  auto f = try_cholesky(b);
  if (!f) throw NotPositiveDefinite("cholesky: matrix is not positive definite");
  return *std::move(f);
}

Vector solve_spd(const CholeskyFactor& f, const Vector& b) { return f.solve(b); }

NullSpaceBasis nullspace_of(const Vector& a) {
  const std::size_t n = a.size();
  if (n == 1) throw Dimension1("nullspace_of: null space of a 1-vector is {0}");
  const double na = norm2(a);
  if (na == 0.0) throw ZeroVector("nullspace_of: zero vector has no horizon direction");

  NullSpaceBasis basis;
  basis.n = n;
  basis.sign = a[0] > 0.0 ? -1.0 : (a[0] < 0.0 ? 1.0 : -1.0);
  basis.v = a;
  basis.v[0] -= basis.sign * na;  // v = a - sign*||a||*e1, no cancellation
  const double vtv = kernels::dot(basis.v.data(), basis.v.data(), n);
  basis.beta = vtv > 0.0 ? 2.0 / vtv : 0.0;
  return basis;
}

Vector apply_Q(const NullSpaceBasis& basis, const Vector& u) {
  if (u.size() + 1 != basis.n) throw DimensionMismatch("apply_Q: expected length n-1");
  Vector y(basis.n, 0.0);
  std::memcpy(y.data() + 1, u.data(), u.size() * sizeof(double));
  const double c = basis.beta * kernels::dot(basis.v.data(), y.data(), basis.n);
  kernels::axpy(-c, basis.v.data(), y.data(), basis.n);
  return y;
}

Vector apply_Qt(const NullSpaceBasis& basis, const Vector& x) {
  if (x.size() != basis.n) throw DimensionMismatch("apply_Qt: expected length n");
  Vector w(x);
  const double c = basis.beta * kernels::dot(basis.v.data(), w.data(), basis.n);
  kernels::axpy(-c, basis.v.data(), w.data(), basis.n);
  return Vector(w.begin() + 1, w.end());
}

SymMatrix reflect_symmetric(const NullSpaceBasis& basis, const SymMatrix& b) {
  if (b.size() != basis.n) throw DimensionMismatch("reflect_symmetric: size mismatch");
  // H B H = B - v p^T - p v^T with p = beta*(B v) - (beta^2 (v^T B v)/2) v.
  SymMatrix m = b;
  const Vector w = b.multiply(basis.v);
  const double vbv = dot(basis.v, w);
  Vector p = scaled(basis.beta, w);
  axpy(-0.5 * basis.beta * basis.beta * vbv, basis.v, p);
  m.sub_rank2(basis.v, p);
  return m;
}

double spectral_norm_estimate(const SymMatrix& b, int iters) {
  const std::size_t n = b.size();
  if (n == 0) return 0.0;
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i % 97);
  double lambda = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vector w = b.multiply(v);
    const double nw = norm2(w);
    if (nw == 0.0 || !std::isfinite(nw)) return std::abs(lambda);
    kernels::scale(1.0 / nw, w.data(), v.data(), n);
    lambda = nw;
  }
  // One Rayleigh quotient to tighten the final iterate.
  Vector w = b.multiply(v);
  return std::abs(dot(v, w));
}

}  // namespace conictr
