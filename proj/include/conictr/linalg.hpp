#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conictr/errors.hpp"

namespace conictr {

using Vector = std::vector<double>;

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
// y += alpha * x
void axpy(double alpha, const Vector& x, Vector& y);
Vector scaled(double alpha, const Vector& x);

/// Dense symmetric matrix, full row-major storage. Writes go through set(),
/// which mirrors into both triangles; the arithmetic that builds these
/// matrices (rank-1/rank-2 kernels) preserves bit-exact symmetry, so the
/// upper triangle is always an exact copy of the lower one.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  const double* data() const { return a_.data(); }
  double* data() { return a_.data(); }

  Vector multiply(const Vector& x) const;

  SymMatrix scaled(double k) const;

  // A += alpha * v v^T
  void add_rank1(double alpha, const Vector& v);
  // A -= u v^T + v u^T
  void sub_rank2(const Vector& u, const Vector& v);

  bool is_symmetric_exact() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Lower-triangular Cholesky factor with B = L L^T, diag(L) > 0.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;
  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return l_[i * n_ + j]; }
  // Solves L L^T x = b.
  Vector solve(const Vector& b) const;
  // Factor of k^2 * B, i.e. L scaled by k (k > 0).
  CholeskyFactor scaled(double k) const;

 private:
  friend std::optional<CholeskyFactor> try_cholesky(const SymMatrix&);
  std::size_t n_ = 0;
  std::vector<double> l_;
};

std::optional<CholeskyFactor> try_cholesky(const SymMatrix& b);
// Throws NotPositiveDefinite when a pivot is <= 0 or non-finite.
CholeskyFactor cholesky(const SymMatrix& b);
// Throws DimensionMismatch.
Vector solve_spd(const CholeskyFactor& f, const Vector& b);

/// Householder reflector H = I - beta v v^T with H a = sign*||a||*e1.
/// Columns 2..n of H form an orthonormal basis Q of {y : a^T y = 0}; Q is
/// never materialized, both applications are O(n).
struct NullSpaceBasis {
  Vector v;
  double beta = 0.0;
  double sign = -1.0;
  std::size_t n = 0;
};

// Throws ZeroVector when ||a|| = 0 and Dimension1 when n = 1.
NullSpaceBasis nullspace_of(const Vector& a);
// u in R^{n-1} -> Q u in R^n.
Vector apply_Q(const NullSpaceBasis& basis, const Vector& u);
// x in R^n -> Q^T x in R^{n-1}.
Vector apply_Qt(const NullSpaceBasis& basis, const Vector& x);
// H B H for the basis reflector; O(n^2).
SymMatrix reflect_symmetric(const NullSpaceBasis& basis, const SymMatrix& b);

// Spectral norm estimate by power iteration (deterministic start vector).
double spectral_norm_estimate(const SymMatrix& b, int iters = 50);

}  // namespace conictr
