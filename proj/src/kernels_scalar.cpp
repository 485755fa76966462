#include "conictr/kernels.hpp"

// The rank-1/rank-2 update kernels keep dense symmetric matrices bit-exactly
// symmetric: every (i,j)/(j,i) pair is computed from the same exact addends
// in commuted order only. This relies on products being grouped v[i]*v[j]
// (never alpha*v[i] first) and on -ffp-contract=off, so keep the expression
// shapes below intact.

namespace conictr::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i];
}

void matvec(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

void rank1(double* a, double alpha, const double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = v[i];
    double* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] += alpha * (vi * v[j]);
  }
}

void rank2_sub(double* a, const double* u, const double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = u[i];
    const double vi = v[i];
    double* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] -= ui * v[j] + vi * u[j];
  }
}

}  // namespace conictr::kernels::scalar
