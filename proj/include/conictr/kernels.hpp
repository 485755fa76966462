#pragma once

#include <cstddef>
#include <string_view>

// Low-level dense kernels. Every operation has a scalar reference
// implementation and (on x86-64) an AVX2+FMA variant; the top-level entry
// points dispatch through a table selected at startup from CPU features.
// The two backends are equivalence-tested against each other; they are not
// bit-identical (FMA contraction and reassociated sums), so comparisons
// use tolerances.

namespace conictr::kernels {

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, const double* x, double* y, std::size_t n);
// y = A x with A dense row-major (rows x cols).
void matvec(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols);
// A += alpha v v^T (full square matrix).
void rank1(double* a, double alpha, const double* v, std::size_t n);
// A -= u v^T + v u^T (full square matrix).
void rank2_sub(double* a, const double* u, const double* v, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, const double* x, double* y, std::size_t n);
void matvec(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols);
void rank1(double* a, double alpha, const double* v, std::size_t n);
void rank2_sub(double* a, const double* u, const double* v, std::size_t n);
}  // namespace avx2
#endif

bool avx2_available();

// Name of the backend currently wired into the dispatch table
// ("avx2" or "scalar").
std::string_view active_backend();

// Test hook: "scalar", "avx2" or "auto". Not thread-safe; call before any
// concurrent use. Throws std::invalid_argument for unknown names and
// std::runtime_error if "avx2" is requested on a machine without it.
void force_backend(std::string_view name);

double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, const double* x, double* y, std::size_t n);
void matvec(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols);
void rank1(double* a, double alpha, const double* v, std::size_t n);
void rank2_sub(double* a, const double* u, const double* v, std::size_t n);

}  // namespace conictr::kernels
