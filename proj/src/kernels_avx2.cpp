#include "conictr/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#define CONICTR_AVX2 __attribute__((target("avx2,fma")))

namespace conictr::kernels::avx2 {

CONICTR_AVX2 static inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

CONICTR_AVX2 double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

CONICTR_AVX2 void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

CONICTR_AVX2 void scale(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = alpha * x[i];
}

CONICTR_AVX2 void matvec(const double* a, const double* x, double* y, std::size_t rows,
                         std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

// Mirror-exact symmetry: the addend for (i,j) is alpha*round(v_i*v_j), the
// same exact value as for (j,i), so fmadd is safe here.
CONICTR_AVX2 void rank1(double* a, double alpha, const double* v, std::size_t n) {
  const __m256d al = _mm256_set1_pd(alpha);
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d vi = _mm256_set1_pd(v[i]);
    double* row = a + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d t = _mm256_mul_pd(vi, _mm256_loadu_pd(v + j));
      _mm256_storeu_pd(row + j, _mm256_fmadd_pd(al, t, _mm256_loadu_pd(row + j)));
    }
    // Tail must round exactly like the fused path above.
    for (; j < n; ++j) row[j] = __builtin_fma(alpha, v[i] * v[j], row[j]);
  }
}

// No fmadd: both products must round individually so that (i,j) and (j,i)
// see identical addends.
CONICTR_AVX2 void rank2_sub(double* a, const double* u, const double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d ui = _mm256_set1_pd(u[i]);
    const __m256d vi = _mm256_set1_pd(v[i]);
    double* row = a + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d p = _mm256_mul_pd(ui, _mm256_loadu_pd(v + j));
      const __m256d q = _mm256_mul_pd(vi, _mm256_loadu_pd(u + j));
      const __m256d r = _mm256_sub_pd(_mm256_loadu_pd(row + j), _mm256_add_pd(p, q));
      _mm256_storeu_pd(row + j, r);
    }
    for (; j < n; ++j) row[j] -= u[i] * v[j] + v[i] * u[j];
  }
}

}  // namespace conictr::kernels::avx2

#endif  // x86
