#include "conictr/kernels.hpp"

#include <stdexcept>
#include <string>

namespace conictr::kernels {

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, const double*, double*, std::size_t);
  void (*matvec)(const double*, const double*, double*, std::size_t, std::size_t);
  void (*rank1)(double*, double, const double*, std::size_t);
  void (*rank2_sub)(double*, const double*, const double*, std::size_t);
  const char* name;
};

constexpr Table kScalar = {scalar::dot,    scalar::axpy,  scalar::scale,
                           scalar::matvec, scalar::rank1, scalar::rank2_sub,
                           "scalar"};

#if defined(__x86_64__) || defined(__i386__)
constexpr Table kAvx2 = {avx2::dot,    avx2::axpy,  avx2::scale,
                         avx2::matvec, avx2::rank1, avx2::rank2_sub,
                         "avx2"};
#endif

Table pick_default() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return kAvx2;
#endif
  return kScalar;
}

Table g_active = pick_default();

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::string_view active_backend() { return g_active.name; }

void force_backend(std::string_view name) {
  if (name == "auto") {
    g_active = pick_default();
    return;
  }
  if (name == "scalar") {
    g_active = kScalar;
    return;
  }
  if (name == "avx2") {
#if defined(__x86_64__) || defined(__i386__)
    if (avx2_available()) {
      g_active = kAvx2;
      return;
    }
#endif
    throw std::runtime_error("avx2 backend not available on this machine");
  }
  throw std::invalid_argument("unknown kernel backend: " + std::string(name));
}

double dot(const double* x, const double* y, std::size_t n) { return g_active.dot(x, y, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  g_active.axpy(alpha, x, y, n);
}
void scale(double alpha, const double* x, double* y, std::size_t n) {
  g_active.scale(alpha, x, y, n);
}
void matvec(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols) {
  g_active.matvec(a, x, y, rows, cols);
}
void rank1(double* a, double alpha, const double* v, std::size_t n) {
  g_active.rank1(a, alpha, v, n);
}
void rank2_sub(double* a, const double* u, const double* v, std::size_t n) {
  g_active.rank2_sub(a, u, v, n);
}

}  // namespace conictr::kernels
