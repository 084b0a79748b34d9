#include "mpsched/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace mpsched::kernels {

namespace detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void min_plus_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::min(y[i], a + x[i]);
}

}  // namespace detail

namespace {

struct Dispatch {
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  void (*min_plus)(double, const double*, double*, std::size_t);
  Backend backend;
};

Dispatch make_dispatch(Backend backend) {
#ifdef MPSCHED_HAVE_AVX2_KERNELS
  if (backend == Backend::avx2) {
    return {detail::axpy_avx2, detail::scale_avx2, detail::min_plus_avx2,
            Backend::avx2};
  }
#endif
  return {detail::axpy_scalar, detail::scale_scalar, detail::min_plus_scalar,
          Backend::scalar};
}

Backend default_backend() {
  if (const char* env = std::getenv("MPSCHED_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::avx2))
      return Backend::avx2;
  }
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Dispatch g_dispatch = make_dispatch(default_backend());

}  // namespace

bool backend_available(Backend backend) {
  if (backend == Backend::scalar) return true;
#ifdef MPSCHED_HAVE_AVX2_KERNELS
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return g_dispatch.backend; }

void force_backend(Backend backend) {
  if (!backend_available(backend))
    throw std::invalid_argument("kernel backend not available on this CPU");
  g_dispatch = make_dispatch(backend);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  g_dispatch.axpy(a, x, y, n);
}

void scale(double a, double* x, std::size_t n) { g_dispatch.scale(a, x, n); }

void min_plus(double a, const double* x, double* y, std::size_t n) {
  g_dispatch.min_plus(a, x, y, n);
}

}  // namespace mpsched::kernels
