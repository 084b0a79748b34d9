#pragma once

#include <cstddef>

// Dense vector kernels used by the simplex pivot loops and the
// all-pairs-shortest-path closure. A scalar reference implementation is
// always available; on x86-64 an AVX2 variant is selected at runtime when
// the CPU supports it. The two are equivalence-tested against each other.
namespace mpsched::kernels {

enum class Backend { scalar, avx2 };

// Backend chosen for this process. Honors the MPSCHED_KERNEL environment
// variable ("scalar" or "avx2") on first use.
Backend active_backend();

// Overrides the dispatch, e.g. to pin the scalar path in tests. Throws
// std::invalid_argument if the backend is not available on this CPU.
void force_backend(Backend backend);

bool backend_available(Backend backend);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// x[i] *= a
void scale(double a, double* x, std::size_t n);

// y[i] = min(y[i], a + x[i])
void min_plus(double a, const double* x, double* y, std::size_t n);

namespace detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void scale_scalar(double a, double* x, std::size_t n);
void min_plus_scalar(double a, const double* x, double* y, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
#define MPSCHED_HAVE_AVX2_KERNELS 1
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scale_avx2(double a, double* x, std::size_t n);
void min_plus_avx2(double a, const double* x, double* y, std::size_t n);
#endif

}  // namespace detail

}  // namespace mpsched::kernels
