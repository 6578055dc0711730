#pragma once

// Dense arithmetic kernels used by the inner loops (expected losses, moment
// maps, mixtures, conditional-gradient updates). Each kernel has a portable
// scalar reference and an AVX2/FMA variant; the variant is selected once at
// runtime from CPUID and can be pinned with MAXENT_SIMD=scalar|avx2.

#include <cstddef>
#include <span>
#include <string_view>

namespace maxent::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend) noexcept;

bool backend_supported(Backend backend) noexcept;
Backend active_backend() noexcept;
/// Pins the backend for the whole process. Throws if the CPU lacks it.
void set_backend(Backend backend);

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
/// y = A x, A row-major with a.size() == rows * x.size().
void gemv(std::span<const double> a, std::size_t rows, std::span<const double> x,
          std::span<double> y);
/// y = alpha * x + beta * y
void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void axpby(double alpha, const double* x, double beta, double* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define MAXENT_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void axpby(double alpha, const double* x, double beta, double* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace maxent::kernels
