#include <atomic>
#include <cstdlib>
#include <string>

#include "maxent/error.hpp"
#include "maxent/kernels.hpp"

namespace maxent::kernels {
namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*max_abs_diff)(const double*, const double*, std::size_t);
  void (*gemv)(const double*, std::size_t, std::size_t, const double*, double*);
  void (*axpby)(double, const double*, double, double*, std::size_t);
};

constexpr Table kScalar{scalar::dot, scalar::sum, scalar::max_abs_diff, scalar::gemv,
                        scalar::axpby};
#ifdef MAXENT_HAVE_AVX2_KERNELS
constexpr Table kAvx2{avx2::dot, avx2::sum, avx2::max_abs_diff, avx2::gemv, avx2::axpby};
#endif

bool cpu_has_avx2() noexcept {
#ifdef MAXENT_HAVE_AVX2_KERNELS
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("MAXENT_SIMD");
  if (env != nullptr) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return Backend::Avx2;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

const Table& table() {
#ifdef MAXENT_HAVE_AVX2_KERNELS
  if (backend_slot().load(std::memory_order_relaxed) == Backend::Avx2) return kAvx2;
#endif
  return kScalar;
}

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, "kernel operand lengths differ");
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend backend) noexcept {
  return backend == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() noexcept { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_supported(backend))
    throw Error(ErrorCode::InvalidArgument, "SIMD backend not supported on this CPU");
  backend_slot().store(backend, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return table().dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> a) { return table().sum(a.data(), a.size()); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return table().max_abs_diff(a.data(), b.data(), a.size());
}

void gemv(std::span<const double> a, std::size_t rows, std::span<const double> x,
          std::span<double> y) {
  check_same(a.size(), rows * x.size());
  check_same(y.size(), rows);
  table().gemv(a.data(), rows, x.size(), x.data(), y.data());
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y) {
  check_same(x.size(), y.size());
  table().axpby(alpha, x.data(), beta, y.data(), x.size());
}

}  // namespace maxent::kernels
