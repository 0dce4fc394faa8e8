#include "anyonrg/kernels.hpp"

#include <cstdlib>
#include <string>
#include <vector>

namespace anyonrg::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::vector<Backend> detect() {
  std::vector<Backend> out{Backend::scalar};
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) out.push_back(Backend::avx2);
#endif
#if defined(__aarch64__)
  out.push_back(Backend::neon);
#endif
  return out;
}

Backend choose() {
  const auto& all = available_backends();
  if (const char* env = std::getenv("ANYONRG_KERNEL")) {
    const std::string want(env);
    for (Backend b : all) {
      if (backend_name(b) == want) return b;
    }
  }
  return all.back();
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

std::span<const Backend> available_backends() {
  static const std::vector<Backend> all = detect();
  return all;
}

Backend active_backend() {
  static const Backend b = choose();
  return b;
}

double half_sine_series(Backend b, std::span<const double> weights, double theta) {
  switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2: return detail::half_sine_series_avx2(weights, theta);
#endif
#if defined(__aarch64__)
    case Backend::neon: return detail::half_sine_series_neon(weights, theta);
#endif
    default: return detail::half_sine_series_scalar(weights, theta);
  }
}

double half_sine_sum(Backend b, std::size_t count, double theta) {
  switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2: return detail::half_sine_sum_avx2(count, theta);
#endif
#if defined(__aarch64__)
    case Backend::neon: return detail::half_sine_sum_neon(count, theta);
#endif
    default: return detail::half_sine_sum_scalar(count, theta);
  }
}

double damped_half_sine_sum(Backend b, std::size_t count, double r, double theta) {
  switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2: return detail::damped_half_sine_sum_avx2(count, r, theta);
#endif
#if defined(__aarch64__)
    case Backend::neon: return detail::damped_half_sine_sum_neon(count, r, theta);
#endif
    default: return detail::damped_half_sine_sum_scalar(count, r, theta);
  }
}

double half_sine_series(std::span<const double> weights, double theta) {
  return half_sine_series(active_backend(), weights, theta);
}

double half_sine_sum(std::size_t count, double theta) {
  return half_sine_sum(active_backend(), count, theta);
}

double damped_half_sine_sum(std::size_t count, double r, double theta) {
  return damped_half_sine_sum(active_backend(), count, r, theta);
}

}  // namespace anyonrg::kernels
