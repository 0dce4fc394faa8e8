#pragma once

// Trigonometric series kernels behind the momentum sums.
//
// Every kernel has a scalar reference (one std::sin per term) and SIMD
// variants that advance the phases with a rotation recurrence, re-seeded
// from libm at fixed intervals so the accumulated rounding stays near
// machine precision. The variant is chosen once at runtime.

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>

namespace anyonrg::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

/// Backend used by the dispatching entry points. Resolved on first use from
/// the CPU features; `ANYONRG_KERNEL=scalar` forces the reference path.
Backend active_backend();

/// Backends usable on this machine (scalar always first).
std::span<const Backend> available_backends();

/// sum_m weights[m] * sin((m + 1/2) * theta)
double half_sine_series(std::span<const double> weights, double theta);
double half_sine_series(Backend b, std::span<const double> weights, double theta);

/// sum_{m < count} sin((m + 1/2) * theta), unit weights
double half_sine_sum(std::size_t count, double theta);
double half_sine_sum(Backend b, std::size_t count, double theta);

/// sum_{m < count} r^(m + 1/2) * sin((m + 1/2) * theta)   (Abel partial sum)
double damped_half_sine_sum(std::size_t count, double r, double theta);
double damped_half_sine_sum(Backend b, std::size_t count, double r, double theta);

namespace detail {
// Block length between re-seeds of the rotation recurrence, in terms.
inline constexpr std::size_t kReseedInterval = 128;

// sin/cos of phase * theta with the rounding of the product put back
// (fma two-product); at phase ~ 1e7 the plain product is off by ~1e-9.
inline double phase_sin(double phase, double theta) {
  const double hi = phase * theta;
  const double lo = std::fma(phase, theta, -hi);
  return std::sin(hi) + lo * std::cos(hi);
}
inline double phase_cos(double phase, double theta) {
  const double hi = phase * theta;
  const double lo = std::fma(phase, theta, -hi);
  return std::cos(hi) - lo * std::sin(hi);
}

double half_sine_series_scalar(std::span<const double> w, double theta);
double half_sine_sum_scalar(std::size_t count, double theta);
double damped_half_sine_sum_scalar(std::size_t count, double r, double theta);

#if defined(__x86_64__) || defined(_M_X64)
double half_sine_series_avx2(std::span<const double> w, double theta);
double half_sine_sum_avx2(std::size_t count, double theta);
double damped_half_sine_sum_avx2(std::size_t count, double r, double theta);
#endif

#if defined(__aarch64__)
double half_sine_series_neon(std::span<const double> w, double theta);
double half_sine_sum_neon(std::size_t count, double theta);
double damped_half_sine_sum_neon(std::size_t count, double r, double theta);
#endif
}  // namespace detail

}  // namespace anyonrg::kernels
