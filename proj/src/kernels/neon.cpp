#include "anyonrg/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace anyonrg::kernels::detail {
namespace {

constexpr std::size_t kLanes = 2;

template <class WeightFn>
double rotated_sum(std::size_t count, double theta, double r, WeightFn&& weight_block) {
  const double rstep = (r == 1.0) ? 1.0 : std::pow(r, static_cast<double>(kLanes));
  const float64x2_t sin_step = vdupq_n_f64(rstep * std::sin(kLanes * theta));
  const float64x2_t cos_step = vdupq_n_f64(rstep * std::cos(kLanes * theta));

  // lanes folded per block, see the AVX2 variant
  double total = 0.0;
  const std::size_t full = count - count % kLanes;
  std::size_t m = 0;
  while (m < full) {
    const std::size_t block_end = std::min(full, m + kReseedInterval);
    double s0[kLanes];
    double c0[kLanes];
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double phase = static_cast<double>(m + l) + 0.5;
      const double amp = (r == 1.0) ? 1.0 : std::pow(r, phase);
      s0[l] = amp * phase_sin(phase, theta);
      c0[l] = amp * phase_cos(phase, theta);
    }
    float64x2_t s = vld1q_f64(s0);
    float64x2_t c = vld1q_f64(c0);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; m < block_end; m += kLanes) {
      acc = vfmaq_f64(acc, weight_block(m), s);
      const float64x2_t s_next = vfmaq_f64(vmulq_f64(c, sin_step), s, cos_step);
      c = vfmsq_f64(vmulq_f64(c, cos_step), s, sin_step);
      s = s_next;
    }
    total += vaddvq_f64(acc);
  }
  for (; m < count; ++m) {
    const double phase = static_cast<double>(m) + 0.5;
    const double amp = (r == 1.0) ? 1.0 : std::pow(r, phase);
    total += vgetq_lane_f64(weight_block(m), 0) * amp * phase_sin(phase, theta);
  }
  return total;
}

}  // namespace

double half_sine_series_neon(std::span<const double> w, double theta) {
  const std::size_t full = w.size() - w.size() % kLanes;
  return rotated_sum(w.size(), theta, 1.0, [&](std::size_t m) {
    return m < full ? vld1q_f64(w.data() + m) : vdupq_n_f64(w[m]);
  });
}

double half_sine_sum_neon(std::size_t count, double theta) {
  return rotated_sum(count, theta, 1.0, [](std::size_t) { return vdupq_n_f64(1.0); });
}

double damped_half_sine_sum_neon(std::size_t count, double r, double theta) {
  return rotated_sum(count, theta, r, [](std::size_t) { return vdupq_n_f64(1.0); });
}

}  // namespace anyonrg::kernels::detail
