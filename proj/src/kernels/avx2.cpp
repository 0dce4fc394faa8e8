// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include "anyonrg/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace anyonrg::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Lane l holds amp * (sin, cos) of (m0 + l + 1/2) * theta.
struct Phases {
  __m256d s;
  __m256d c;
};

inline Phases seed(std::size_t m0, double theta, double r) {
  alignas(32) double s[kLanes];
  alignas(32) double c[kLanes];
  for (std::size_t l = 0; l < kLanes; ++l) {
    const double phase = static_cast<double>(m0 + l) + 0.5;
    const double amp = (r == 1.0) ? 1.0 : std::pow(r, phase);
    s[l] = amp * phase_sin(phase, theta);
    c[l] = amp * phase_cos(phase, theta);
  }
  return {_mm256_load_pd(s), _mm256_load_pd(c)};
}

// Multiplies every lane by rstep * e^{i step}.
inline Phases advance(Phases p, __m256d sin_step, __m256d cos_step) {
  const __m256d s = _mm256_fmadd_pd(p.s, cos_step, _mm256_mul_pd(p.c, sin_step));
  const __m256d c = _mm256_fmsub_pd(p.c, cos_step, _mm256_mul_pd(p.s, sin_step));
  return {s, c};
}

template <class WeightFn>
double rotated_sum(std::size_t count, double theta, double r, WeightFn&& weight_block) {
  const double rstep = (r == 1.0) ? 1.0 : std::pow(r, static_cast<double>(kLanes));
  const __m256d sin_step = _mm256_set1_pd(rstep * std::sin(kLanes * theta));
  const __m256d cos_step = _mm256_set1_pd(rstep * std::cos(kLanes * theta));

  // Lanes are folded into `total` once per block: when 4 theta is near a
  // multiple of 2 pi each lane sees same-sign terms and would grow far past
  // the (bounded) partial sums, then cancel.
  double total = 0.0;
  const std::size_t full = count - count % kLanes;
  std::size_t m = 0;
  while (m < full) {
    const std::size_t block_end = std::min(full, m + kReseedInterval);
    Phases p = seed(m, theta, r);
    __m256d acc = _mm256_setzero_pd();
    for (; m < block_end; m += kLanes) {
      acc = _mm256_fmadd_pd(weight_block(m), p.s, acc);
      p = advance(p, sin_step, cos_step);
    }
    total += hsum(acc);
  }
  for (; m < count; ++m) {
    const double phase = static_cast<double>(m) + 0.5;
    const double amp = (r == 1.0) ? 1.0 : std::pow(r, phase);
    total += _mm256_cvtsd_f64(weight_block(m)) * amp * phase_sin(phase, theta);
  }
  return total;
}

}  // namespace

double half_sine_series_avx2(std::span<const double> w, double theta) {
  const std::size_t n = w.size();
  const std::size_t full = n - n % kLanes;
  return rotated_sum(n, theta, 1.0, [&](std::size_t m) {
    return m < full ? _mm256_loadu_pd(w.data() + m) : _mm256_set1_pd(w[m]);
  });
}

double half_sine_sum_avx2(std::size_t count, double theta) {
  const __m256d one = _mm256_set1_pd(1.0);
  return rotated_sum(count, theta, 1.0, [&](std::size_t) { return one; });
}

double damped_half_sine_sum_avx2(std::size_t count, double r, double theta) {
  const __m256d one = _mm256_set1_pd(1.0);
  return rotated_sum(count, theta, r, [&](std::size_t) { return one; });
}

}  // namespace anyonrg::kernels::detail
