#include "anyonrg/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

using namespace anyonrg::kernels;

namespace {

// long double reference, one sinl per term
long double reference(const std::vector<double>& w, double theta) {
  long double s = 0.0L;
  for (std::size_t m = 0; m < w.size(); ++m) s += w[m] * std::sin((static_cast<long double>(m) + 0.5L) * theta);
  return s;
}

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = u(rng);
  return w;
}

double l1(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += std::abs(x);
  return s;
}

}  // namespace

TEST(Kernels, ScalarMatchesLongDouble) {
  for (std::size_t n : {1u, 7u, 64u, 1000u, 4099u}) {
    const auto w = random_weights(n, n);
    for (double theta : {0.001, 0.3, 1.0, std::numbers::pi / 3, 2.9}) {
      const double got = half_sine_series(Backend::scalar, w, theta);
      EXPECT_NEAR(got, static_cast<double>(reference(w, theta)), 1e-14 * l1(w)) << n << " " << theta;
    }
  }
}

TEST(Kernels, ClosedFormUnitSum) {
  // sum_{m<n} sin((m+1/2)t) = sin^2(n t/2) / sin(t/2)
  for (std::size_t n : {1u, 16u, 255u, 256u, 257u, 100000u}) {
    for (double t : {0.01, 0.7, 2.0}) {
      const double exact = std::pow(std::sin(n * t / 2), 2) / std::sin(t / 2);
      for (Backend b : available_backends()) EXPECT_NEAR(half_sine_sum(b, n, t), exact, 1e-13 * n) << backend_name(b);
    }
  }
}

TEST(Kernels, SimdEquivalentToScalar) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> th(-3.2, 3.2);
  for (Backend b : available_backends()) {
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 127u, 128u, 129u, 1024u, 33333u}) {
      const auto w = random_weights(n, 7 * n + 1);
      for (int rep = 0; rep < 8; ++rep) {
        const double t = th(rng);
        const double s = half_sine_series(Backend::scalar, w, t);
        EXPECT_NEAR(half_sine_series(b, w, t), s, 1e-13 * std::max(1.0, l1(w))) << backend_name(b) << " n=" << n;
        EXPECT_NEAR(half_sine_sum(b, n, t), half_sine_sum(Backend::scalar, n, t), 1e-13 * std::max<double>(1, n));
        const double r = 0.999;
        EXPECT_NEAR(damped_half_sine_sum(b, n, r, t), damped_half_sine_sum(Backend::scalar, n, r, t),
                    1e-13 * std::max<double>(1, n));
      }
    }
  }
}

TEST(Kernels, DispatchIsAvailable) {
  const auto all = available_backends();
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(all.front(), Backend::scalar);
  bool found = false;
  for (Backend b : all) found |= b == active_backend();
  EXPECT_TRUE(found);
  EXPECT_EQ(backend_name(Backend::scalar), "scalar");
}

TEST(Kernels, AbelPartialSumApproachesClosedForm) {
  // sum r^(m+1/2) sin((m+1/2)t) = Im[sqrt(r) e^(it/2) / (1 - r e^(it))]
  const double r = 0.99, t = 0.8;
  const std::complex<double> z = std::sqrt(r) * std::polar(1.0, t / 2) / (1.0 - r * std::polar(1.0, t));
  EXPECT_NEAR(damped_half_sine_sum(5000, r, t), z.imag(), 1e-12);
}

TEST(Kernels, DampedSumStableWhenLanesAlign) {
  // theta = pi/2: four-term steps are a full turn, every SIMD lane sees same-sign terms
  const double r = 1 - 2e-6, t = std::numbers::pi / 2;
  const std::size_t n = static_cast<std::size_t>(std::ceil(40 / -std::log(r)));
  const std::complex<double> z = std::sqrt(r) * std::polar(1.0, t / 2) / (1.0 - r * std::polar(1.0, t));
  for (Backend b : available_backends()) EXPECT_NEAR(damped_half_sine_sum(b, n, r, t), z.imag(), 1e-10) << backend_name(b);
}
