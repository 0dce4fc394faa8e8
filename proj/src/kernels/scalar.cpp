#include "anyonrg/kernels.hpp"

#include <cmath>

namespace anyonrg::kernels::detail {

double half_sine_series_scalar(std::span<const double> w, double theta) {
  double acc = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) {
    acc += w[m] * phase_sin(static_cast<double>(m) + 0.5, theta);
  }
  return acc;
}

double half_sine_sum_scalar(std::size_t count, double theta) {
  double acc = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    acc += phase_sin(static_cast<double>(m) + 0.5, theta);
  }
  return acc;
}

double damped_half_sine_sum_scalar(std::size_t count, double r, double theta) {
  double acc = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const double phase = static_cast<double>(m) + 0.5;
    acc += std::pow(r, phase) * phase_sin(phase, theta);
  }
  return acc;
}

}  // namespace anyonrg::kernels::detail
