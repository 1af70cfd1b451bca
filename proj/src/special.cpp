#include "rbcs/special.hpp"

#include <cmath>
#include <numbers>

namespace rbcs {
namespace {

constexpr double kRescale = 1e100;
const double kLogRescale = std::log(kRescale);

// Runs p_{k+1} = step(k, p_k, p_{k-1}) from p_0 = 1 and returns
// p_k * exp(log_envelope + accumulated rescaling).
template <typename Step>
std::vector<double> scaled_recurrence(int n_max, double log_envelope, Step step) {
  std::vector<double> mantissa(n_max + 1);
  std::vector<double> log_scale(n_max + 1);
  double prev = 0.0;
  double cur = 1.0;
  double log_s = log_envelope;
  mantissa[0] = cur;
  log_scale[0] = log_s;
  for (int k = 0; k < n_max; ++k) {
    double next = step(k, cur, prev);
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_s += kLogRescale;
    }
    mantissa[k + 1] = cur;
    log_scale[k + 1] = log_s;
  }
  std::vector<double> out(n_max + 1);
  for (int k = 0; k <= n_max; ++k) {
    const double m = mantissa[k];
    out[k] = m == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(m)) + log_scale[k]), m);
  }
  return out;
}

}  // namespace

std::vector<double> hermite_functions(int n_max, double x) {
  const double log_envelope = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  return scaled_recurrence(n_max, log_envelope, [x](int k, double cur, double prev) {
    const double kp1 = k + 1.0;
    return std::sqrt(2.0 / kp1) * x * cur - std::sqrt(k / kp1) * prev;
  });
}

std::vector<double> laguerre_functions(int n_max, double t) {
  return scaled_recurrence(n_max, -0.5 * t, [t](int k, double cur, double prev) {
    return ((2.0 * k + 1.0 - t) * cur - k * prev) / (k + 1.0);
  });
}

}  // namespace rbcs
