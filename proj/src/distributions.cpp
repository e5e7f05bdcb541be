#include "euphony/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace euphony::dist {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double chi2_1_sf(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  constexpr double pi = std::numbers::pi;
  if (lambda < 1.18) {
    // Theta-function form converges fast for small lambda.
    const double y = std::exp(-pi * pi / (8.0 * lambda * lambda));
    double sum = 0.0;
    for (int k = 1; k <= 50; k += 2) {
      const double term = std::pow(y, static_cast<double>(k * k));
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    const double cdf = std::sqrt(2.0 * pi) / lambda * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double log_binomial_coefficient(std::uint64_t n, std::uint64_t k) {
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

namespace {

double log_pmf(std::uint64_t i, std::uint64_t n, double lp, double lq) {
  return log_binomial_coefficient(n, i) + static_cast<double>(i) * lp +
         static_cast<double>(n - i) * lq;
}

// Sum of pmf over [lo, hi], accumulated relative to the largest term.
double pmf_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t n, double p) {
  if (lo > hi) return 0.0;
  if (p <= 0.0) return lo == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return hi == n ? 1.0 : 0.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  double max_log = -INFINITY;
  for (auto i = lo; i <= hi; ++i) max_log = std::max(max_log, log_pmf(i, n, lp, lq));
  double sum = 0.0;
  for (auto i = lo; i <= hi; ++i) sum += std::exp(log_pmf(i, n, lp, lq) - max_log);
  return std::min(1.0, std::exp(max_log) * sum);
}

}  // namespace

double binomial_cdf(std::uint64_t k, std::uint64_t n, double p) {
  if (k >= n) return 1.0;
  return pmf_range(0, k, n, p);
}

double binomial_sf_inclusive(std::uint64_t k, std::uint64_t n, double p) {
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  return pmf_range(k, n, n, p);
}

}  // namespace euphony::dist
