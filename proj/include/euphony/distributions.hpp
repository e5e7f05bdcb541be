#pragma once

#include <cstdint>

namespace euphony::dist {

// Upper tail P(Z > z) of the standard normal.
double normal_sf(double z);

// Upper tail of the chi-square distribution with one degree of freedom.
double chi2_1_sf(double x);

// Kolmogorov limiting distribution, P(K > lambda).
double kolmogorov_sf(double lambda);

double log_binomial_coefficient(std::uint64_t n, std::uint64_t k);

// P(X <= k) and P(X >= k) for X ~ Binomial(n, p).
double binomial_cdf(std::uint64_t k, std::uint64_t n, double p);
double binomial_sf_inclusive(std::uint64_t k, std::uint64_t n, double p);

}  // namespace euphony::dist
