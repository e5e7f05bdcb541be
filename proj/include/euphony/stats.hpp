#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace euphony::stats {

struct SummaryStats {
  double mean = 0.0;
  double std = 0.0;
  std::size_t n = 0;
};

enum class Deviation { Population, Sample };

// Throws std::invalid_argument on an empty sample (or n < 2 for Sample).
SummaryStats summarize(std::span<const double> scores, Deviation kind = Deviation::Population);

enum class Tier { Three, Two, One, None };

// *** p<.001, ** p<.01, * p<.05.
Tier tier_for(double p);
std::string_view tier_mark(Tier t);  // "***", "**", "*", "ns"

struct TestResult {
  double statistic = 0.0;
  double p_raw = 1.0;
  double p_adjusted = 1.0;
  Tier tier = Tier::None;

  static TestResult from(double statistic, double p);
  // Copy with Bonferroni adjustment over m comparisons and the tier recomputed.
  TestResult adjusted(std::size_t m) const;
};

double bonferroni(double p, std::size_t m);

// Two-sided Mann-Whitney U. The statistic is U for sample a (pairs a > b
// plus half the ties). Exact when n*m < kMannWhitneyExactBelow, otherwise
// the tie-corrected normal approximation with continuity correction.
inline constexpr std::size_t kMannWhitneyExactBelow = 20;
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);
TestResult mann_whitney_u_exact(std::span<const double> a, std::span<const double> b);
TestResult mann_whitney_u_normal(std::span<const double> a, std::span<const double> b);

// Two-sided two-sample Kolmogorov-Smirnov. Exact lattice-path distribution
// when n*m <= kKsExactMaxProduct and the pooled sample has no ties,
// asymptotic Kolmogorov distribution with size n*m/(n+m) otherwise.
inline constexpr std::size_t kKsExactMaxProduct = 10000;
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b);
TestResult ks_two_sample_asymptotic(std::span<const double> a, std::span<const double> b);
TestResult ks_two_sample_exact(std::span<const double> a, std::span<const double> b);
double ks_statistic(std::span<const double> a, std::span<const double> b);

// Fraction of scores strictly greater than t.
double ccdf_at(std::span<const double> scores, double t);

// McNemar's test on per-instance correctness. Disagreement counts b (only a
// correct) and c (only b correct); continuity-corrected chi-square statistic,
// exact two-sided binomial p when b + c < kMcNemarExactBelow.
inline constexpr std::size_t kMcNemarExactBelow = 20;
TestResult mcnemar(const std::vector<bool>& correct_a, const std::vector<bool>& correct_b);
TestResult mcnemar_counts(std::size_t b, std::size_t c);

// One-sided exact binomial test of H1: success rate > p0.
TestResult binomial_test_greater(std::size_t successes, std::size_t trials, double p0 = 0.5);

}  // namespace euphony::stats
