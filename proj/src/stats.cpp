#include "euphony/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "euphony/distributions.hpp"

namespace euphony::stats {

namespace {

void require_nonempty(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.empty() || b.empty()) throw std::invalid_argument(std::string(what) + ": empty sample");
}

struct RankedPool {
  std::vector<double> doubled_ranks;  // 2 * midrank, integral
  std::size_t n_a = 0;
  double tie_term = 0.0;              // sum over tie groups of t^3 - t
  bool has_ties = false;
};

// Pooled midranks; elements [0, n_a) come from sample a.
RankedPool rank_pool(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<std::pair<double, std::size_t>> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < a.size(); ++i) pool.emplace_back(a[i], i);
  for (std::size_t i = 0; i < b.size(); ++i) pool.emplace_back(b[i], a.size() + i);
  std::sort(pool.begin(), pool.end());

  RankedPool out;
  out.n_a = a.size();
  out.doubled_ranks.assign(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pool[j + 1].first == pool[i].first) ++j;
    const double doubled = static_cast<double>(i + 1 + j + 1);  // 2 * average of ranks i+1..j+1
    for (auto k = i; k <= j; ++k) out.doubled_ranks[pool[k].second] = doubled;
    const double t = static_cast<double>(j - i + 1);
    if (t > 1) {
      out.tie_term += t * t * t - t;
      out.has_ties = true;
    }
    i = j + 1;
  }
  return out;
}

double u_statistic(const RankedPool& pool) {
  const double n = static_cast<double>(pool.n_a);
  double r2 = 0.0;
  for (std::size_t i = 0; i < pool.n_a; ++i) r2 += pool.doubled_ranks[i];
  return r2 / 2.0 - n * (n + 1.0) / 2.0;
}

}  // namespace

SummaryStats summarize(std::span<const double> scores, Deviation kind) {
  if (scores.empty()) throw std::invalid_argument("summarize: empty sample");
  if (kind == Deviation::Sample && scores.size() < 2) {
    throw std::invalid_argument("summarize: sample deviation needs n >= 2");
  }
  const double n = static_cast<double>(scores.size());
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : scores) ss += (x - mean) * (x - mean);
  const double denom = kind == Deviation::Population ? n : n - 1.0;
  return {mean, std::sqrt(ss / denom), scores.size()};
}

Tier tier_for(double p) {
  if (p < 0.001) return Tier::Three;
  if (p < 0.01) return Tier::Two;
  if (p < 0.05) return Tier::One;
  return Tier::None;
}

std::string_view tier_mark(Tier t) {
  switch (t) {
    case Tier::Three: return "***";
    case Tier::Two: return "**";
    case Tier::One: return "*";
    case Tier::None: return "ns";
  }
  return "ns";
}

TestResult TestResult::from(double statistic, double p) {
  p = std::clamp(p, 0.0, 1.0);
  return {statistic, p, p, tier_for(p)};
}

TestResult TestResult::adjusted(std::size_t m) const {
  TestResult out = *this;
  out.p_adjusted = bonferroni(p_raw, m);
  out.tier = tier_for(out.p_adjusted);
  return out;
}

double bonferroni(double p, std::size_t m) {
  if (m == 0) throw std::invalid_argument("bonferroni: comparison count must be >= 1");
  return std::min(1.0, p * static_cast<double>(m));
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, b, "mann_whitney_u");
  if (a.size() * b.size() < kMannWhitneyExactBelow) return mann_whitney_u_exact(a, b);
  return mann_whitney_u_normal(a, b);
}

TestResult mann_whitney_u_normal(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, b, "mann_whitney_u");
  const auto pool = rank_pool(a, b);
  const double u = u_statistic(pool);
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  const double total = n + m;
  const double mu = n * m / 2.0;
  const double var = n * m / 12.0 * ((total + 1.0) - pool.tie_term / (total * (total - 1.0)));
  if (var <= 0.0) return TestResult::from(u, 1.0);
  const double z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(var);
  return TestResult::from(u, 2.0 * dist::normal_sf(z));
}

TestResult mann_whitney_u_exact(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, b, "mann_whitney_u");
  const std::size_t n = a.size();
  const std::size_t total = a.size() + b.size();
  if (total > 200) throw std::invalid_argument("mann_whitney_u_exact: pooled sample too large");
  const auto pool = rank_pool(a, b);
  const double u = u_statistic(pool);

  // Permutation distribution of the doubled rank sum of a size-n subset,
  // counted over all C(total, n) subsets.
  const std::size_t max_sum = total * (total + 1);
  std::vector<std::vector<double>> count(n + 1, std::vector<double>(max_sum + 1, 0.0));
  count[0][0] = 1.0;
  for (std::size_t item = 0; item < total; ++item) {
    const auto r = static_cast<std::size_t>(pool.doubled_ranks[item]);
    for (std::size_t k = std::min(n, item + 1); k >= 1; --k) {
      auto& dst = count[k];
      const auto& src = count[k - 1];
      for (std::size_t s = max_sum; s >= r; --s) {
        if (src[s - r] != 0.0) dst[s] += src[s - r];
        if (s == r) break;
      }
    }
  }

  // Compare doubled deviations |2U - nm| as integers.
  const auto nm = static_cast<std::int64_t>(n * b.size());
  const auto offset = static_cast<std::int64_t>(n * (n + 1));
  const auto observed = std::llabs(static_cast<std::int64_t>(std::llround(2.0 * u)) - nm);
  double tail = 0.0;
  double all = 0.0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    const double c = count[n][s];
    if (c == 0.0) continue;
    all += c;
    const auto dev = std::llabs(static_cast<std::int64_t>(s) - offset - nm);
    if (dev >= observed) tail += c;
  }
  return TestResult::from(u, tail / all);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double n = static_cast<double>(sa.size());
  const double m = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return d;
}

TestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, b, "ks_two_sample");
  if (a.size() * b.size() <= kKsExactMaxProduct) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    if (std::adjacent_find(pooled.begin(), pooled.end()) == pooled.end()) {
      return ks_two_sample_exact(a, b);
    }
  }
  return ks_two_sample_asymptotic(a, b);
}

TestResult ks_two_sample_asymptotic(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, b, "ks_two_sample");
  const double d = ks_statistic(a, b);
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  const double effective = n * m / (n + m);
  return TestResult::from(d, dist::kolmogorov_sf(std::sqrt(effective) * d));
}

TestResult ks_two_sample_exact(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, b, "ks_two_sample");
  const double d = ks_statistic(a, b);
  const auto n = static_cast<std::int64_t>(a.size());
  const auto m = static_cast<std::int64_t>(b.size());
  // On the lattice, |i/n - j/m| = |i*m - j*n| / (n*m); the observed gap is integral.
  const auto gap = static_cast<std::int64_t>(std::llround(d * static_cast<double>(n * m)));

  // Probability that a uniformly random merge path stays strictly inside the
  // band; each step weight is normalized to keep values in range.
  std::vector<double> row(static_cast<std::size_t>(m + 1), 0.0);
  const double log_paths = dist::log_binomial_coefficient(static_cast<std::uint64_t>(n + m),
                                                          static_cast<std::uint64_t>(n));
  const double scale = std::exp(-log_paths / static_cast<double>(n + m));
  for (std::int64_t i = 0; i <= n; ++i) {
    for (std::int64_t j = 0; j <= m; ++j) {
      auto& cell = row[static_cast<std::size_t>(j)];
      if (std::llabs(i * m - j * n) >= gap) {
        cell = 0.0;
        continue;
      }
      if (i == 0 && j == 0) {
        cell = 1.0;
        continue;
      }
      const double up = i > 0 ? cell : 0.0;
      const double left = j > 0 ? row[static_cast<std::size_t>(j - 1)] : 0.0;
      cell = (up + left) * scale;
    }
  }
  const double inside = row[static_cast<std::size_t>(m)];
  return TestResult::from(d, 1.0 - inside);
}

double ccdf_at(std::span<const double> scores, double t) {
  if (scores.empty()) throw std::invalid_argument("ccdf_at: empty sample");
  const auto above = std::count_if(scores.begin(), scores.end(), [t](double s) { return s > t; });
  return static_cast<double>(above) / static_cast<double>(scores.size());
}

TestResult mcnemar(const std::vector<bool>& correct_a, const std::vector<bool>& correct_b) {
  if (correct_a.size() != correct_b.size()) {
    throw std::invalid_argument("mcnemar: correctness vectors differ in length");
  }
  std::size_t b = 0, c = 0;
  for (std::size_t i = 0; i < correct_a.size(); ++i) {
    if (correct_a[i] && !correct_b[i]) ++b;
    if (!correct_a[i] && correct_b[i]) ++c;
  }
  return mcnemar_counts(b, c);
}

TestResult mcnemar_counts(std::size_t b, std::size_t c) {
  const std::size_t discordant = b + c;
  if (discordant == 0) return TestResult::from(0.0, 1.0);
  const double diff = std::abs(static_cast<double>(b) - static_cast<double>(c));
  const double statistic = (diff - 1.0) * (diff - 1.0) / static_cast<double>(discordant);
  if (discordant < kMcNemarExactBelow) {
    const double p = 2.0 * dist::binomial_cdf(std::min(b, c), discordant, 0.5);
    return TestResult::from(statistic, std::min(1.0, p));
  }
  return TestResult::from(statistic, dist::chi2_1_sf(statistic));
}

TestResult binomial_test_greater(std::size_t successes, std::size_t trials, double p0) {
  if (trials == 0) throw std::invalid_argument("binomial_test_greater: zero trials");
  const double rate = static_cast<double>(successes) / static_cast<double>(trials);
  return TestResult::from(rate, dist::binomial_sf_inclusive(successes, trials, p0));
}

}  // namespace euphony::stats
