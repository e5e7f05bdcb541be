#include <doctest.h>

#include <cmath>
#include <random>

#include "euphony/distributions.hpp"
#include "euphony/stats.hpp"
#include "support/oracles.hpp"

using namespace euphony;
using namespace euphony::stats;
using V = std::vector<double>;

TEST_CASE("summarize") {
  auto s = summarize(V{1, 1, 1});
  CHECK(s.mean == 1.0);
  CHECK(s.std == 0.0);
  s = summarize(V{0, 1});
  CHECK(s.mean == 0.5);
  CHECK(s.std == 0.5);
  s = summarize(V{0.2, 0.4, 0.9});
  const double oracle = std::sqrt(((0.3 * 0.3) + (0.1 * 0.1) + (0.4 * 0.4)) / 3.0);
  CHECK(s.mean == doctest::Approx(0.5));
  CHECK(s.std == doctest::Approx(oracle));
  CHECK(s.std == doctest::Approx(0.294).epsilon(0.002));
  CHECK(summarize(V{0, 1}, Deviation::Sample).std == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS(summarize(V{}));
}

TEST_CASE("tiers and bonferroni") {
  CHECK(tier_for(0.0009) == Tier::Three);
  CHECK(tier_for(0.001) == Tier::Two);
  CHECK(tier_for(0.0099) == Tier::Two);
  CHECK(tier_for(0.049) == Tier::One);
  CHECK(tier_for(0.05) == Tier::None);
  CHECK(tier_mark(Tier::Three) == "***");
  CHECK(tier_mark(Tier::None) == "ns");
  CHECK(bonferroni(0.01, 4) == doctest::Approx(0.04));
  CHECK(bonferroni(0.5, 4) == 1.0);
  CHECK(bonferroni(0.37, 1) == 0.37);
  CHECK_THROWS(bonferroni(0.1, 0));
  auto r = TestResult::from(2.0, 0.02).adjusted(4);
  CHECK(r.p_raw == 0.02);
  CHECK(r.p_adjusted == doctest::Approx(0.08));
  CHECK(r.tier == Tier::None);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    double p = std::uniform_real_distribution<double>(0, 1)(rng);
    std::size_t m = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
    CHECK(bonferroni(p, m) >= p);
    CHECK(bonferroni(p, m) <= 1.0);
  }
}

TEST_CASE("mann-whitney examples") {
  auto same = mann_whitney_u(V{1, 2, 3, 4, 5}, V{1, 2, 3, 4, 5});
  CHECK(same.statistic == 12.5);
  CHECK(same.p_raw == doctest::Approx(1.0));
  auto sep = mann_whitney_u(V{1, 2, 3}, V{4, 5, 6});
  CHECK(sep.statistic == 0.0);
  CHECK(sep.p_raw == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(sep.p_raw == doctest::Approx(testing::mwu_enumeration_p({1, 2, 3}, {4, 5, 6})));
  CHECK(sep.p_adjusted == sep.p_raw);
  CHECK_THROWS(mann_whitney_u(V{}, V{1}));
}

TEST_CASE("mann-whitney exact matches enumeration with ties") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    V a(std::uniform_int_distribution<int>(1, 5)(rng));
    V b(std::uniform_int_distribution<int>(1, 5)(rng));
    for (auto& x : a) x = std::uniform_int_distribution<int>(0, 4)(rng);
    for (auto& x : b) x = std::uniform_int_distribution<int>(0, 4)(rng);
    CHECK(mann_whitney_u_exact(a, b).p_raw == doctest::Approx(testing::mwu_enumeration_p(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("mann-whitney is symmetric and exact agrees with normal at n=m=15") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  for (int t = 0; t < 40; ++t) {
    V a(15), b(15);
    for (auto& x : a) x = z(rng);
    for (auto& x : b) x = z(rng) + 0.5;
    CHECK(mann_whitney_u(a, b).p_raw == doctest::Approx(mann_whitney_u(b, a).p_raw));
    const double exact = mann_whitney_u_exact(a, b).p_raw;
    const double normal = mann_whitney_u_normal(a, b).p_raw;
    CHECK(std::abs(exact - normal) <= 0.02);
  }
}

TEST_CASE("ks") {
  auto same = ks_two_sample(V{1, 2, 3}, V{1, 2, 3});
  CHECK(same.statistic == 0.0);
  CHECK(same.p_raw == doctest::Approx(1.0));
  CHECK(ks_two_sample(V{0, 0, 0}, V{1, 1, 1}).statistic == 1.0);
  CHECK_THROWS(ks_two_sample(V{}, V{1}));

  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  for (int t = 0; t < 30; ++t) {
    V a(std::uniform_int_distribution<int>(1, 30)(rng));
    V b(std::uniform_int_distribution<int>(1, 30)(rng));
    for (auto& x : a) x = std::round(z(rng) * 3);
    for (auto& x : b) x = std::round(z(rng) * 3);
    CHECK(ks_statistic(a, b) == doctest::Approx(testing::ks_d_bruteforce(a, b)));
  }
}

TEST_CASE("ks exact p against permutation oracle") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> z;
  for (auto [n, m] : {std::pair{8, 8}, std::pair{10, 14}, std::pair{5, 20}}) {
    V a(n), b(m);
    for (auto& x : a) x = z(rng);
    for (auto& x : b) x = z(rng) + 0.6;
    const double p = ks_two_sample(a, b).p_raw;
    CHECK(std::abs(p - testing::ks_permutation_p(a, b, 4000, 9)) <= 0.03);
  }
}

TEST_CASE("ccdf") {
  CHECK(ccdf_at(V{0.1, 0.6, 0.7}, 0.55) == doctest::Approx(2.0 / 3.0));
  CHECK(ccdf_at(V{0.1, 1.0, 0.7}, 1.0) == 0.0);
  CHECK(ccdf_at(V{0.3, 0.6}, 0.1) == 1.0);
  CHECK(ccdf_at(V{0.5}, 0.5) == 0.0);
  CHECK_THROWS(ccdf_at(V{}, 0.5));
  std::mt19937_64 rng(2);
  V s(50);
  for (auto& x : s) x = std::uniform_real_distribution<double>(0, 1)(rng);
  double prev = 1.0;
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    CHECK(ccdf_at(s, t) <= prev);
    prev = ccdf_at(s, t);
  }
}

TEST_CASE("mcnemar") {
  std::vector<bool> a{true, false, true, true};
  CHECK(mcnemar(a, a).p_raw == 1.0);
  auto r = mcnemar_counts(5, 15);
  CHECK(r.statistic == doctest::Approx(4.05));
  CHECK(r.p_raw == doctest::Approx(testing::chi2_1_tail_numeric(4.05)).epsilon(1e-6));
  CHECK(std::abs(r.p_raw - 0.0442) <= 0.002);
  CHECK(mcnemar_counts(0, 3).p_raw == doctest::Approx(0.25));
  CHECK(mcnemar_counts(0, 0).p_raw == 1.0);
  CHECK_THROWS(mcnemar({true}, {true, false}));

  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    std::vector<bool> x(40), y(40);
    for (std::size_t i = 0; i < 40; ++i) {
      x[i] = std::bernoulli_distribution(0.6)(rng);
      y[i] = std::bernoulli_distribution(0.7)(rng);
    }
    CHECK(mcnemar(x, y).p_raw == doctest::Approx(mcnemar(y, x).p_raw));
  }
}

TEST_CASE("binomial test and distributions") {
  CHECK(binomial_test_greater(10, 10).p_raw == doctest::Approx(std::pow(0.5, 10)));
  CHECK(binomial_test_greater(0, 10).p_raw == doctest::Approx(1.0));
  CHECK(dist::normal_sf(0.0) == doctest::Approx(0.5));
  CHECK(dist::normal_sf(1.959963984540054) == doctest::Approx(0.025));
  CHECK(dist::chi2_1_sf(3.841458820694124) == doctest::Approx(0.05));
  CHECK(dist::kolmogorov_sf(1.3580986393225505) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(dist::kolmogorov_sf(0.5) == doctest::Approx(0.9639452436).epsilon(1e-6));
  CHECK(dist::binomial_cdf(5, 20, 0.5) == doctest::Approx(21700.0 / 1048576.0));
  CHECK(dist::binomial_sf_inclusive(15, 20, 0.5) == doctest::Approx(21700.0 / 1048576.0));
}
