#pragma once

// Brute-force reference implementations, written independently of the
// library code they check.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace euphony::testing {

using Word = std::vector<std::string>;  // phoneme symbols

struct Counts {
  std::size_t total = 0;
  std::size_t distinct = 0;
};

Counts count_phonemes(const std::vector<Word>& words);
double homogeneity_oracle(const std::vector<Word>& words);

// Sum over words of the longest prefix (suffix) length shared with any other
// word, found by trying every pair and every length, over total phonemes.
double alliteration_oracle(const std::vector<Word>& words);
double rhyme_oracle(const std::vector<Word>& words);

// Two-sided permutation p-value of the KS statistic.
double ks_permutation_p(const std::vector<double>& a, const std::vector<double>& b, int shuffles,
                        std::uint64_t seed);
double ks_d_bruteforce(const std::vector<double>& a, const std::vector<double>& b);

// Two-sided exact Mann-Whitney p by enumerating every split of the pooled sample.
double mwu_enumeration_p(const std::vector<double>& a, const std::vector<double>& b);

double entropy_bits(const std::vector<double>& probabilities);
double information_gain_oracle(const std::vector<int>& feature, const std::vector<int>& labels);

// Upper tail of chi-square with one degree of freedom by numeric integration.
double chi2_1_tail_numeric(double x);

}  // namespace euphony::testing
