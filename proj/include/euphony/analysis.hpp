#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "euphony/corpus.hpp"
#include "euphony/phonodict.hpp"
#include "euphony/scorer.hpp"
#include "euphony/stats.hpp"

namespace euphony {

// Per-device score cutoffs (rh, al, pl, ho) defined as mean scores over a
// reference corpus of maximally euphonic sentences.
struct Thresholds {
  std::array<double, 4> values{};
  std::size_t source_size = 0;
  std::string source;

  double at(Device d) const { return values[static_cast<std::size_t>(d)]; }

  // Tongue-twister means reported with the original study.
  static Thresholds reference_constants();
};

Thresholds derive_thresholds(const std::vector<std::string>& reference, const PronDict& dict,
                             TextMode mode = TextMode::Generic);
Thresholds derive_thresholds(const std::vector<PhoneticProfile>& reference_profiles);

// TSV with columns device, threshold; "# source:" / "# source_size:" comments.
std::string format_thresholds(const Thresholds& th);
Thresholds parse_thresholds(std::string_view text);
Thresholds load_thresholds(const std::filesystem::path& path);

// Profiles of the persuasive and non-persuasive side of every original pair
// (swapped twins of a symmetrized corpus are skipped).
struct ScoredCorpus {
  std::string name;
  std::vector<PhoneticProfile> persuasive;
  std::vector<PhoneticProfile> non_persuasive;

  std::vector<double> scores(Device d, bool persuasive_side) const;
};

ScoredCorpus score_corpus(const PairCorpus& corpus, const PronDict& dict,
                          TextMode mode = TextMode::Generic, std::size_t threads = 1);

struct DeviceMeans {
  Device device{};
  stats::SummaryStats non_persuasive;
  stats::SummaryStats persuasive;
  stats::TestResult test;  // Mann-Whitney U, P vs non-P, Bonferroni adjusted
};

struct DatasetMeans {
  std::string dataset;
  std::array<DeviceMeans, 4> devices;
};

DatasetMeans mean_scores(const ScoredCorpus& scored, std::size_t family_size,
                         stats::Deviation deviation = stats::Deviation::Population);

struct DeviceAboveThreshold {
  Device device{};
  double threshold = 0.0;
  double non_persuasive = 0.0;  // fraction strictly above threshold
  double persuasive = 0.0;
  stats::TestResult test;       // two-sample KS on the score samples, adjusted
};

struct DatasetAboveThreshold {
  std::string dataset;
  std::array<DeviceAboveThreshold, 4> devices;
};

DatasetAboveThreshold above_threshold_report(const ScoredCorpus& scored, const Thresholds& th,
                                             std::size_t family_size);
DatasetAboveThreshold above_threshold_report(const PairCorpus& corpus, const PronDict& dict,
                                             const Thresholds& th, std::size_t family_size,
                                             TextMode mode = TextMode::Generic);

}  // namespace euphony
