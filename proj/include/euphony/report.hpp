#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "euphony/analysis.hpp"
#include "euphony/experiment.hpp"

namespace euphony {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_tsv() const;
  std::string to_text() const;  // space-aligned columns
};

struct Provenance {
  std::string version = EUPHONY_VERSION;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string dictionary;
  std::vector<std::pair<std::string, std::string>> extra;

  std::string header() const;  // "# key: value" lines
};

std::string format_fixed(double v, int decimals);
std::string format_p(double p);

// Means table: one row per dataset side with mu/sigma per device and the
// Mann-Whitney tier on the persuasive row.
Table means_table(const std::vector<DatasetMeans>& rows);
// Above-threshold table: fraction of sentences strictly above each device
// threshold, with the KS tier on the persuasive row.
Table above_threshold_table(const std::vector<DatasetAboveThreshold>& rows);
// Long-format TSV of the analysis, one row per dataset x device.
Table analysis_detail_table(const std::vector<DatasetMeans>& means,
                            const std::vector<DatasetAboveThreshold>& above);

Table within_table(const std::vector<WithinReport>& reports);
Table within_detail_table(const std::vector<WithinReport>& reports);
Table ablation_table(const std::vector<AblationReport>& reports);
Table ablation_detail_table(const std::vector<AblationReport>& reports);
Table cross_table(const std::vector<CrossReport>& reports);
Table cross_detail_table(const std::vector<CrossReport>& reports);
// Every evaluated grid point of the given CV runs.
Table grid_table(const std::string& dataset, const std::vector<const CvResult*>& runs);

}  // namespace euphony
