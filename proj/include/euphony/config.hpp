#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "euphony/corpus.hpp"
#include "euphony/experiment.hpp"
#include "euphony/stats.hpp"

namespace euphony {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatasetSpec {
  std::string name;
  std::filesystem::path path;
  PairFormat format = PairFormat::Tsv;
  bool twitter = false;
};

inline constexpr const char* kDictEnvVar = "EUPHONY_DICT";
inline constexpr const char* kReferenceThresholds = "reference";

struct RunConfig {
  std::filesystem::path dict_path;
  std::filesystem::path stopword_path;  // empty: built-in list
  std::vector<DatasetSpec> datasets;
  std::string thresholds = kReferenceThresholds;  // or a thresholds TSV path
  std::uint64_t seed = 42;
  std::size_t folds = 10;
  std::size_t threads = 1;
  Grid grid;
  stats::Deviation deviation = stats::Deviation::Population;
  std::filesystem::path output_dir = "euphony-out";

  // Stable across runs and thread counts; excludes output_dir and threads.
  std::string hash() const;
  std::string canonical_json() const;
  CvOptions cv_options() const;
};

// Parses the JSON config; relative paths resolve against base_dir. Throws
// ConfigError on malformed content.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// "name=path[,twitter][,jsonl]" -> DatasetSpec; format defaults from the extension.
DatasetSpec parse_dataset_flag(std::string_view flag);

// Checks that the dictionary and every dataset file are readable.
void validate_config(const RunConfig& config, bool require_datasets);

}  // namespace euphony
