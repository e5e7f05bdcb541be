#include "euphony/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace euphony {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

bool readable(const std::filesystem::path& p) {
  std::ifstream in(p);
  return static_cast<bool>(in) && !std::filesystem::is_directory(p);
}

}  // namespace

std::string RunConfig::canonical_json() const {
  nlohmann::ordered_json j;
  j["dictionary"] = dict_path.generic_string();
  j["stopwords"] = stopword_path.generic_string();
  auto ds = nlohmann::json::array();
  for (const auto& d : datasets) {
    ds.push_back({{"name", d.name},
                  {"path", d.path.generic_string()},
                  {"format", d.format == PairFormat::Tsv ? "tsv" : "jsonl"},
                  {"twitter", d.twitter}});
  }
  j["datasets"] = ds;
  j["thresholds"] = thresholds;
  j["seed"] = seed;
  j["folds"] = folds;
  j["grid"] = {{"degrees", grid.degrees},
               {"feature_counts", grid.feature_counts},
               {"c", grid.cs},
               {"ngram_degree2", grid.ngram_degree2}};
  j["std"] = deviation == stats::Deviation::Population ? "population" : "sample";
  return j.dump();
}

std::string RunConfig::hash() const {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CvOptions RunConfig::cv_options() const {
  CvOptions o;
  o.folds = folds;
  o.seed = seed;
  o.threads = threads;
  o.grid = grid;
  return o;
}

DatasetSpec parse_dataset_flag(std::string_view flag) {
  auto eq = flag.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == flag.size()) {
    throw ConfigError("--dataset expects name=path[,twitter][,tsv|jsonl], got '" + std::string(flag) + "'");
  }
  DatasetSpec spec;
  spec.name = std::string(flag.substr(0, eq));
  auto rest = flag.substr(eq + 1);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto comma = rest.find(',', pos);
    parts.emplace_back(rest.substr(pos, comma == std::string_view::npos ? rest.npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  spec.path = parts[0];
  spec.format = guess_pair_format(spec.path);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] == "twitter") spec.twitter = true;
    else if (parts[i] == "tsv") spec.format = PairFormat::Tsv;
    else if (parts[i] == "jsonl") spec.format = PairFormat::Jsonl;
    else throw ConfigError("--dataset: unknown option '" + parts[i] + "'");
  }
  return spec;
}

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {"dictionary", "stopwords", "datasets", "thresholds", "seed",
                                              "folds", "threads", "grid", "std", "output_dir"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ConfigError("config: unknown key '" + key + "'");
  }

  RunConfig c;
  try {
    if (j.contains("dictionary")) c.dict_path = resolve(base_dir, j["dictionary"].get<std::string>());
    if (j.contains("stopwords")) c.stopword_path = resolve(base_dir, j["stopwords"].get<std::string>());
    if (j.contains("thresholds")) {
      auto t = j["thresholds"].get<std::string>();
      c.thresholds = t == kReferenceThresholds ? t : resolve(base_dir, t).string();
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("folds")) c.folds = j["folds"].get<std::size_t>();
    if (j.contains("threads")) c.threads = j["threads"].get<std::size_t>();
    if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
    if (j.contains("std")) {
      auto s = j["std"].get<std::string>();
      if (s == "population") c.deviation = stats::Deviation::Population;
      else if (s == "sample") c.deviation = stats::Deviation::Sample;
      else throw ConfigError("config: std must be 'population' or 'sample'");
    }
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      if (g.contains("degrees")) c.grid.degrees = g["degrees"].get<std::vector<int>>();
      if (g.contains("feature_counts")) c.grid.feature_counts = g["feature_counts"].get<std::vector<std::size_t>>();
      if (g.contains("c")) c.grid.cs = g["c"].get<std::vector<double>>();
      if (g.contains("ngram_degree2")) c.grid.ngram_degree2 = g["ngram_degree2"].get<bool>();
    }
    if (j.contains("datasets")) {
      for (const auto& d : j["datasets"]) {
        DatasetSpec spec;
        spec.name = d.at("name").get<std::string>();
        spec.path = resolve(base_dir, d.at("path").get<std::string>());
        spec.format = d.contains("format") ? parse_pair_format(d["format"].get<std::string>())
                                           : guess_pair_format(spec.path);
        spec.twitter = d.value("twitter", false);
        c.datasets.push_back(std::move(spec));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  for (int d : c.grid.degrees) {
    if (d != 1 && d != 2) throw ConfigError("config: grid degrees must be 1 or 2");
  }
  if (c.grid.degrees.empty() || c.grid.cs.empty() || c.grid.feature_counts.empty()) {
    throw ConfigError("config: grid lists must be non-empty");
  }
  for (double v : c.grid.cs) {
    if (!(v > 0.0)) throw ConfigError("config: grid c values must be positive");
  }
  for (auto k : c.grid.feature_counts) {
    if (k == 0) throw ConfigError("config: feature counts must be positive");
  }
  if (c.folds < 2) throw ConfigError("config: folds must be >= 2");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

void validate_config(const RunConfig& config, bool require_datasets) {
  if (config.dict_path.empty()) {
    throw ConfigError(std::string("no pronouncing dictionary configured (use --dict, the config file, or ") +
                      kDictEnvVar + ")");
  }
  if (!readable(config.dict_path)) throw ConfigError("dictionary not readable: " + config.dict_path.string());
  if (!config.stopword_path.empty() && !readable(config.stopword_path)) {
    throw ConfigError("stopword list not readable: " + config.stopword_path.string());
  }
  if (config.thresholds != kReferenceThresholds && !readable(config.thresholds)) {
    throw ConfigError("thresholds file not readable: " + config.thresholds);
  }
  if (require_datasets && config.datasets.empty()) throw ConfigError("no datasets configured");
  std::set<std::string> names;
  for (const auto& d : config.datasets) {
    if (d.name.empty()) throw ConfigError("dataset with empty name");
    if (!names.insert(d.name).second) throw ConfigError("duplicate dataset name '" + d.name + "'");
    if (!readable(d.path)) throw ConfigError("dataset '" + d.name + "' not readable: " + d.path.string());
  }
}

}  // namespace euphony
