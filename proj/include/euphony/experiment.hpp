#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "euphony/corpus.hpp"
#include "euphony/features.hpp"
#include "euphony/stats.hpp"
#include "euphony/svm.hpp"

namespace euphony {

struct Grid {
  std::vector<int> degrees{1, 2};
  std::vector<std::size_t> feature_counts = default_feature_counts();
  std::vector<double> cs{1.0};
  // Degree 2 over n-gram spaces goes through the kernelized solver; off by default.
  bool ngram_degree2 = false;

  static std::vector<std::size_t> default_feature_counts();  // 1000, 2000, ..., 20000
};

struct CvOptions {
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  Grid grid;
  double tolerance = 0.1;
  int max_epochs = 1000;
};

// A symmetrized corpus with per-sentence features computed once.
struct PreparedCorpus {
  struct Instance {
    std::uint32_t left = 0;   // index into sentences
    std::uint32_t right = 0;
    Side label = Side::Left;
    std::uint32_t group = 0;  // index into groups
  };

  PairCorpus corpus;
  std::vector<SentenceFeatures> sentences;
  std::vector<Instance> instances;
  std::vector<std::string> groups;

  const std::string& name() const { return corpus.name; }
  std::size_t size() const { return instances.size(); }
  TrainingInstance view(std::size_t i) const;
  SparseVector vectorize(std::size_t i, const FeatureSpace& space) const;
};

PreparedCorpus prepare_corpus(const PairCorpus& corpus, const FeatureContext& ctx, std::size_t threads = 1);

// Fold of every instance; a pair and its swapped twin share a fold. Throws
// std::invalid_argument when there are fewer pair groups than folds.
std::vector<std::size_t> assign_folds(const PreparedCorpus& data, std::size_t folds, std::uint64_t seed);

struct FoldPlan {
  std::size_t folds = 0;
  std::vector<std::size_t> fold_of;               // per instance
  std::vector<std::vector<std::size_t>> train;    // per fold
  std::vector<std::vector<std::size_t>> test;     // per fold
  std::vector<std::vector<RankedFeature>> ranking;  // per fold, from training instances only
};

FoldPlan make_fold_plan(const PreparedCorpus& data, const CvOptions& options);

struct GridPoint {
  int degree = 1;
  std::size_t k = 0;  // 0 for phonetic-only spaces
  double c = 1.0;

  std::string annotation() const;  // "(3k, 1)" or "(-, 2)"
  bool operator==(const GridPoint&) const = default;
};

std::vector<GridPoint> grid_points(const FeatureSpec& spec, const Grid& grid);

struct GridPointResult {
  GridPoint point;
  double accuracy = 0.0;               // mean over folds
  std::vector<double> fold_accuracy;
  std::vector<Side> predictions;       // out-of-fold prediction per instance
};

struct CvResult {
  FeatureSpec spec;
  std::vector<GridPointResult> points;
  std::size_t best = 0;

  const GridPointResult& best_point() const { return points.at(best); }
  double accuracy() const { return best_point().accuracy; }
  std::vector<bool> correct(const PreparedCorpus& data) const;
};

CvResult cross_validate(const PreparedCorpus& data, const FoldPlan& plan, const FeatureSpec& spec,
                        const CvOptions& options);

struct TrainingMeta {
  std::string dataset;
  std::uint64_t seed = 0;
  std::size_t folds = 0;
  double cv_accuracy = 0.0;
  std::size_t instances = 0;
};

struct Model {
  FeatureSpace space;
  SvmModel svm;
  GridPoint point;
  TrainingMeta meta;

  Side predict(const SentenceFeatures& left, const SentenceFeatures& right) const;
  Side predict(const SentencePair& pair, const FeatureContext& ctx) const;
};

// Selects features on all of `data` and trains with the given grid point.
Model fit_model(const PreparedCorpus& data, const FeatureSpec& spec, const GridPoint& point,
                const CvOptions& options);

std::string model_to_json(const Model& model);
Model model_from_json(std::string_view text);
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

double accuracy(const std::vector<Side>& predictions, const PreparedCorpus& data);

// ---- experiment runs -------------------------------------------------------

struct Comparison {
  std::string baseline;
  std::string candidate;
  stats::TestResult test;  // McNemar on out-of-fold correctness
};

struct WithinReport {
  std::string dataset;
  std::size_t instances = 0;
  std::vector<CvResult> results;          // phonetic, ngram, all
  std::vector<Comparison> comparisons;    // ngram vs phonetic, all vs ngram
  stats::TestResult phonetic_vs_chance;   // one-sided binomial, H1: accuracy > 0.5
};

WithinReport within_dataset(const PreparedCorpus& data, const FoldPlan& plan, const CvOptions& options);

struct AblationReport {
  std::string dataset;
  CvResult baseline;                      // ngram
  std::vector<CvResult> variants;         // ngram + one device, in device order
  std::vector<Comparison> comparisons;    // each variant vs baseline
};

AblationReport ablation_run(const PreparedCorpus& data, const FoldPlan& plan, const CvOptions& options);

struct CrossCell {
  FeatureSpec spec;
  GridPoint point;
  double train_cv_accuracy = 0.0;
  double accuracy = 0.0;
};

struct CrossReport {
  std::string train;
  std::string test;
  bool sanity_mode = false;  // train and test are the same corpus
  std::vector<CrossCell> cells;  // phonetic, ngram, all
};

CrossReport cross_dataset_eval(const PreparedCorpus& train, const FoldPlan& train_plan,
                               const PreparedCorpus& test, const CvOptions& options);

}  // namespace euphony
