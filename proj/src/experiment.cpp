#include "euphony/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "euphony/parallel.hpp"

namespace euphony {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t unit_seed(std::uint64_t seed, std::size_t fold, const GridPoint& p) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ fold);
  h = splitmix64(h ^ static_cast<std::uint64_t>(p.degree));
  h = splitmix64(h ^ p.k);
  h = splitmix64(h ^ static_cast<std::uint64_t>(p.c * 1e6));
  return h;
}

SvmParams svm_params(const GridPoint& p, const CvOptions& options, std::uint64_t seed) {
  SvmParams sp;
  sp.degree = p.degree;
  sp.c = p.c;
  sp.tolerance = options.tolerance;
  sp.max_epochs = options.max_epochs;
  sp.seed = seed;
  return sp;
}

std::string form_name(SvmForm f) {
  switch (f) {
    case SvmForm::Linear: return "linear";
    case SvmForm::ExplicitQuadratic: return "explicit-quadratic";
    case SvmForm::Kernel: return "kernel";
  }
  return "linear";
}

SvmForm parse_form(const std::string& s) {
  if (s == "linear") return SvmForm::Linear;
  if (s == "explicit-quadratic") return SvmForm::ExplicitQuadratic;
  if (s == "kernel") return SvmForm::Kernel;
  throw std::runtime_error("model: unknown svm form '" + s + "'");
}

nlohmann::json sparse_to_json(const SparseVector& v) {
  auto arr = nlohmann::json::array();
  for (const auto& [i, x] : v) arr.push_back({i, x});
  return arr;
}

SparseVector sparse_from_json(const nlohmann::json& arr) {
  SparseVector v;
  for (const auto& e : arr) v.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<double>());
  return v;
}

}  // namespace

std::vector<std::size_t> Grid::default_feature_counts() {
  std::vector<std::size_t> out;
  for (std::size_t k = 1000; k <= 20000; k += 1000) out.push_back(k);
  return out;
}

TrainingInstance PreparedCorpus::view(std::size_t i) const {
  const auto& inst = instances[i];
  return {&sentences[inst.left], &sentences[inst.right], inst.label};
}

SparseVector PreparedCorpus::vectorize(std::size_t i, const FeatureSpace& space) const {
  const auto& inst = instances[i];
  return space.vectorize(sentences[inst.left], sentences[inst.right]);
}

PreparedCorpus prepare_corpus(const PairCorpus& corpus, const FeatureContext& ctx, std::size_t threads) {
  PreparedCorpus out;
  out.corpus = corpus.symmetrized ? corpus : symmetrize(corpus);

  std::unordered_map<std::string, std::uint32_t> text_index;
  std::vector<const std::string*> texts;
  std::unordered_map<std::string, std::uint32_t> group_index;
  auto intern = [&](const std::string& text) {
    auto [it, inserted] = text_index.try_emplace(text, static_cast<std::uint32_t>(texts.size()));
    if (inserted) texts.push_back(&it->first);
    return it->second;
  };
  for (const auto& p : out.corpus.pairs) {
    PreparedCorpus::Instance inst;
    inst.left = intern(p.left);
    inst.right = intern(p.right);
    inst.label = p.label;
    const auto& g = p.group.empty() ? p.pair_id : p.group;
    auto [it, inserted] = group_index.try_emplace(g, static_cast<std::uint32_t>(out.groups.size()));
    if (inserted) out.groups.push_back(g);
    inst.group = it->second;
    out.instances.push_back(inst);
  }
  out.sentences.resize(texts.size());
  parallel_for(texts.size(), threads,
               [&](std::size_t i) { out.sentences[i] = sentence_features(*texts[i], ctx); });
  return out;
}

std::vector<std::size_t> assign_folds(const PreparedCorpus& data, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("assign_folds: need at least 2 folds");
  if (data.groups.size() < folds) {
    throw std::invalid_argument("corpus '" + data.name() + "' has " + std::to_string(data.groups.size()) +
                                " pairs, fewer than " + std::to_string(folds) + " folds");
  }
  std::vector<std::size_t> order(data.groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (order.size() - i));
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> group_fold(data.groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) group_fold[order[i]] = i % folds;
  std::vector<std::size_t> out(data.instances.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = group_fold[data.instances[i].group];
  return out;
}

FoldPlan make_fold_plan(const PreparedCorpus& data, const CvOptions& options) {
  FoldPlan plan;
  plan.folds = options.folds;
  plan.fold_of = assign_folds(data, options.folds, options.seed);
  plan.train.resize(options.folds);
  plan.test.resize(options.folds);
  for (std::size_t i = 0; i < plan.fold_of.size(); ++i) {
    for (std::size_t f = 0; f < options.folds; ++f) {
      (plan.fold_of[i] == f ? plan.test : plan.train)[f].push_back(i);
    }
  }
  plan.ranking.resize(options.folds);
  parallel_for(options.folds, options.threads, [&](std::size_t f) {
    std::vector<TrainingInstance> train;
    train.reserve(plan.train[f].size());
    for (auto i : plan.train[f]) train.push_back(data.view(i));
    plan.ranking[f] = rank_ngrams(train);
  });
  return plan;
}

std::string GridPoint::annotation() const {
  std::string size = "-";
  if (k > 0) {
    size = (k % 1000 == 0) ? std::to_string(k / 1000) + "k" : std::to_string(k);
  }
  return "(" + size + ", " + std::to_string(degree) + ")";
}

std::vector<GridPoint> grid_points(const FeatureSpec& spec, const Grid& grid) {
  std::vector<GridPoint> out;
  for (int d : grid.degrees) {
    if (spec.ngrams && d == 2 && !grid.ngram_degree2) continue;
    for (double c : grid.cs) {
      if (!spec.ngrams) {
        out.push_back({d, 0, c});
        continue;
      }
      for (auto k : grid.feature_counts) out.push_back({d, k, c});
    }
  }
  if (out.empty()) throw std::invalid_argument("grid has no points for feature set " + spec.name());
  return out;
}

std::vector<bool> CvResult::correct(const PreparedCorpus& data) const {
  const auto& pred = best_point().predictions;
  std::vector<bool> out(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) out[i] = pred[i] == data.instances[i].label;
  return out;
}

CvResult cross_validate(const PreparedCorpus& data, const FoldPlan& plan, const FeatureSpec& spec,
                        const CvOptions& options) {
  if (plan.fold_of.size() != data.size()) throw std::invalid_argument("cross_validate: fold plan mismatch");
  auto points = grid_points(spec, options.grid);

  // Feature counts at or beyond every fold's vocabulary all select the full
  // vocabulary; keep only the first of them.
  if (spec.ngrams) {
    std::size_t max_vocab = 0;
    for (const auto& r : plan.ranking) max_vocab = std::max(max_vocab, r.size());
    std::vector<GridPoint> kept;
    for (const auto& p : points) {
      bool redundant = false;
      if (p.k >= max_vocab) {
        for (const auto& q : kept) {
          if (q.degree == p.degree && q.c == p.c && q.k >= max_vocab) redundant = true;
        }
      }
      if (!redundant) kept.push_back(p);
    }
    points = std::move(kept);
  }

  CvResult result;
  result.spec = spec;
  result.points.resize(points.size());
  for (std::size_t g = 0; g < points.size(); ++g) {
    result.points[g].point = points[g];
    result.points[g].fold_accuracy.assign(plan.folds, 0.0);
    result.points[g].predictions.assign(data.size(), Side::Left);
  }

  parallel_for(points.size() * plan.folds, options.threads, [&](std::size_t unit) {
    const std::size_t g = unit / plan.folds;
    const std::size_t f = unit % plan.folds;
    const auto& point = points[g];
    const auto space = select_top_k(spec, plan.ranking[f], point.k);

    std::vector<SparseVector> x;
    std::vector<Side> y;
    x.reserve(plan.train[f].size());
    y.reserve(plan.train[f].size());
    for (auto i : plan.train[f]) {
      x.push_back(data.vectorize(i, space));
      y.push_back(data.instances[i].label);
    }
    const auto svm = train_svm(x, y, space.dimension(), svm_params(point, options, unit_seed(options.seed, f, point)));

    auto& out = result.points[g];
    std::size_t hits = 0;
    for (auto i : plan.test[f]) {
      const Side pred = svm.predict(data.vectorize(i, space));
      out.predictions[i] = pred;
      hits += pred == data.instances[i].label;
    }
    out.fold_accuracy[f] = plan.test[f].empty()
                               ? 0.0
                               : static_cast<double>(hits) / static_cast<double>(plan.test[f].size());
  });

  for (auto& p : result.points) {
    double sum = 0.0;
    for (double a : p.fold_accuracy) sum += a;
    p.accuracy = sum / static_cast<double>(plan.folds);
  }
  for (std::size_t g = 1; g < result.points.size(); ++g) {
    if (result.points[g].accuracy > result.points[result.best].accuracy) result.best = g;
  }
  return result;
}

Side Model::predict(const SentenceFeatures& left, const SentenceFeatures& right) const {
  return svm.predict(space.vectorize(left, right));
}

Side Model::predict(const SentencePair& pair, const FeatureContext& ctx) const {
  return predict(sentence_features(pair.left, ctx), sentence_features(pair.right, ctx));
}

Model fit_model(const PreparedCorpus& data, const FeatureSpec& spec, const GridPoint& point,
                const CvOptions& options) {
  Model model;
  model.point = point;
  if (spec.ngrams) {
    std::vector<TrainingInstance> all;
    all.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) all.push_back(data.view(i));
    model.space = select_top_k(spec, rank_ngrams(all), point.k);
  } else {
    model.space = FeatureSpace(spec, {});
  }
  std::vector<SparseVector> x;
  std::vector<Side> y;
  for (std::size_t i = 0; i < data.size(); ++i) {
    x.push_back(data.vectorize(i, model.space));
    y.push_back(data.instances[i].label);
  }
  model.svm = train_svm(x, y, model.space.dimension(),
                        svm_params(point, options, unit_seed(options.seed, options.folds, point)));
  model.meta.dataset = data.name();
  model.meta.seed = options.seed;
  model.meta.folds = options.folds;
  model.meta.instances = data.size();
  return model;
}

std::string model_to_json(const Model& model) {
  nlohmann::ordered_json j;
  j["format"] = "euphony-model";
  j["version"] = 1;
  j["feature_set"] = model.space.spec().name();
  j["ngrams"] = model.space.spec().ngrams;
  auto devices = nlohmann::json::array();
  for (auto d : model.space.spec().devices) devices.push_back(device_name(d));
  j["devices"] = devices;
  j["vocabulary"] = model.space.ngram_names();
  j["kernel_degree"] = model.point.degree;
  j["selected_k"] = model.point.k;
  j["c"] = model.point.c;
  const auto& svm = model.svm;
  j["svm"] = {{"form", form_name(svm.form())},
              {"input_dims", svm.input_dims()},
              {"degenerate", svm.degenerate()},
              {"bias", svm.bias()},
              {"weights", svm.weights()}};
  auto svs = nlohmann::json::array();
  for (const auto& sv : svm.support_vectors()) svs.push_back(sparse_to_json(sv));
  j["svm"]["support_vectors"] = svs;
  j["svm"]["coefficients"] = svm.coefficients();
  j["training_meta"] = {{"dataset", model.meta.dataset},
                        {"seed", model.meta.seed},
                        {"folds", model.meta.folds},
                        {"cv_accuracy", model.meta.cv_accuracy},
                        {"instances", model.meta.instances}};
  return j.dump(1) + "\n";
}

Model model_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("format", "") != "euphony-model") throw std::runtime_error("model: not a euphony model file");
  if (j.value("version", 0) != 1) throw std::runtime_error("model: unsupported version");
  Model m;
  FeatureSpec spec;
  spec.ngrams = j.at("ngrams").get<bool>();
  for (const auto& name : j.at("devices")) {
    bool found = false;
    for (auto d : kDevices) {
      if (name.get<std::string>() == device_name(d)) {
        spec.devices.push_back(d);
        found = true;
      }
    }
    if (!found) throw std::runtime_error("model: unknown device " + name.dump());
  }
  m.space = FeatureSpace(spec, j.at("vocabulary").get<std::vector<std::string>>());
  m.point.degree = j.at("kernel_degree").get<int>();
  m.point.k = j.at("selected_k").get<std::size_t>();
  m.point.c = j.at("c").get<double>();
  const auto& s = j.at("svm");
  std::vector<SparseVector> svs;
  for (const auto& sv : s.at("support_vectors")) svs.push_back(sparse_from_json(sv));
  m.svm = SvmModel::from_parts(parse_form(s.at("form").get<std::string>()), m.point.degree,
                               s.at("input_dims").get<std::size_t>(), s.at("degenerate").get<bool>(),
                               s.at("weights").get<std::vector<double>>(), s.at("bias").get<double>(),
                               std::move(svs), s.at("coefficients").get<std::vector<double>>());
  const auto& meta = j.at("training_meta");
  m.meta.dataset = meta.at("dataset").get<std::string>();
  m.meta.seed = meta.at("seed").get<std::uint64_t>();
  m.meta.folds = meta.at("folds").get<std::size_t>();
  m.meta.cv_accuracy = meta.at("cv_accuracy").get<double>();
  m.meta.instances = meta.at("instances").get<std::size_t>();
  return m;
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model: " + path.string());
  out << model_to_json(model);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read model: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

double accuracy(const std::vector<Side>& predictions, const PreparedCorpus& data) {
  if (predictions.size() != data.size()) throw std::invalid_argument("accuracy: size mismatch");
  if (predictions.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) hits += predictions[i] == data.instances[i].label;
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

WithinReport within_dataset(const PreparedCorpus& data, const FoldPlan& plan, const CvOptions& options) {
  WithinReport report;
  report.dataset = data.name();
  report.instances = data.size();
  for (const auto& spec : {FeatureSpec::phonetic(), FeatureSpec::ngram(), FeatureSpec::all()}) {
    report.results.push_back(cross_validate(data, plan, spec, options));
  }
  for (std::size_t i = 1; i < report.results.size(); ++i) {
    const auto& base = report.results[i - 1];
    const auto& cand = report.results[i];
    report.comparisons.push_back(
        {base.spec.name(), cand.spec.name(), stats::mcnemar(base.correct(data), cand.correct(data))});
  }
  const auto phon = report.results[0].correct(data);
  const auto hits = static_cast<std::size_t>(std::count(phon.begin(), phon.end(), true));
  report.phonetic_vs_chance = stats::binomial_test_greater(hits, phon.size(), 0.5);
  return report;
}

AblationReport ablation_run(const PreparedCorpus& data, const FoldPlan& plan, const CvOptions& options) {
  AblationReport report;
  report.dataset = data.name();
  report.baseline = cross_validate(data, plan, FeatureSpec::ngram(), options);
  const auto base_correct = report.baseline.correct(data);
  for (auto d : kDevices) {
    auto cv = cross_validate(data, plan, FeatureSpec::ngram_plus(d), options);
    report.comparisons.push_back({report.baseline.spec.name(), cv.spec.name(),
                                  stats::mcnemar(base_correct, cv.correct(data))});
    report.variants.push_back(std::move(cv));
  }
  return report;
}

CrossReport cross_dataset_eval(const PreparedCorpus& train, const FoldPlan& train_plan,
                               const PreparedCorpus& test, const CvOptions& options) {
  CrossReport report;
  report.train = train.name();
  report.test = test.name();
  report.sanity_mode = train.name() == test.name();
  for (const auto& spec : {FeatureSpec::phonetic(), FeatureSpec::ngram(), FeatureSpec::all()}) {
    const auto cv = cross_validate(train, train_plan, spec, options);
    const auto model = fit_model(train, spec, cv.best_point().point, options);
    std::vector<Side> predictions(test.size());
    parallel_for(test.size(), options.threads, [&](std::size_t i) {
      const auto& inst = test.instances[i];
      predictions[i] = model.predict(test.sentences[inst.left], test.sentences[inst.right]);
    });
    report.cells.push_back({spec, cv.best_point().point, cv.accuracy(), accuracy(predictions, test)});
  }
  return report;
}

}  // namespace euphony
