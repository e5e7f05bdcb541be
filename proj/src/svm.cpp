#include "euphony/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace euphony {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Deterministic Fisher-Yates over the active prefix.
void shuffle_prefix(std::vector<std::size_t>& index, std::size_t active, std::mt19937_64& rng) {
  for (std::size_t i = 0; i + 1 < active; ++i) {
    const std::size_t span = active - i;
    const std::size_t j = i + static_cast<std::size_t>(rng() % span);
    std::swap(index[i], index[j]);
  }
}

struct DualResult {
  std::vector<double> alpha;
  std::size_t epochs = 0;
  bool converged = false;
};

// Dual coordinate descent for the L1-loss linear SVM with a bias feature
// fixed at 1 (appended as column `dims`).
DualResult solve_linear(const std::vector<SparseVector>& x, const std::vector<double>& y,
                        std::size_t dims, const SvmParams& p, std::vector<double>& w) {
  const std::size_t n = x.size();
  w.assign(dims + 1, 0.0);
  DualResult r;
  r.alpha.assign(n, 0.0);
  std::vector<double> qd(n, 1.0);  // bias contributes 1
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [_, v] : x[i]) qd[i] += v * v;
  }
  std::vector<std::size_t> index(n);
  for (std::size_t i = 0; i < n; ++i) index[i] = i;
  std::mt19937_64 rng(p.seed);

  std::size_t active = n;
  double pg_max_old = kInf;
  double pg_min_old = -kInf;
  const double upper = p.c;
  while (r.epochs < static_cast<std::size_t>(p.max_epochs)) {
    double pg_max_new = -kInf;
    double pg_min_new = kInf;
    shuffle_prefix(index, active, rng);
    for (std::size_t s = 0; s < active; ++s) {
      const std::size_t i = index[s];
      double g = w[dims];
      for (const auto& [j, v] : x[i]) g += w[j] * v;
      g = g * y[i] - 1.0;

      double pg = 0.0;
      auto& a = r.alpha[i];
      if (a == 0.0) {
        if (g > pg_max_old) {
          --active;
          std::swap(index[s], index[active]);
          --s;
          continue;
        }
        if (g < 0.0) pg = g;
      } else if (a == upper) {
        if (g < pg_min_old) {
          --active;
          std::swap(index[s], index[active]);
          --s;
          continue;
        }
        if (g > 0.0) pg = g;
      } else {
        pg = g;
      }
      pg_max_new = std::max(pg_max_new, pg);
      pg_min_new = std::min(pg_min_new, pg);

      if (std::abs(pg) > 1e-12) {
        const double old = a;
        a = std::min(std::max(a - g / qd[i], 0.0), upper);
        const double d = (a - old) * y[i];
        for (const auto& [j, v] : x[i]) w[j] += d * v;
        w[dims] += d;
      }
    }
    ++r.epochs;
    if (pg_max_new - pg_min_new <= p.tolerance) {
      if (active == n) {
        r.converged = true;
        break;
      }
      active = n;
      pg_max_old = kInf;
      pg_min_old = -kInf;
      continue;
    }
    pg_max_old = pg_max_new <= 0.0 ? kInf : pg_max_new;
    pg_min_old = pg_min_new >= 0.0 ? -kInf : pg_min_new;
  }
  return r;
}

// Dual coordinate descent with kernel (x.y + 1)^degree; the constant term
// plays the role of the bias so the dual has box constraints only.
DualResult solve_kernel(const std::vector<SparseVector>& x, const std::vector<double>& y,
                        const SvmParams& p) {
  const std::size_t n = x.size();
  DualResult r;
  r.alpha.assign(n, 0.0);
  std::vector<double> f(n, 0.0);  // sum_j alpha_j y_j K(i, j)
  std::vector<double> qd(n);
  for (std::size_t i = 0; i < n; ++i) qd[i] = polynomial_kernel(x[i], x[i], p.degree);
  std::vector<std::size_t> index(n);
  for (std::size_t i = 0; i < n; ++i) index[i] = i;
  std::mt19937_64 rng(p.seed);

  while (r.epochs < static_cast<std::size_t>(p.max_epochs)) {
    double pg_max = -kInf;
    double pg_min = kInf;
    shuffle_prefix(index, n, rng);
    for (const auto i : index) {
      const double g = y[i] * f[i] - 1.0;
      auto& a = r.alpha[i];
      double pg = g;
      if (a == 0.0) pg = std::min(g, 0.0);
      else if (a == p.c) pg = std::max(g, 0.0);
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (std::abs(pg) <= 1e-12) continue;
      const double old = a;
      a = std::min(std::max(a - g / qd[i], 0.0), p.c);
      const double d = (a - old) * y[i];
      if (d == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) f[j] += d * polynomial_kernel(x[i], x[j], p.degree);
    }
    ++r.epochs;
    if (pg_max - pg_min <= p.tolerance) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace

std::size_t quadratic_map_dimension(std::size_t dims) { return 1 + 2 * dims + dims * (dims - 1) / 2; }

SparseVector quadratic_map(const SparseVector& x, std::size_t dims) {
  constexpr double root2 = std::numbers::sqrt2;
  SparseVector out;
  out.reserve(1 + 2 * x.size() + x.size() * x.size() / 2);
  out.emplace_back(0, 1.0);
  for (const auto& [i, v] : x) out.emplace_back(static_cast<std::uint32_t>(1 + i), root2 * v);
  for (const auto& [i, v] : x) out.emplace_back(static_cast<std::uint32_t>(1 + dims + i), v * v);
  const std::size_t cross_base = 1 + 2 * dims;
  for (std::size_t a = 0; a < x.size(); ++a) {
    const std::size_t i = x[a].first;
    // Row offset of pair (i, j), j > i, in the upper-triangular enumeration.
    const std::size_t row = i * dims - i * (i + 1) / 2;
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      const std::size_t j = x[b].first;
      out.emplace_back(static_cast<std::uint32_t>(cross_base + row + (j - i - 1)),
                       root2 * x[a].second * x[b].second);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first == ib->first) {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return s;
}

double polynomial_kernel(const SparseVector& a, const SparseVector& b, int degree) {
  const double base = dot(a, b) + 1.0;
  return degree == 1 ? base : std::pow(base, degree);
}

double SvmModel::decision(const SparseVector& x) const {
  if (degenerate_) return 0.0;
  switch (form_) {
    case SvmForm::Linear: {
      double s = bias_;
      for (const auto& [j, v] : x) {
        if (j < weights_.size()) s += weights_[j] * v;
      }
      return s;
    }
    case SvmForm::ExplicitQuadratic: {
      double s = bias_;
      for (const auto& [j, v] : quadratic_map(x, input_dims_)) s += weights_[j] * v;
      return s;
    }
    case SvmForm::Kernel: {
      double s = 0.0;
      for (std::size_t i = 0; i < support_vectors_.size(); ++i) {
        s += coefficients_[i] * polynomial_kernel(support_vectors_[i], x, degree_);
      }
      return s;
    }
  }
  return 0.0;
}

SvmModel SvmModel::from_parts(SvmForm form, int degree, std::size_t input_dims, bool degenerate,
                              std::vector<double> weights, double bias,
                              std::vector<SparseVector> support_vectors, std::vector<double> coefficients) {
  if (support_vectors.size() != coefficients.size()) {
    throw std::invalid_argument("SvmModel: support vector / coefficient count mismatch");
  }
  SvmModel m;
  m.form_ = form;
  m.degree_ = degree;
  m.input_dims_ = input_dims;
  m.degenerate_ = degenerate;
  m.weights_ = std::move(weights);
  m.bias_ = bias;
  m.support_vectors_ = std::move(support_vectors);
  m.coefficients_ = std::move(coefficients);
  if (form == SvmForm::ExplicitQuadratic && !degenerate &&
      m.weights_.size() != quadratic_map_dimension(input_dims)) {
    throw std::invalid_argument("SvmModel: explicit quadratic weights have the wrong size");
  }
  return m;
}

SvmModel train_svm(const std::vector<SparseVector>& x, const std::vector<Side>& labels,
                   std::size_t dims, const SvmParams& params) {
  if (x.size() != labels.size()) throw std::invalid_argument("train_svm: size mismatch");
  if (x.size() < 2) throw std::invalid_argument("train_svm: need at least two instances");
  if (params.degree != 1 && params.degree != 2) throw std::invalid_argument("train_svm: degree must be 1 or 2");
  const auto lefts = std::count(labels.begin(), labels.end(), Side::Left);
  if (lefts == 0 || lefts == static_cast<std::ptrdiff_t>(labels.size())) {
    throw std::invalid_argument("train_svm: training data has a single class");
  }

  SvmModel model;
  model.degree_ = params.degree;
  model.input_dims_ = dims;
  if (std::all_of(x.begin(), x.end(), [](const SparseVector& v) { return v.empty(); })) {
    model.degenerate_ = true;
    model.converged_ = true;
    return model;
  }

  std::vector<double> y(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == Side::Left ? 1.0 : -1.0;

  if (params.degree == 1) {
    model.form_ = SvmForm::Linear;
    auto r = solve_linear(x, y, dims, params, model.weights_);
    model.bias_ = model.weights_.back();
    model.weights_.pop_back();
    model.epochs_ = r.epochs;
    model.converged_ = r.converged;
    return model;
  }

  if (dims <= kExplicitMapMaxDims) {
    model.form_ = SvmForm::ExplicitQuadratic;
    const std::size_t mapped_dims = quadratic_map_dimension(dims);
    std::vector<SparseVector> mapped;
    mapped.reserve(x.size());
    for (const auto& v : x) mapped.push_back(quadratic_map(v, dims));
    auto r = solve_linear(mapped, y, mapped_dims, params, model.weights_);
    model.bias_ = model.weights_.back();
    model.weights_.pop_back();
    model.epochs_ = r.epochs;
    model.converged_ = r.converged;
    return model;
  }

  model.form_ = SvmForm::Kernel;
  auto r = solve_kernel(x, y, params);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (r.alpha[i] > 0.0) {
      model.support_vectors_.push_back(x[i]);
      model.coefficients_.push_back(r.alpha[i] * y[i]);
    }
  }
  model.epochs_ = r.epochs;
  model.converged_ = r.converged;
  return model;
}

}  // namespace euphony
