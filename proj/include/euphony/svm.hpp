#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "euphony/features.hpp"

namespace euphony {

struct SvmParams {
  int degree = 1;            // polynomial kernel (x.y + 1)^degree, 1 or 2
  double c = 1.0;
  double tolerance = 0.1;    // projected-gradient stopping tolerance
  int max_epochs = 1000;
  std::uint64_t seed = 1;
};

// Degree 2 is trained in the explicit feature space up to this many input
// dimensions; larger inputs use the kernelized solver.
inline constexpr std::size_t kExplicitMapMaxDims = 256;

// phi(x) with phi(x).phi(y) = (x.y + 1)^2: [1, sqrt2*x_i, x_i^2, sqrt2*x_i*x_j (i<j)].
SparseVector quadratic_map(const SparseVector& x, std::size_t dims);
std::size_t quadratic_map_dimension(std::size_t dims);

double dot(const SparseVector& a, const SparseVector& b);
double polynomial_kernel(const SparseVector& a, const SparseVector& b, int degree);

enum class SvmForm { Linear, ExplicitQuadratic, Kernel };

// L1-loss SVM trained by dual coordinate descent. Labels are Left (+1) and
// Right (-1); the decision value's sign picks the side, zero meaning Left.
class SvmModel {
 public:
  SvmModel() = default;

  double decision(const SparseVector& x) const;
  Side predict(const SparseVector& x) const { return decision(x) >= 0.0 ? Side::Left : Side::Right; }

  SvmForm form() const { return form_; }
  int degree() const { return degree_; }
  std::size_t input_dims() const { return input_dims_; }
  bool degenerate() const { return degenerate_; }
  std::size_t epochs() const { return epochs_; }
  bool converged() const { return converged_; }

  // Linear and explicit forms: weights over the (mapped) input plus bias.
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  // Kernel form: support vectors with coefficients alpha_i * y_i.
  const std::vector<SparseVector>& support_vectors() const { return support_vectors_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  static SvmModel from_parts(SvmForm form, int degree, std::size_t input_dims, bool degenerate,
                             std::vector<double> weights, double bias,
                             std::vector<SparseVector> support_vectors, std::vector<double> coefficients);

 private:
  friend SvmModel train_svm(const std::vector<SparseVector>&, const std::vector<Side>&, std::size_t,
                            const SvmParams&);

  SvmForm form_ = SvmForm::Linear;
  int degree_ = 1;
  std::size_t input_dims_ = 0;
  bool degenerate_ = false;
  std::size_t epochs_ = 0;
  bool converged_ = false;
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::vector<SparseVector> support_vectors_;
  std::vector<double> coefficients_;
};

// Throws std::invalid_argument with fewer than two instances, a single label
// class, or a degree outside {1, 2}. All-empty inputs produce a degenerate
// constant model.
SvmModel train_svm(const std::vector<SparseVector>& x, const std::vector<Side>& labels,
                   std::size_t dims, const SvmParams& params);

}  // namespace euphony
