#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "repagg/feature_matrix.hpp"

namespace repagg {

struct SvrParams {
  double c = 1.0;
  double epsilon = 0.1;
  double gamma = 0.2;
  double tolerance = 1e-3;
  std::size_t max_iterations = 10'000'000;
  /// Upper bound on memory used for cached kernel rows.
  std::size_t cache_bytes = std::size_t{256} << 20;
};

/// Epsilon-insensitive support vector regression with an RBF kernel,
/// trained by sequential minimal optimization on the dual
///
///   min  1/2 (a - a*)' K (a - a*) + eps * sum(a + a*) - y' (a - a*)
///   s.t. sum(a - a*) = 0,  0 <= a, a* <= C
///
/// using second-order working-set selection. Training stops once the
/// maximal KKT violation gap drops below `tolerance`.
class SupportVectorRegression {
 public:
  static SupportVectorRegression fit(const FeatureMatrix& x, std::span<const double> y,
                                     const SvrParams& params);

  double predict(std::span<const double> row) const;

  /// Dual variables a_i and a*_i for every training row.
  const std::vector<double>& alpha() const noexcept { return alpha_; }
  const std::vector<double>& alpha_star() const noexcept { return alpha_star_; }
  double bias() const noexcept { return bias_; }
  std::size_t iterations() const noexcept { return iterations_; }
  bool converged() const noexcept { return converged_; }
  std::size_t support_vector_count() const noexcept { return support_.rows(); }
  const SvrParams& params() const noexcept { return params_; }

 private:
  SvrParams params_;
  FeatureMatrix support_;
  std::vector<double> coefficients_;  // a_i - a*_i of the support rows
  std::vector<double> alpha_;
  std::vector<double> alpha_star_;
  double bias_ = 0.0;
  std::size_t iterations_ = 0;
  bool converged_ = false;
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

}  // namespace repagg
