#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace gridarena {

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;  // latent (noise-free) variance
};

/// GP regression with a squared-exponential kernel of unit signal variance
/// and fixed per-axis length scales. Targets are standardized internally;
/// predictions come back in the original units.
class GaussianProcess {
 public:
  /// `points` holds one row of `dims` coordinates per observation.
  GaussianProcess(std::vector<double> points, std::size_t dims, std::vector<double> targets,
                  std::vector<double> length_scales, double noise_variance);
  ~GaussianProcess();
  GaussianProcess(GaussianProcess&&) noexcept;
  GaussianProcess& operator=(GaussianProcess&&) noexcept;

  double noise_variance() const noexcept { return noise_; }
  /// Log marginal likelihood of the standardized targets.
  double log_marginal_likelihood() const noexcept { return log_ml_; }

  Posterior predict(std::span<const double> x) const;
  /// Batch prediction; `xs` holds rows of `dims` coordinates.
  std::vector<Posterior> predict_many(std::span<const double> xs) const;

  /// Noise variance maximizing the marginal likelihood over a log-spaced
  /// grid [lo, hi] with `steps` points; ties go to the smaller value.
  static double fit_noise(const std::vector<double>& points, std::size_t dims,
                          const std::vector<double>& targets,
                          const std::vector<double>& length_scales, double lo, double hi,
                          std::size_t steps);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double noise_ = 0.0;
  double log_ml_ = 0.0;
};

/// Expected improvement over `best` for a maximization problem.
double expected_improvement(double mean, double sd, double best) noexcept;

}  // namespace gridarena
