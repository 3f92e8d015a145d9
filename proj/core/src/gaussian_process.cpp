#include "gridarena/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "gridarena/error.hpp"

namespace gridarena {

namespace {

struct Standardized {
  Eigen::VectorXd y;
  double mean = 0.0;
  double sd = 1.0;
};

Standardized standardize(const std::vector<double>& targets) {
  Standardized s;
  const auto n = static_cast<Eigen::Index>(targets.size());
  s.y = Eigen::Map<const Eigen::VectorXd>(targets.data(), n);
  s.mean = s.y.mean();
  const double var = n > 1 ? (s.y.array() - s.mean).square().sum() / static_cast<double>(n) : 0.0;
  s.sd = var > 0.0 ? std::sqrt(var) : 1.0;
  s.y = (s.y.array() - s.mean) / s.sd;
  return s;
}

Eigen::MatrixXd gram(const std::vector<double>& points, std::size_t dims,
                     const std::vector<double>& inv_ls) {
  const std::size_t n = points.size() / dims;
  Eigen::MatrixXd k(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    k(a, a) = 1.0;
    for (std::size_t b = 0; b < a; ++b) {
      double r2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        const double d = (points[a * dims + j] - points[b * dims + j]) * inv_ls[j];
        r2 += d * d;
      }
      k(a, b) = k(b, a) = std::exp(-0.5 * r2);
    }
  }
  return k;
}

std::vector<double> inverse_scales(const std::vector<double>& ls) {
  std::vector<double> inv(ls.size());
  for (std::size_t j = 0; j < ls.size(); ++j) inv[j] = ls[j] > 0.0 ? 1.0 / ls[j] : 0.0;
  return inv;
}

// Small diagonal floor so exact duplicates stay factorizable.
constexpr double kJitter = 1e-12;

}  // namespace

struct GaussianProcess::Impl {
  std::size_t dims = 0;
  std::vector<double> points;
  std::vector<double> inv_ls;
  Standardized target;
  Eigen::LLT<Eigen::MatrixXd> chol;
  Eigen::VectorXd alpha;
};

GaussianProcess::GaussianProcess(std::vector<double> points, std::size_t dims,
                                 std::vector<double> targets, std::vector<double> length_scales,
                                 double noise_variance)
    : impl_(std::make_unique<Impl>()), noise_(noise_variance) {
  if (dims == 0 || points.size() != targets.size() * dims || targets.empty())
    throw ConfigError("GP needs one coordinate row per target");
  if (length_scales.size() != dims) throw ConfigError("GP needs one length scale per axis");
  if (!(noise_variance >= 0.0)) throw ConfigError("GP noise variance must be non-negative");
  auto& m = *impl_;
  m.dims = dims;
  m.points = std::move(points);
  m.inv_ls = inverse_scales(length_scales);
  m.target = standardize(targets);

  Eigen::MatrixXd k = gram(m.points, dims, m.inv_ls);
  k.diagonal().array() += noise_variance + kJitter;
  m.chol.compute(k);
  if (m.chol.info() != Eigen::Success) throw Error("GP covariance is not positive definite");
  m.alpha = m.chol.solve(m.target.y);

  const auto n = static_cast<double>(targets.size());
  const double log_det = 2.0 * m.chol.matrixLLT().diagonal().array().log().sum();
  log_ml_ = -0.5 * m.target.y.dot(m.alpha) - 0.5 * log_det -
            0.5 * n * std::log(2.0 * std::numbers::pi);
}

GaussianProcess::~GaussianProcess() = default;
GaussianProcess::GaussianProcess(GaussianProcess&&) noexcept = default;
GaussianProcess& GaussianProcess::operator=(GaussianProcess&&) noexcept = default;

Posterior GaussianProcess::predict(std::span<const double> x) const {
  return predict_many(x).front();
}

std::vector<Posterior> GaussianProcess::predict_many(std::span<const double> xs) const {
  const auto& m = *impl_;
  const std::size_t dims = m.dims;
  if (xs.size() % dims != 0) throw ConfigError("query rows must have one entry per axis");
  const std::size_t q = xs.size() / dims;
  const std::size_t n = m.points.size() / dims;

  Eigen::MatrixXd cross(n, q);
  for (std::size_t c = 0; c < q; ++c) {
    for (std::size_t a = 0; a < n; ++a) {
      double r2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        const double d = (xs[c * dims + j] - m.points[a * dims + j]) * m.inv_ls[j];
        r2 += d * d;
      }
      cross(a, c) = std::exp(-0.5 * r2);
    }
  }
  const Eigen::VectorXd mean = cross.transpose() * m.alpha;
  const Eigen::MatrixXd v = m.chol.matrixL().solve(cross);
  const Eigen::VectorXd reduction = v.colwise().squaredNorm().transpose();

  std::vector<Posterior> out(q);
  const double var_scale = m.target.sd * m.target.sd;
  for (std::size_t c = 0; c < q; ++c) {
    const auto i = static_cast<Eigen::Index>(c);
    out[c].mean = m.target.mean + m.target.sd * mean(i);
    out[c].variance = std::max(0.0, 1.0 - reduction(i)) * var_scale;
  }
  return out;
}

double GaussianProcess::fit_noise(const std::vector<double>& points, std::size_t dims,
                                  const std::vector<double>& targets,
                                  const std::vector<double>& length_scales, double lo, double hi,
                                  std::size_t steps) {
  if (!(lo > 0.0) || !(hi >= lo) || steps == 0)
    throw ConfigError("noise grid needs 0 < lo <= hi and at least one step");
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  double best_noise = lo;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(s) / static_cast<double>(steps - 1);
    const double noise = std::exp(log_lo + t * (log_hi - log_lo));
    double ll = -std::numeric_limits<double>::infinity();
    try {
      ll = GaussianProcess(points, dims, targets, length_scales, noise).log_marginal_likelihood();
    } catch (const Error&) {
      continue;
    }
    if (ll > best_ll) {
      best_ll = ll;
      best_noise = noise;
    }
  }
  return best_noise;
}

double expected_improvement(double mean, double sd, double best) noexcept {
  const double gain = mean - best;
  if (!(sd > 1e-12)) return std::max(gain, 0.0);
  const double z = gain / sd;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return gain * cdf + sd * pdf;
}

}  // namespace gridarena
