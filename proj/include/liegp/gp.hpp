#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "liegp/kernels.hpp"

namespace liegp::gp {

// Regression data: inputs on one space, real targets, and observation noise
// given either as a scalar variance (applied i.i.d.) or as a full PSD
// covariance matrix.  Both zero is valid (noiseless interpolation).
struct Dataset {
  std::vector<spaces::SpacePoint> inputs;
  Eigen::VectorXd targets;
  double noise_variance = 0.0;
  Eigen::MatrixXd noise_matrix;  // used instead of noise_variance when non-empty

  int size() const { return static_cast<int>(inputs.size()); }
  bool has_noise_matrix() const { return noise_matrix.size() > 0; }
  Eigen::MatrixXd noise_cov() const;  // N x N covariance from either field
};

// Cholesky factorization with an escalating diagonal jitter: tries no jitter
// first, then 1e-10 * scale growing tenfold up to 1e-6 * scale; throws
// NumericalError if the matrix is still not positive definite.  `scale`
// should be the kernel variance sigma2.
struct JitteredCholesky {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
};

JitteredCholesky cholesky_with_jitter(const Eigen::MatrixXd& a, double scale);

// Exact posterior of the GP prior `k` conditioned on `data`, evaluated at
// `query`: mean K_*x (K_xx + S)^{-1} y and covariance
// K_** - K_*x (K_xx + S)^{-1} K_x*.  An empty dataset returns the prior.
struct PosteriorResult {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  double jitter_used = 0.0;
};

PosteriorResult posterior_mean_cov(const kernels::SpectralKernel& k, const Dataset& data,
                                   std::span<const spaces::SpacePoint> query);

// log p(y) = -1/2 y^T (K+S)^{-1} y - 1/2 log det(K+S) - N/2 log(2 pi),
// computed from the jittered Cholesky factor.
double log_marginal_likelihood(const kernels::SpectralKernel& k, const Dataset& data);

// Maximum-likelihood hyperparameter fit by Nelder-Mead in log-parameter
// space (log kappa, log sigma2, log noise variance, and optionally log nu),
// with `restarts` jittered re-initializations.  Deterministic given `seed`.
struct FitOptions {
  bool fit_nu = false;    // Matern nu stays fixed unless requested
  int restarts = 5;
  int max_iterations = 200;
  double tolerance = 1e-7;
  std::uint64_t seed = 0;
  double min_noise = 1e-10;  // lower bound keeping the objective finite
};

struct FitResult {
  kernels::SpectralDensity density;  // best hyperparameters found
  double noise_variance = 0.0;
  double best_lml = 0.0;
  double initial_lml = 0.0;
  bool improved = false;  // false: no restart beat the initial parameters
  std::vector<double> lml_trace;  // best LML after each objective evaluation
};

FitResult fit_hyperparameters(const spaces::SpaceId& space, const kernels::SpectralDensity& init,
                              double init_noise_variance, const Dataset& data, int budget,
                              const FitOptions& options);

}  // namespace liegp::gp
