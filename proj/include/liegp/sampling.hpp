#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "liegp/gp.hpp"
#include "liegp/kernels.hpp"

namespace liegp::sampling {

// One level of a random-phase feature basis.  The per-level phase function
//   groups, self-conjugate level:  K(x, u) = dim * Re chi(u^{-1} x)
//   groups, conjugate pair:        K(x, u) = 2 * dim * Re chi(u^{-1} x)
//     (only the lexicographically smaller signature of the pair is kept;
//      the factor 2 absorbs its partner)
//   spheres:                       K(x, u) = Z_l(cos d(x, u))
// paired with i.i.d. N(0, weight_variance) weights reproduces that level's
// kernel term in expectation over Haar phases u.
struct FeatureLevel {
  kernels::KernelLevel level;
  bool doubled = false;          // conjugate-pair representative
  double weight_std = 0.0;       // sqrt(level.coefficient)
};

// Random-phase Fourier feature basis: L Haar phases shared across levels.
// A function draw is f(x) = Phi(x) * z with z i.i.d. standard normal, where
// Phi has one column per (level, phase) holding
//   weight_std / sqrt(L) * K_level(x, u_phase).
// E[f(x) f(y)] over both z and the phases equals the truncated kernel.
struct FeatureBasis {
  kernels::SpectralKernel kernel;
  int num_features = 0;  // L
  std::vector<spaces::SpacePoint> phases;
  std::vector<FeatureLevel> levels;

  int num_columns() const { return static_cast<int>(levels.size()) * num_features; }

  // Rows: points; columns: (level-major, phase-minor).
  Eigen::MatrixXd feature_matrix(std::span<const spaces::SpacePoint> points) const;
};

FeatureBasis build_feature_basis(const kernels::SpectralKernel& kernel, int num_features,
                                 Rng& rng);

// The covariance Phi Phi^T implied by the basis at fixed phases — what
// sample averages over weight draws converge to (it approaches the truncated
// kernel at rate 1/sqrt(L) as the phase count L grows).
Eigen::MatrixXd feature_covariance(const FeatureBasis& basis,
                                   std::span<const spaces::SpacePoint> points);

// A draw from the approximate prior: evaluable at arbitrary points.
class PriorSample {
 public:
  PriorSample(std::shared_ptr<const FeatureBasis> basis, Eigen::VectorXd weights);

  double operator()(const spaces::SpacePoint& x) const;
  Eigen::VectorXd at(std::span<const spaces::SpacePoint> points) const;

  const FeatureBasis& basis() const { return *basis_; }
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  std::shared_ptr<const FeatureBasis> basis_;
  Eigen::VectorXd weights_;
};

PriorSample draw_prior_sample(std::shared_ptr<const FeatureBasis> basis, Rng& rng);

// A pathwise-conditioned posterior draw:
//   g(x) = f(x) + K(x, X) beta,
//   beta = (K_XX + S)^{-1} (y - f(X) - eps),  eps ~ N(0, S),
// where f is a prior draw and K the exact truncated kernel.  Matches the
// exact posterior moments in expectation over f, eps (up to feature-basis
// truncation), and interpolates the data exactly when S = 0.
class PosteriorSample {
 public:
  PosteriorSample(PriorSample prior, std::shared_ptr<const gp::Dataset> data,
                  Eigen::VectorXd beta);

  double operator()(const spaces::SpacePoint& x) const;
  Eigen::VectorXd at(std::span<const spaces::SpacePoint> points) const;

  double jitter_used() const { return jitter_used_; }

 private:
  friend PosteriorSample draw_posterior_sample(PriorSample prior,
                                               std::shared_ptr<const gp::Dataset> data, Rng& rng);
  PriorSample prior_;
  std::shared_ptr<const gp::Dataset> data_;
  Eigen::VectorXd beta_;
  double jitter_used_ = 0.0;
};

PosteriorSample draw_posterior_sample(PriorSample prior, std::shared_ptr<const gp::Dataset> data,
                                      Rng& rng);

// A single spectral level viewed as a reproducing kernel: the (possibly
// complex) kernel function together with the dimension of the function
// space it spans (dim^2 for a group level, the harmonic multiplicity for a
// zonal level).
struct LevelKernel {
  spaces::SpaceId space;
  long long span_dim = 0;
  std::function<std::complex<double>(const spaces::SpacePoint&, const spaces::SpacePoint&)> eval;
};

LevelKernel group_level_kernel(const repr::GroupId& g, const repr::Representation& rep);
LevelKernel zonal_level_kernel(const spaces::SpaceId& space, const spaces::ZonalLevel& level);

// span_dim points whose level Gram matrix is well-conditioned (smallest
// eigenvalue > 1e-8 * trace / N), found by resampling uniformly at random
// up to `max_attempts` times.  Throws DegenerateLevelError on failure —
// in particular when N exceeds the level's true span dimension.
std::vector<spaces::SpacePoint> find_fundamental_set(const LevelKernel& level, int size,
                                                     Rng& rng, int max_attempts = 100);

// Orthonormal basis of the level's function space obtained by Gram-Schmidt
// (via Cholesky) on the kernel translates K(., x_j) of a fundamental set:
//   e_i(x) = sum_j C(j, i) K(x, x_j),   C = R^{-*},  Gram = R R^*.
// Basis functions are L^2(Haar)-orthonormal and satisfy
//   sum_i e_i(x) conj(e_i(y)) = K(x, y).
struct KlBasis {
  std::vector<spaces::SpacePoint> points;
  Eigen::MatrixXcd coefficients;  // C, upper triangular
  LevelKernel level;

  int size() const { return static_cast<int>(points.size()); }
  std::complex<double> evaluate(int i, const spaces::SpacePoint& x) const;
  Eigen::VectorXcd evaluate_all(const spaces::SpacePoint& x) const;
};

KlBasis kl_basis(const LevelKernel& level, std::span<const spaces::SpacePoint> fundamental_set);

}  // namespace liegp::sampling
