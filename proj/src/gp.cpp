#include "liegp/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liegp/rng.hpp"

namespace liegp::gp {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void validate_dataset(const Dataset& data) {
  if (data.targets.size() != data.size()) {
    throw InvalidConfig("dataset: targets length must match number of inputs");
  }
  if (data.noise_variance < 0 || !std::isfinite(data.noise_variance)) {
    throw InvalidConfig("dataset: noise variance must be non-negative and finite");
  }
  if (data.has_noise_matrix() &&
      (data.noise_matrix.rows() != data.size() || data.noise_matrix.cols() != data.size())) {
    throw InvalidConfig("dataset: noise matrix must be N x N");
  }
}

}  // namespace

Eigen::MatrixXd Dataset::noise_cov() const {
  const Eigen::Index n = size();
  if (has_noise_matrix()) return noise_matrix;
  return noise_variance * Eigen::MatrixXd::Identity(n, n);
}

JitteredCholesky cholesky_with_jitter(const Eigen::MatrixXd& a, double scale) {
  if (a.rows() != a.cols()) throw InvalidConfig("Cholesky requires a square matrix");
  JitteredCholesky out;
  out.llt.compute(a);
  if (out.llt.info() == Eigen::Success) return out;
  for (double jitter = 1e-10 * scale; jitter <= 1.0000001e-6 * scale; jitter *= 10.0) {
    out.llt.compute(a + jitter * Eigen::MatrixXd::Identity(a.rows(), a.cols()));
    if (out.llt.info() == Eigen::Success) {
      out.jitter = jitter;
      return out;
    }
  }
  throw NumericalError("covariance matrix not positive definite after jitter ladder");
}

PosteriorResult posterior_mean_cov(const kernels::SpectralKernel& k, const Dataset& data,
                                   std::span<const spaces::SpacePoint> query) {
  validate_dataset(data);
  PosteriorResult out;
  const Eigen::MatrixXd kqq = kernels::kernel_matrix(k, query);
  if (data.size() == 0) {
    out.mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(query.size()));
    out.cov = kqq;
    return out;
  }
  const Eigen::MatrixXd kxx = kernels::kernel_matrix(k, data.inputs);
  const JitteredCholesky chol = cholesky_with_jitter(kxx + data.noise_cov(), k.density.sigma2);
  const Eigen::MatrixXd kqx =
      kernels::kernel_matrix(k, query, std::span<const spaces::SpacePoint>(data.inputs));
  out.mean = kqx * chol.llt.solve(data.targets);
  out.cov = kqq - kqx * chol.llt.solve(kqx.transpose());
  out.jitter_used = chol.jitter;
  return out;
}

double log_marginal_likelihood(const kernels::SpectralKernel& k, const Dataset& data) {
  validate_dataset(data);
  const Eigen::Index n = data.size();
  if (n == 0) return 0.0;
  const Eigen::MatrixXd kxx = kernels::kernel_matrix(k, data.inputs);
  const JitteredCholesky chol = cholesky_with_jitter(kxx + data.noise_cov(), k.density.sigma2);
  const Eigen::VectorXd alpha = chol.llt.solve(data.targets);
  const double log_det =
      2.0 * chol.llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return -0.5 * data.targets.dot(alpha) - 0.5 * log_det - 0.5 * static_cast<double>(n) * kLog2Pi;
}

namespace {

// Negative LML as a function of log-parameters; +inf where evaluation fails.
struct Objective {
  const spaces::SpaceId& space;
  const kernels::SpectralDensity& base;
  const Dataset& data;
  int budget;
  const FitOptions& options;
  mutable std::vector<double> trace{};  // best LML after each evaluation
  mutable double best_seen = -std::numeric_limits<double>::infinity();

  kernels::SpectralDensity density_of(const Eigen::VectorXd& theta) const {
    kernels::SpectralDensity d = base;
    d.kappa = std::exp(theta(0));
    d.sigma2 = std::exp(theta(1));
    if (options.fit_nu && d.kind == kernels::DensityKind::Matern) d.nu = std::exp(theta(3));
    return d;
  }

  double noise_of(const Eigen::VectorXd& theta) const {
    return options.min_noise + std::exp(theta(2));
  }

  double operator()(const Eigen::VectorXd& theta) const {
    double value = std::numeric_limits<double>::infinity();
    try {
      const kernels::SpectralKernel k = kernels::build_kernel(space, density_of(theta), budget);
      Dataset d = data;
      d.noise_variance = noise_of(theta);
      d.noise_matrix = Eigen::MatrixXd();
      value = -log_marginal_likelihood(k, d);
    } catch (const std::exception&) {
      value = std::numeric_limits<double>::infinity();
    }
    best_seen = std::max(best_seen, -value);
    trace.push_back(best_seen);
    return value;
  }
};

// Standard Nelder-Mead on R^d; returns the best vertex.
std::pair<Eigen::VectorXd, double> nelder_mead(const Objective& f, const Eigen::VectorXd& start,
                                               int max_iterations, double tolerance) {
  const int d = static_cast<int>(start.size());
  std::vector<Eigen::VectorXd> x(d + 1, start);
  std::vector<double> fx(d + 1);
  for (int i = 1; i <= d; ++i) x[i](i - 1) += 0.25;
  for (int i = 0; i <= d; ++i) fx[i] = f(x[i]);

  auto order = [&] {
    std::vector<int> idx(d + 1);
    for (int i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    std::vector<Eigen::VectorXd> nx(d + 1);
    std::vector<double> nf(d + 1);
    for (int i = 0; i <= d; ++i) {
      nx[i] = x[idx[i]];
      nf[i] = fx[idx[i]];
    }
    x = std::move(nx);
    fx = std::move(nf);
  };

  for (int it = 0; it < max_iterations; ++it) {
    order();
    if (std::isfinite(fx[d]) && std::isfinite(fx[0]) && fx[d] - fx[0] < tolerance) break;
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) centroid += x[i];
    centroid /= d;

    const Eigen::VectorXd xr = centroid + (centroid - x[d]);
    const double fr = f(xr);
    if (fr < fx[0]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - x[d]);
      const double fe = f(xe);
      if (fe < fr) {
        x[d] = xe;
        fx[d] = fe;
      } else {
        x[d] = xr;
        fx[d] = fr;
      }
    } else if (fr < fx[d - 1]) {
      x[d] = xr;
      fx[d] = fr;
    } else {
      const Eigen::VectorXd xc = centroid + 0.5 * ((fr < fx[d] ? xr : x[d]) - centroid);
      const double fc = f(xc);
      if (fc < std::min(fr, fx[d])) {
        x[d] = xc;
        fx[d] = fc;
      } else {
        for (int i = 1; i <= d; ++i) {
          x[i] = x[0] + 0.5 * (x[i] - x[0]);
          fx[i] = f(x[i]);
        }
      }
    }
  }
  order();
  return {x[0], fx[0]};
}

}  // namespace

FitResult fit_hyperparameters(const spaces::SpaceId& space, const kernels::SpectralDensity& init,
                              double init_noise_variance, const Dataset& data, int budget,
                              const FitOptions& options) {
  validate_dataset(data);
  if (space.kind == spaces::SpaceKind::Quotient) {
    throw InvalidConfig("hyperparameter fitting on quotient spaces is not supported");
  }
  if (data.size() == 0) throw InvalidConfig("hyperparameter fitting needs data");
  if (options.restarts < 1) throw InvalidConfig("fit needs at least 1 restart");

  const int d = options.fit_nu && init.kind == kernels::DensityKind::Matern ? 4 : 3;
  Eigen::VectorXd theta0(d);
  theta0(0) = std::log(init.kappa);
  theta0(1) = std::log(init.sigma2);
  theta0(2) = std::log(std::max(init_noise_variance, options.min_noise));
  if (d == 4) theta0(3) = std::log(init.nu);

  Objective objective{space, init, data, budget, options};
  const double f0 = objective(theta0);
  const double initial_lml = -f0;

  Rng rng(options.seed);
  Eigen::VectorXd best_theta = theta0;
  double best_f = f0;
  for (int r = 0; r < options.restarts; ++r) {
    Eigen::VectorXd start = theta0;
    if (r > 0) {
      Rng sub = rng.fork(static_cast<std::uint64_t>(r));
      for (int i = 0; i < d; ++i) start(i) += sub.uniform(-1.0, 1.0);
    }
    auto [theta, fval] = nelder_mead(objective, start, options.max_iterations, options.tolerance);
    if (fval < best_f) {
      best_f = fval;
      best_theta = theta;
    }
  }

  FitResult out;
  out.initial_lml = initial_lml;
  out.best_lml = -best_f;
  out.improved = std::isfinite(best_f) && best_f < f0;
  out.lml_trace = std::move(objective.trace);
  if (out.improved) {
    out.density = objective.density_of(best_theta);
    out.noise_variance = objective.noise_of(best_theta);
  } else {
    out.density = init;
    out.noise_variance = init_noise_variance;
  }
  return out;
}

}  // namespace liegp::gp
