#include "liegp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace liegp::sampling {

namespace {

using kernels::SpectralKernel;
using spaces::SpaceKind;
using spaces::SpacePoint;

bool is_zonal(const SpectralKernel& k) {
  return k.space.kind == SpaceKind::Sphere || k.space.kind == SpaceKind::Projective;
}

Eigen::VectorXd sample_noise(const gp::Dataset& data, Rng& rng) {
  const Eigen::Index n = data.size();
  Eigen::VectorXd eps(n);
  if (!data.has_noise_matrix()) {
    const double sd = std::sqrt(std::max(0.0, data.noise_variance));
    for (Eigen::Index i = 0; i < n; ++i) eps(i) = sd * rng.normal();
    return eps;
  }
  // General PSD covariance: sample through its spectral square root.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(data.noise_matrix);
  if (es.info() != Eigen::Success) {
    throw NumericalError("noise covariance eigendecomposition failed");
  }
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * z;
}

}  // namespace

Eigen::MatrixXd FeatureBasis::feature_matrix(std::span<const SpacePoint> points) const {
  const Eigen::Index rows = static_cast<Eigen::Index>(points.size());
  const Eigen::Index nl = static_cast<Eigen::Index>(levels.size());
  Eigen::MatrixXd phi(rows, nl * num_features);
  const double inv_sqrt_l = 1.0 / std::sqrt(static_cast<double>(num_features));

  if (is_zonal(kernel)) {
    std::vector<int> degrees;
    degrees.reserve(levels.size());
    for (const FeatureLevel& fl : levels) degrees.push_back(fl.level.zonal.level);
    for (Eigen::Index p = 0; p < rows; ++p) {
      for (int u = 0; u < num_features; ++u) {
        double t = points[static_cast<std::size_t>(p)].vec().dot(phases[u].vec());
        if (kernel.space.kind == SpaceKind::Projective) t = std::abs(t);
        const std::vector<double> z = spaces::zonal_values(kernel.space, degrees,
                                                           std::clamp(t, -1.0, 1.0));
        for (Eigen::Index l = 0; l < nl; ++l) {
          phi(p, l * num_features + u) = levels[l].weight_std * inv_sqrt_l * z[l];
        }
      }
    }
    return phi;
  }

  const repr::GroupId g = kernel.space.group;
  for (Eigen::Index p = 0; p < rows; ++p) {
    for (int u = 0; u < num_features; ++u) {
      const groups::GroupElement diff = groups::group_difference(
          points[static_cast<std::size_t>(p)].elem(), phases[u].elem());
      const groups::TorusPoint t = groups::torus_coordinates(diff);
      for (Eigen::Index l = 0; l < nl; ++l) {
        const FeatureLevel& fl = levels[l];
        const double re_chi = groups::character(g, fl.level.rep.signature, t).real();
        const double dim = static_cast<double>(fl.level.rep.dimension);
        const double value = (fl.doubled ? 2.0 : 1.0) * dim * re_chi;
        phi(p, l * num_features + u) = fl.weight_std * inv_sqrt_l * value;
      }
    }
  }
  return phi;
}

FeatureBasis build_feature_basis(const SpectralKernel& kernel, int num_features, Rng& rng) {
  if (num_features < 1 || num_features > (1 << 22)) {
    throw InvalidConfig("feature count must be in [1, 2^22]");
  }
  if (kernel.space.kind == SpaceKind::Quotient) {
    throw InvalidConfig(
        "random-phase features on a quotient are not supported: sample on the "
        "group, or use the isometric sphere form of the space");
  }
  FeatureBasis basis;
  basis.kernel = kernel;
  basis.num_features = num_features;
  basis.phases = spaces::haar_sample_space(kernel.space, num_features, rng);

  if (is_zonal(kernel)) {
    for (const kernels::KernelLevel& lv : kernel.levels) {
      FeatureLevel fl;
      fl.level = lv;
      fl.doubled = false;
      fl.weight_std = std::sqrt(std::max(0.0, lv.coefficient));
      basis.levels.push_back(std::move(fl));
    }
    return basis;
  }

  // Group kernel: one feature level per conjugate *class* of signatures.
  // build_kernel keeps conjugate pairs together, so the lexicographically
  // smaller member represents the pair (with a doubling factor); if a pair
  // were ever split, the surviving member still represents it.
  std::set<repr::Signature> present;
  for (const kernels::KernelLevel& lv : kernel.levels) present.insert(lv.rep.signature);
  for (const kernels::KernelLevel& lv : kernel.levels) {
    const repr::Signature& sig = lv.rep.signature;
    const repr::Signature& conj = lv.rep.conjugate;
    if (!lv.rep.self_conjugate && present.count(conj) && conj < sig) continue;
    FeatureLevel fl;
    fl.level = lv;
    fl.doubled = !lv.rep.self_conjugate && present.count(conj);
    fl.weight_std = std::sqrt(std::max(0.0, lv.coefficient));
    basis.levels.push_back(std::move(fl));
  }
  return basis;
}

Eigen::MatrixXd feature_covariance(const FeatureBasis& basis,
                                   std::span<const SpacePoint> points) {
  const Eigen::MatrixXd phi = basis.feature_matrix(points);
  return phi * phi.transpose();
}

PriorSample::PriorSample(std::shared_ptr<const FeatureBasis> basis, Eigen::VectorXd weights)
    : basis_(std::move(basis)), weights_(std::move(weights)) {
  if (!basis_) throw InvalidConfig("prior sample needs a feature basis");
  if (weights_.size() != basis_->num_columns()) {
    throw InvalidConfig("prior sample weight vector has wrong length");
  }
}

double PriorSample::operator()(const SpacePoint& x) const {
  const SpacePoint pts[] = {x};
  return at(pts)(0);
}

Eigen::VectorXd PriorSample::at(std::span<const SpacePoint> points) const {
  return basis_->feature_matrix(points) * weights_;
}

PriorSample draw_prior_sample(std::shared_ptr<const FeatureBasis> basis, Rng& rng) {
  if (!basis) throw InvalidConfig("prior sample needs a feature basis");
  Eigen::VectorXd z(basis->num_columns());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return PriorSample(std::move(basis), std::move(z));
}

PosteriorSample::PosteriorSample(PriorSample prior, std::shared_ptr<const gp::Dataset> data,
                                 Eigen::VectorXd beta)
    : prior_(std::move(prior)), data_(std::move(data)), beta_(std::move(beta)) {}

double PosteriorSample::operator()(const SpacePoint& x) const {
  const SpacePoint pts[] = {x};
  return at(pts)(0);
}

Eigen::VectorXd PosteriorSample::at(std::span<const SpacePoint> points) const {
  Eigen::VectorXd out = prior_.at(points);
  if (beta_.size() > 0) {
    const Eigen::MatrixXd kqx = kernels::kernel_matrix(
        prior_.basis().kernel, points, std::span<const SpacePoint>(data_->inputs));
    out += kqx * beta_;
  }
  return out;
}

PosteriorSample draw_posterior_sample(PriorSample prior, std::shared_ptr<const gp::Dataset> data,
                                      Rng& rng) {
  if (!data) throw InvalidConfig("posterior sample needs a dataset");
  const SpectralKernel& kernel = prior.basis().kernel;
  if (data->size() == 0) {
    return PosteriorSample(std::move(prior), std::move(data), Eigen::VectorXd());
  }
  const Eigen::MatrixXd kxx = kernels::kernel_matrix(kernel, data->inputs);
  const gp::JitteredCholesky chol =
      gp::cholesky_with_jitter(kxx + data->noise_cov(), kernel.density.sigma2);
  const Eigen::VectorXd f_at_x = prior.at(data->inputs);
  const Eigen::VectorXd eps = sample_noise(*data, rng);
  Eigen::VectorXd beta = chol.llt.solve(data->targets - f_at_x - eps);
  PosteriorSample out(std::move(prior), std::move(data), std::move(beta));
  out.jitter_used_ = chol.jitter;
  return out;
}

LevelKernel group_level_kernel(const repr::GroupId& g, const repr::Representation& rep) {
  LevelKernel lk;
  lk.space = spaces::make_group_space(g);
  lk.span_dim = rep.dimension * rep.dimension;
  const repr::Signature sig = rep.signature;
  const double dim = static_cast<double>(rep.dimension);
  lk.eval = [g, sig, dim](const SpacePoint& x, const SpacePoint& y) {
    return dim * groups::character_at(g, sig, groups::group_difference(x.elem(), y.elem()));
  };
  return lk;
}

LevelKernel zonal_level_kernel(const spaces::SpaceId& space, const spaces::ZonalLevel& level) {
  LevelKernel lk;
  lk.space = space;
  lk.span_dim = level.multiplicity;
  const int degree = level.level;
  lk.eval = [space, degree](const SpacePoint& x, const SpacePoint& y) {
    double t = x.vec().dot(y.vec());
    if (space.kind == SpaceKind::Projective) t = std::abs(t);
    return std::complex<double>(spaces::zonal_value(space, degree, std::clamp(t, -1.0, 1.0)),
                                0.0);
  };
  return lk;
}

namespace {

Eigen::MatrixXcd hermitized_gram(const LevelKernel& level, std::span<const SpacePoint> pts) {
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      gram(i, j) = level.eval(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
    }
  }
  return 0.5 * (gram + gram.adjoint());
}

}  // namespace

std::vector<SpacePoint> find_fundamental_set(const LevelKernel& level, int size, Rng& rng,
                                             int max_attempts) {
  if (size < 1) throw InvalidConfig("fundamental set size must be positive");
  if (size > level.span_dim) {
    throw DegenerateLevelError("requested fundamental set size " + std::to_string(size) +
                               " exceeds the level span dimension " +
                               std::to_string(level.span_dim));
  }
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<SpacePoint> pts = spaces::haar_sample_space(level.space, size, rng);
    const Eigen::MatrixXcd gram = hermitized_gram(level, pts);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.info() != Eigen::Success) continue;
    const double trace = gram.trace().real();
    if (es.eigenvalues().minCoeff() > 1e-8 * trace / static_cast<double>(size)) {
      return pts;
    }
  }
  throw DegenerateLevelError(
      "no well-conditioned fundamental set found: the requested size likely "
      "exceeds the true span dimension of the level");
}

KlBasis kl_basis(const LevelKernel& level, std::span<const SpacePoint> fundamental_set) {
  const Eigen::Index n = static_cast<Eigen::Index>(fundamental_set.size());
  if (n == 0) throw InvalidConfig("kl_basis needs a non-empty fundamental set");
  const Eigen::MatrixXcd gram = hermitized_gram(level, fundamental_set);
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("kl_basis: Gram matrix is not positive definite; "
                         "use find_fundamental_set to choose the points");
  }
  // Gram = R R^*  =>  C = R^{-*} is upper triangular: basis function i uses
  // only the first i kernel translates (Gram-Schmidt order).
  const Eigen::MatrixXcd r = llt.matrixL();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(n, n);
  r.adjoint().triangularView<Eigen::Upper>().solveInPlace(c);

  KlBasis basis;
  basis.points.assign(fundamental_set.begin(), fundamental_set.end());
  basis.coefficients = std::move(c);
  basis.level = level;
  return basis;
}

std::complex<double> KlBasis::evaluate(int i, const SpacePoint& x) const {
  if (i < 0 || i >= size()) throw InvalidConfig("kl basis index out of range");
  std::complex<double> acc(0.0, 0.0);
  for (int j = 0; j < size(); ++j) {
    acc += coefficients(j, i) * level.eval(x, points[static_cast<std::size_t>(j)]);
  }
  return acc;
}

Eigen::VectorXcd KlBasis::evaluate_all(const SpacePoint& x) const {
  Eigen::VectorXcd k(size());
  for (int j = 0; j < size(); ++j) {
    k(j) = level.eval(x, points[static_cast<std::size_t>(j)]);
  }
  return coefficients.transpose() * k;
}

}  // namespace liegp::sampling
