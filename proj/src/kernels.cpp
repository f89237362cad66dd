#include "liegp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>

namespace liegp::kernels {

namespace {

void validate_density(const SpectralDensity& d) {
  if (!(d.kappa > 0.0) || !std::isfinite(d.kappa)) {
    throw InvalidConfig("kappa must be positive and finite");
  }
  if (!(d.sigma2 > 0.0) || !std::isfinite(d.sigma2)) {
    throw InvalidConfig("sigma2 must be positive and finite");
  }
  if (d.kind == DensityKind::Matern && (!(d.nu > 0.0) || !std::isfinite(d.nu))) {
    throw InvalidConfig("Matern nu must be positive and finite");
  }
}

// log of the (un-normalized) spectral density.  Working in logs keeps the
// construction stable when the raw values underflow, e.g. for very large
// Matern nu; the normalization below is invariant to a common shift.
double density_log_coefficient(const SpectralDensity& d, double eigenvalue, int manifold_dim) {
  if (d.kind == DensityKind::Heat) {
    return -0.5 * d.kappa * d.kappa * eigenvalue;
  }
  return -(d.nu + 0.5 * manifold_dim) * std::log(2.0 * d.nu / (d.kappa * d.kappa) + eigenvalue);
}

// Shared by build_kernel / build_quotient_kernel once levels and masses are
// known: fills raw (shifted so the largest is 1), coefficient, normalizer,
// and the boundary-shell residual.
void normalize_levels(SpectralKernel& k, const std::vector<double>& log_raws) {
  double shift = -std::numeric_limits<double>::infinity();
  for (double lr : log_raws) shift = std::max(shift, lr);
  if (!std::isfinite(shift)) {
    throw NumericalError("all spectral coefficients vanished");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < k.levels.size(); ++i) {
    k.levels[i].raw = std::exp(log_raws[i] - shift);
    total += k.levels[i].raw * k.levels[i].mass;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError("spectral normalization failed: zero or non-finite mass");
  }
  k.normalizer = total / k.density.sigma2;
  for (KernelLevel& lv : k.levels) lv.coefficient = lv.raw / k.normalizer;

  double max_eig = 0.0;
  for (const KernelLevel& lv : k.levels) {
    const double e = k.space.kind == spaces::SpaceKind::Sphere ||
                             k.space.kind == spaces::SpaceKind::Projective
                         ? lv.zonal.eigenvalue
                         : lv.rep.eigenvalue;
    max_eig = std::max(max_eig, e);
  }
  double residual = 0.0;
  for (const KernelLevel& lv : k.levels) {
    const double e = k.space.kind == spaces::SpaceKind::Sphere ||
                             k.space.kind == spaces::SpaceKind::Projective
                         ? lv.zonal.eigenvalue
                         : lv.rep.eigenvalue;
    if (e >= max_eig * (1.0 - 1e-12)) residual += lv.coefficient * lv.mass;
  }
  k.truncation_residual = residual;
}

// Representations for a group kernel: the enumeration budget, closed under
// conjugation so Re-character pairs stay together.
std::vector<repr::Representation> closed_representations(const repr::GroupId& g, int budget) {
  std::vector<repr::Representation> reps = repr::enumerate_representations(g, budget);
  std::set<repr::Signature> present;
  for (const auto& r : reps) present.insert(r.signature);
  const std::size_t base = reps.size();
  for (std::size_t i = 0; i < base; ++i) {
    if (!reps[i].self_conjugate && !present.count(reps[i].conjugate)) {
      reps.push_back(repr::make_representation(g, reps[i].conjugate));
      present.insert(reps.back().signature);
    }
  }
  return reps;
}

bool is_zonal_space(const spaces::SpaceId& s) {
  return s.kind == spaces::SpaceKind::Sphere || s.kind == spaces::SpaceKind::Projective;
}

}  // namespace

double density_raw_coefficient(const SpectralDensity& d, double eigenvalue, int manifold_dim) {
  validate_density(d);
  if (eigenvalue < 0) throw InvalidConfig("eigenvalue must be non-negative");
  return std::exp(density_log_coefficient(d, eigenvalue, manifold_dim));
}

SpectralKernel build_kernel(const spaces::SpaceId& space, const SpectralDensity& density,
                            int budget, spaces::EigenvalueScale sphere_scale) {
  validate_density(density);
  if (space.kind == spaces::SpaceKind::Quotient) {
    throw InvalidConfig("quotient kernels need subgroup averaging: use build_quotient_kernel");
  }
  SpectralKernel k;
  k.space = space;
  k.density = density;
  k.requested_budget = budget;
  k.scale = space.kind == spaces::SpaceKind::Group ? spaces::EigenvalueScale::Killing
                                                   : sphere_scale;
  const int dim = spaces::manifold_dim(space);

  std::vector<double> log_raws;
  if (space.kind == spaces::SpaceKind::Group) {
    for (const repr::Representation& rep : closed_representations(space.group, budget)) {
      KernelLevel lv;
      lv.rep = rep;
      lv.mass = static_cast<double>(rep.dimension) * static_cast<double>(rep.dimension);
      log_raws.push_back(density_log_coefficient(density, rep.eigenvalue, dim));
      k.levels.push_back(std::move(lv));
    }
  } else {
    for (const spaces::ZonalLevel& z : spaces::zonal_levels(space, budget, sphere_scale)) {
      KernelLevel lv;
      lv.zonal = z;
      lv.mass = static_cast<double>(z.multiplicity);
      log_raws.push_back(density_log_coefficient(density, z.eigenvalue, dim));
      k.levels.push_back(std::move(lv));
    }
  }
  k.effective_budget = static_cast<int>(k.levels.size());
  normalize_levels(k, log_raws);
  return k;
}

SpectralKernel build_quotient_kernel(const spaces::SpaceId& space,
                                     const SpectralDensity& density, int budget,
                                     int subgroup_mc_samples, Rng& rng) {
  validate_density(density);
  if (space.kind != spaces::SpaceKind::Quotient) {
    throw InvalidConfig("build_quotient_kernel requires a Quotient space");
  }
  SpectralKernel k;
  k.space = space;
  k.density = density;
  k.requested_budget = budget;
  k.scale = spaces::EigenvalueScale::Killing;
  const int dim = spaces::manifold_dim(space);

  const std::vector<repr::Representation> reps = closed_representations(space.group, budget);
  std::vector<repr::Signature> sigs;
  sigs.reserve(reps.size());
  for (const auto& r : reps) sigs.push_back(r.signature);
  const std::vector<double> avg = spaces::average_subgroup_characters(
      space.group, sigs, *space.quotient, subgroup_mc_samples, rng);

  std::vector<double> log_raws;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const long long r = std::llround(avg[i]);
    if (std::abs(avg[i] - static_cast<double>(r)) > 0.45 || r < 0) {
      throw NumericalError("subgroup character average " + std::to_string(avg[i]) +
                           " did not resolve to a non-negative integer; "
                           "increase subgroup_mc_samples");
    }
    if (r > 1) {
      throw InvalidConfig(
          "quotient has a level with more than one invariant direction; "
          "scalar spectral coefficients cannot normalize this space");
    }
    KernelLevel lv;
    lv.rep = reps[i];
    // Mass of the level in the *quotient* kernel: dim * (invariant count).
    lv.mass = static_cast<double>(reps[i].dimension) * static_cast<double>(r);
    log_raws.push_back(density_log_coefficient(density, reps[i].eigenvalue, dim));
    k.levels.push_back(std::move(lv));
  }
  k.effective_budget = static_cast<int>(k.levels.size());
  normalize_levels(k, log_raws);
  return k;
}

namespace {

double group_series_at(const SpectralKernel& k, const groups::TorusPoint& t) {
  double acc = 0.0;
  for (const KernelLevel& lv : k.levels) {
    const double chi = groups::character(k.space.group, lv.rep.signature, t).real();
    acc += lv.coefficient * static_cast<double>(lv.rep.dimension) * chi;
  }
  return acc;
}

double zonal_series_at(const SpectralKernel& k, double t) {
  std::vector<int> degrees;
  degrees.reserve(k.levels.size());
  for (const KernelLevel& lv : k.levels) degrees.push_back(lv.zonal.level);
  const std::vector<double> z = spaces::zonal_values(k.space, degrees, t);
  double acc = 0.0;
  for (std::size_t i = 0; i < k.levels.size(); ++i) acc += k.levels[i].coefficient * z[i];
  return acc;
}

}  // namespace

double kernel_value(const SpectralKernel& k, const spaces::SpacePoint& x,
                    const spaces::SpacePoint& y) {
  if (k.space.kind == spaces::SpaceKind::Quotient) {
    // Coset-space kernels are only defined through the subgroup-averaged
    // summation of the group evaluator; a direct series in the difference
    // would not be constant on cosets.
    throw InvalidConfig(
        "quotient kernels are evaluated via periodic_summation over the subgroup, "
        "not pointwise");
  }
  if (is_zonal_space(k.space)) {
    double t = x.vec().dot(y.vec());
    if (k.space.kind == spaces::SpaceKind::Projective) t = std::abs(t);
    return zonal_series_at(k, std::clamp(t, -1.0, 1.0));
  }
  const groups::GroupElement diff = groups::group_difference(x.elem(), y.elem());
  return group_series_at(k, groups::torus_coordinates(diff));
}

std::function<double(const groups::GroupElement&, const groups::GroupElement&)>
group_kernel_evaluator(const SpectralKernel& k) {
  if (is_zonal_space(k.space)) {
    throw InvalidConfig("group_kernel_evaluator requires a Group or Quotient kernel");
  }
  // Capture the level data by value so the callable owns everything it needs.
  struct LevelData {
    repr::Signature sig;
    double weight;  // coefficient * dimension
  };
  std::vector<LevelData> data;
  data.reserve(k.levels.size());
  for (const KernelLevel& lv : k.levels) {
    data.push_back({lv.rep.signature, lv.coefficient * static_cast<double>(lv.rep.dimension)});
  }
  const repr::GroupId g = k.space.group;
  return [g, data = std::move(data)](const groups::GroupElement& a,
                                     const groups::GroupElement& b) {
    const groups::TorusPoint t = groups::torus_coordinates(groups::group_difference(a, b));
    double acc = 0.0;
    for (const LevelData& lv : data) {
      acc += lv.weight * groups::character(g, lv.sig, t).real();
    }
    return acc;
  };
}

Eigen::MatrixXd kernel_matrix(const SpectralKernel& k, std::span<const spaces::SpacePoint> xs,
                              std::span<const spaces::SpacePoint> ys) {
  Eigen::MatrixXd out(xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          kernel_value(k, xs[i], ys[j]);
    }
  }
  return out;
}

Eigen::MatrixXd kernel_matrix(const SpectralKernel& k, std::span<const spaces::SpacePoint> xs) {
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = kernel_value(k, xs[static_cast<std::size_t>(i)],
                                    xs[static_cast<std::size_t>(j)]);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace liegp::kernels
