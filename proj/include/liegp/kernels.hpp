#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "liegp/spaces.hpp"

namespace liegp::kernels {

enum class DensityKind { Heat, Matern };

// Hyperparameters of a stationary spectral density over Laplace eigenvalues:
//   Heat:    f(a) = exp(-kappa^2 * a / 2)
//   Matern:  f(a) = (2 nu / kappa^2 + a)^(-nu - dim/2)
// where `dim` is the manifold dimension of the space the kernel lives on.
// kappa is the length scale (in the same units as the eigenvalue scale:
// Killing for groups, unit-sphere for S^n / RP^n), sigma2 the variance.
struct SpectralDensity {
  DensityKind kind = DensityKind::Heat;
  double kappa = 1.0;
  double nu = 1.5;     // Matern smoothness; ignored for Heat
  double sigma2 = 1.0;
};

double density_raw_coefficient(const SpectralDensity& d, double eigenvalue, int manifold_dim);

// One truncation level of a spectral kernel.  Exactly one of `rep` / `zonal`
// is meaningful, matching the kind of the owning kernel's space.
struct KernelLevel {
  repr::Representation rep;   // Group / Quotient spaces
  spaces::ZonalLevel zonal;   // Sphere / Projective spaces
  double raw = 0.0;           // density value before normalization
  double coefficient = 0.0;   // a_lambda = raw / normalizer
  double mass = 0.0;          // contribution of this level to k(x, x):
                              // dim^2 (group), multiplicity (zonal),
                              // dim * (invariant count) (quotient)
};

// A truncated stationary kernel
//   groups:   k(g1, g2) = sum_l a_l * dim_l * Re chi_l(g2^{-1} g1)
//   spheres:  k(x, y)   = sum_l a_l * Z_l(cos d(x, y))
// normalized so k(x, x) = sigma2 exactly at the stored truncation:
// normalizer = sum(raw * mass) / sigma2 and a = raw / normalizer.
struct SpectralKernel {
  spaces::SpaceId space;
  SpectralDensity density;
  std::vector<KernelLevel> levels;
  // Eigenvalue units: always Killing for Group/Quotient; for S^n / RP^n
  // whichever ladder scale the kernel was built with.
  spaces::EigenvalueScale scale = spaces::EigenvalueScale::UnitSphere;
  double normalizer = 1.0;
  int requested_budget = 0;
  // Group budgets are rounded up so conjugate signatures are either both
  // included or both excluded (a split pair would make the kernel complex).
  int effective_budget = 0;
  // Coefficient mass sum(a * mass) of the outermost eigenvalue shell: a
  // cheap proxy for how much spectral weight sits at the truncation edge.
  double truncation_residual = 0.0;
};

// `sphere_scale` selects the eigenvalue units of the S^n / RP^n level ladder
// (ignored for groups, whose eigenvalues are always Killing-normalized).
// With EigenvalueScale::Killing the S^{n-1} ladder coincides level-by-level
// with the SO(n)/SO(n-1) quotient spectrum.
SpectralKernel build_kernel(const spaces::SpaceId& space, const SpectralDensity& density,
                            int budget,
                            spaces::EigenvalueScale sphere_scale = spaces::EigenvalueScale::UnitSphere);

// Kernel for a quotient G/H: levels/eigenvalues come from G, but each level
// mass is dim * r (r = number of H-invariant vectors, estimated by Monte
// Carlo and rounded), so the normalizer makes the *quotient* kernel have
// k(x,x) = sigma2.  Levels with r = 0 keep coefficient weight in the group
// evaluator but contribute no quotient mass.  Throws InvalidConfig when some
// r > 1 (the scalar-coefficient construction cannot normalize those spaces).
SpectralKernel build_quotient_kernel(const spaces::SpaceId& space,
                                     const SpectralDensity& density, int budget,
                                     int subgroup_mc_samples, Rng& rng);

// Pointwise kernel evaluation.  For Quotient spaces this is the *group*
// kernel restricted to coset representatives; the quotient kernel itself is
// its subgroup average (see spaces::periodic_summation and
// group_kernel_evaluator below).
double kernel_value(const SpectralKernel& k, const spaces::SpacePoint& x,
                    const spaces::SpacePoint& y);

// The bi-invariant group kernel sum_l a_l dim_l Re chi_l as a callable, for
// feeding into periodic_summation.  Valid for Group and Quotient kernels.
std::function<double(const groups::GroupElement&, const groups::GroupElement&)>
group_kernel_evaluator(const SpectralKernel& k);

// Gram matrix K[i][j] = k(xs[i], ys[j]).
Eigen::MatrixXd kernel_matrix(const SpectralKernel& k, std::span<const spaces::SpacePoint> xs,
                              std::span<const spaces::SpacePoint> ys);

// Symmetric Gram matrix (evaluates the upper triangle once).
Eigen::MatrixXd kernel_matrix(const SpectralKernel& k, std::span<const spaces::SpacePoint> xs);

}  // namespace liegp::kernels
