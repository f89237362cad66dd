#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "liegp/groups.hpp"
#include "liegp/repr.hpp"
#include "liegp/rng.hpp"

namespace liegp::spaces {

enum class SpaceKind { Group, Sphere, Projective, Quotient };

// A homogeneous quotient G/H, described by the ambient group and a sampler
// for the (embedded) subgroup H under its own Haar measure.
struct QuotientData {
  repr::GroupId group;
  std::string subgroup_name;
  int subgroup_dim = 0;
  std::function<groups::GroupElement(Rng&)> subgroup_sampler;
};

// Identifies one of the supported spaces: a compact group, the sphere S^n,
// the real projective space RP^n, or a quotient G/H.
struct SpaceId {
  SpaceKind kind = SpaceKind::Sphere;
  repr::GroupId group{repr::GroupFamily::SU, 2};  // Group / Quotient
  int sphere_dim = 0;                             // Sphere / Projective
  std::shared_ptr<const QuotientData> quotient;   // Quotient
};

SpaceId make_group_space(const repr::GroupId& g);
SpaceId make_sphere(int n);
SpaceId make_projective(int n);
SpaceId make_quotient(std::shared_ptr<const QuotientData> data);

// SO(n)/SO(n-1) with SO(n-1) embedded as the stabilizer of the last
// coordinate axis (top-left block).  This quotient is isometric to S^{n-1}.
SpaceId make_so_quotient(int n);

// "S2", "RP3", "SU(2)", "SO(3)/SO(2)".
std::string space_name(const SpaceId& s);

int manifold_dim(const SpaceId& s);

// A point: a unit vector in R^{n+1} for S^n / RP^n (projective points are
// stored with a canonical sign), or a group element for Group / Quotient
// (quotient points are stored as coset representatives in G).
struct SpacePoint {
  std::variant<Eigen::VectorXd, groups::GroupElement> value;

  const Eigen::VectorXd& vec() const { return std::get<Eigen::VectorXd>(value); }
  const groups::GroupElement& elem() const { return std::get<groups::GroupElement>(value); }
  bool is_vector() const { return std::holds_alternative<Eigen::VectorXd>(value); }
};

SpacePoint make_point(Eigen::VectorXd v);
SpacePoint make_point(groups::GroupElement e);

// Flips the sign so the first component of magnitude > 1e-12 is positive;
// identifies antipodes for projective points.  Idempotent.
Eigen::VectorXd canonicalize_projective(Eigen::VectorXd v);

// Geodesic distance for S^n (arccos of the inner product) and RP^n (arccos
// of its absolute value).  Group/quotient points do not use an explicit
// distance anywhere in the library (kernels consume conjugacy-class data
// directly), so those kinds throw InvalidConfig.
double space_distance(const SpaceId& s, const SpacePoint& x, const SpacePoint& y);

// Uniform sample: Haar measure on groups/quotients (coset representative),
// the rotation-invariant measure on S^n / RP^n.
SpacePoint haar_sample_space(const SpaceId& s, Rng& rng);
std::vector<SpacePoint> haar_sample_space(const SpaceId& s, int count, Rng& rng);

// Which eigenvalue normalization a sphere level ladder uses: the round unit
// sphere metric (eigenvalue l(l+n-1)), or the metric induced by the negative
// dual Killing form of SO(n+1) on S^n = SO(n+1)/SO(n), which rescales the
// unit-sphere eigenvalue by 1/(2(n-1)).
enum class EigenvalueScale { UnitSphere, Killing };

// One spherical-harmonic level: its degree, the dimension of the harmonic
// space (= value of the zonal kernel at distance 0), and the Laplace
// eigenvalue in the requested scale.
struct ZonalLevel {
  int level = 0;
  long long multiplicity = 1;
  double eigenvalue = 0.0;
};

// The first `budget` levels: l = 0,1,2,... for S^n; the even degrees
// l = 0,2,4,... for RP^n (odd harmonics are not antipodally symmetric).
std::vector<ZonalLevel> zonal_levels(const SpaceId& s, int budget,
                                     EigenvalueScale scale = EigenvalueScale::UnitSphere);

// Zonal kernel of one level evaluated at t = cos(distance):
//   Z_l(t) = multiplicity * C_l^{(n-1)/2}(t) / C_l^{(n-1)/2}(1)
// (Gegenbauer; Legendre P_l for n = 2).  With this normalization
// Z_l(1) = multiplicity and sum_j Y_j(x) Y_j(y) = Z_l(cos d(x,y)) for any
// L^2(probability)-orthonormal harmonic basis {Y_j}.
double zonal_value(const SpaceId& s, int level, double t);

// All requested levels in one recurrence pass (levels need not be sorted).
std::vector<double> zonal_values(const SpaceId& s, const std::vector<int>& levels, double t);

// Monte-Carlo average (1/M) sum_j k_G(x h_j, y) of a bi-invariant group
// kernel over subgroup samples h_j — the periodic-summation approximation
// of the induced kernel on G/H.  Also returns the standard error of the
// mean.
struct PeriodicSummationResult {
  double value = 0.0;
  double std_error = 0.0;
};

PeriodicSummationResult periodic_summation(
    const std::function<double(const groups::GroupElement&, const groups::GroupElement&)>& group_kernel,
    const QuotientData& quotient, const groups::GroupElement& x, const groups::GroupElement& y,
    int num_subgroup_samples, Rng& rng);

// Monte-Carlo estimates of r_lambda = integral over H of Re chi_lambda(h):
// the number of H-invariant vectors in each representation (a non-negative
// integer in exact arithmetic; returned un-rounded).
std::vector<double> average_subgroup_characters(const repr::GroupId& g,
                                                const std::vector<repr::Signature>& sigs,
                                                const QuotientData& quotient, int num_samples,
                                                Rng& rng);

}  // namespace liegp::spaces
