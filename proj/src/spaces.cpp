#include "liegp/spaces.hpp"

#include <algorithm>
#include <cmath>

namespace liegp::spaces {

namespace {

constexpr int kMaxSphereDim = 16;
constexpr double kPi = 3.14159265358979323846;

void require_zonal_space(const SpaceId& s, const char* what) {
  if (s.kind != SpaceKind::Sphere && s.kind != SpaceKind::Projective) {
    throw InvalidConfig(std::string(what) + " is defined for S^n / RP^n only");
  }
}

// dim of the degree-l spherical harmonics on S^n (harmonic polynomials in
// n+1 variables): C(n+l, l) - C(n+l-2, l-2).
long long harmonic_multiplicity(int n, int l) {
  if (l == 0) return 1;
  auto binom = [](long long a, long long b) {
    if (b < 0 || b > a) return 0LL;
    long double acc = 1.0L;
    for (long long i = 1; i <= b; ++i) acc = acc * static_cast<long double>(a - b + i) / i;
    return static_cast<long long>(std::llroundl(acc));
  };
  return binom(n + l, l) - binom(n + l - 2, l - 2);
}

}  // namespace

SpaceId make_group_space(const repr::GroupId& g) {
  SpaceId s;
  s.kind = SpaceKind::Group;
  s.group = g;
  return s;
}

SpaceId make_sphere(int n) {
  if (n < 1 || n > kMaxSphereDim) {
    throw InvalidConfig("S^n requires 1 <= n <= " + std::to_string(kMaxSphereDim));
  }
  SpaceId s;
  s.kind = SpaceKind::Sphere;
  s.sphere_dim = n;
  return s;
}

SpaceId make_projective(int n) {
  if (n < 1 || n > kMaxSphereDim) {
    throw InvalidConfig("RP^n requires 1 <= n <= " + std::to_string(kMaxSphereDim));
  }
  SpaceId s;
  s.kind = SpaceKind::Projective;
  s.sphere_dim = n;
  return s;
}

SpaceId make_quotient(std::shared_ptr<const QuotientData> data) {
  if (!data || !data->subgroup_sampler) {
    throw InvalidConfig("quotient space requires a subgroup sampler");
  }
  SpaceId s;
  s.kind = SpaceKind::Quotient;
  s.group = data->group;
  s.quotient = std::move(data);
  return s;
}

SpaceId make_so_quotient(int n) {
  if (n < 3) throw InvalidConfig("SO(n)/SO(n-1) requires n >= 3");
  const repr::GroupId ambient = repr::so(n);
  auto data = std::make_shared<QuotientData>();
  data->group = ambient;
  data->subgroup_name = "SO(" + std::to_string(n - 1) + ")";
  data->subgroup_dim = (n - 1) * (n - 2) / 2;
  data->subgroup_sampler = [ambient, n](Rng& rng) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(n, n);
    if (n - 1 == 2) {
      // SO(2): a uniform rotation angle.
      const double a = rng.uniform(0.0, 2.0 * kPi);
      h(0, 0) = std::cos(a);
      h(0, 1) = -std::sin(a);
      h(1, 0) = std::sin(a);
      h(1, 1) = std::cos(a);
    } else {
      groups::GroupElement inner = groups::haar_sample(repr::so(n - 1), rng);
      h.topLeftCorner(n - 1, n - 1) = inner.m;
    }
    return groups::GroupElement{ambient, std::move(h)};
  };
  return make_quotient(std::move(data));
}

std::string space_name(const SpaceId& s) {
  switch (s.kind) {
    case SpaceKind::Group:
      return repr::group_name(s.group);
    case SpaceKind::Sphere:
      return "S" + std::to_string(s.sphere_dim);
    case SpaceKind::Projective:
      return "RP" + std::to_string(s.sphere_dim);
    case SpaceKind::Quotient:
      return repr::group_name(s.group) + "/" + s.quotient->subgroup_name;
  }
  return "?";
}

int manifold_dim(const SpaceId& s) {
  switch (s.kind) {
    case SpaceKind::Group:
      return repr::manifold_dim(s.group);
    case SpaceKind::Sphere:
    case SpaceKind::Projective:
      return s.sphere_dim;
    case SpaceKind::Quotient:
      return repr::manifold_dim(s.group) - s.quotient->subgroup_dim;
  }
  return 0;
}

SpacePoint make_point(Eigen::VectorXd v) { return SpacePoint{std::move(v)}; }
SpacePoint make_point(groups::GroupElement e) { return SpacePoint{std::move(e)}; }

Eigen::VectorXd canonicalize_projective(Eigen::VectorXd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0) v = -v;
      return v;
    }
  }
  return v;
}

double space_distance(const SpaceId& s, const SpacePoint& x, const SpacePoint& y) {
  require_zonal_space(s, "space_distance");
  const double dot = x.vec().dot(y.vec());
  if (s.kind == SpaceKind::Sphere) {
    return std::acos(std::clamp(dot, -1.0, 1.0));
  }
  return std::acos(std::clamp(std::abs(dot), 0.0, 1.0));
}

SpacePoint haar_sample_space(const SpaceId& s, Rng& rng) {
  switch (s.kind) {
    case SpaceKind::Group:
      return make_point(groups::haar_sample(s.group, rng));
    case SpaceKind::Quotient:
      // A Haar sample of G is a uniformly distributed coset representative.
      return make_point(groups::haar_sample(s.group, rng));
    case SpaceKind::Sphere:
    case SpaceKind::Projective: {
      const int d = s.sphere_dim + 1;
      Eigen::VectorXd v(d);
      double norm = 0.0;
      do {
        for (int i = 0; i < d; ++i) v(i) = rng.normal();
        norm = v.norm();
      } while (norm < 1e-12);
      v /= norm;
      if (s.kind == SpaceKind::Projective) v = canonicalize_projective(std::move(v));
      return make_point(std::move(v));
    }
  }
  throw InvalidConfig("unknown space kind");
}

std::vector<SpacePoint> haar_sample_space(const SpaceId& s, int count, Rng& rng) {
  std::vector<SpacePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(haar_sample_space(s, rng));
  return out;
}

std::vector<ZonalLevel> zonal_levels(const SpaceId& s, int budget, EigenvalueScale scale) {
  require_zonal_space(s, "zonal_levels");
  if (budget < 1 || budget > 100000) {
    throw InvalidConfig("zonal level budget must be in [1, 100000]");
  }
  const int n = s.sphere_dim;
  const int step = s.kind == SpaceKind::Projective ? 2 : 1;
  std::vector<ZonalLevel> out;
  out.reserve(static_cast<std::size_t>(budget));
  for (int i = 0; i < budget; ++i) {
    const int l = i * step;
    ZonalLevel z;
    z.level = l;
    z.multiplicity = harmonic_multiplicity(n, l);
    double eig = static_cast<double>(l) * (l + n - 1);
    if (scale == EigenvalueScale::Killing) eig /= 2.0 * (n - 1);
    z.eigenvalue = eig;
    out.push_back(z);
  }
  return out;
}

std::vector<double> zonal_values(const SpaceId& s, const std::vector<int>& levels, double t) {
  require_zonal_space(s, "zonal_values");
  const int n = s.sphere_dim;
  const double alpha = 0.5 * (n - 1);
  int lmax = 0;
  for (int l : levels) {
    if (l < 0) throw InvalidConfig("zonal level must be non-negative");
    lmax = std::max(lmax, l);
  }
  // One pass of the Gegenbauer three-term recurrence at t and at 1.
  std::vector<double> c_t(lmax + 1), c_1(lmax + 1);
  c_t[0] = c_1[0] = 1.0;
  if (lmax >= 1) {
    c_t[1] = 2.0 * alpha * t;
    c_1[1] = 2.0 * alpha;
  }
  for (int l = 2; l <= lmax; ++l) {
    c_t[l] = (2.0 * t * (l + alpha - 1) * c_t[l - 1] - (l + 2 * alpha - 2) * c_t[l - 2]) / l;
    c_1[l] = (2.0 * (l + alpha - 1) * c_1[l - 1] - (l + 2 * alpha - 2) * c_1[l - 2]) / l;
  }
  std::vector<double> out;
  out.reserve(levels.size());
  for (int l : levels) {
    out.push_back(static_cast<double>(harmonic_multiplicity(n, l)) * c_t[l] / c_1[l]);
  }
  return out;
}

double zonal_value(const SpaceId& s, int level, double t) {
  return zonal_values(s, {level}, t)[0];
}

PeriodicSummationResult periodic_summation(
    const std::function<double(const groups::GroupElement&, const groups::GroupElement&)>& group_kernel,
    const QuotientData& quotient, const groups::GroupElement& x, const groups::GroupElement& y,
    int num_subgroup_samples, Rng& rng) {
  if (num_subgroup_samples < 2) {
    throw InvalidConfig("periodic summation needs at least 2 subgroup samples");
  }
  double sum = 0.0, sumsq = 0.0;
  for (int j = 0; j < num_subgroup_samples; ++j) {
    const groups::GroupElement h = quotient.subgroup_sampler(rng);
    const double v = group_kernel(groups::multiply(x, h), y);
    sum += v;
    sumsq += v * v;
  }
  const double m = static_cast<double>(num_subgroup_samples);
  const double mean = sum / m;
  const double var = std::max(0.0, (sumsq - m * mean * mean) / (m - 1.0));
  return PeriodicSummationResult{mean, std::sqrt(var / m)};
}

std::vector<double> average_subgroup_characters(const repr::GroupId& g,
                                                const std::vector<repr::Signature>& sigs,
                                                const QuotientData& quotient, int num_samples,
                                                Rng& rng) {
  if (num_samples < 1) throw InvalidConfig("need at least 1 subgroup sample");
  std::vector<double> acc(sigs.size(), 0.0);
  for (int j = 0; j < num_samples; ++j) {
    const groups::GroupElement h = quotient.subgroup_sampler(rng);
    const groups::TorusPoint t = groups::torus_coordinates(h);
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      acc[i] += groups::character(g, sigs[i], t).real();
    }
  }
  for (double& v : acc) v /= static_cast<double>(num_samples);
  return acc;
}

}  // namespace liegp::spaces
