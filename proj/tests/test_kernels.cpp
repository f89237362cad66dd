#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "liegp/kernels.hpp"
#include "reference_values.hpp"

using namespace liegp;
using kernels::DensityKind;
using kernels::SpectralDensity;
using kernels::SpectralKernel;
using spaces::SpacePoint;

namespace {
double cheb_u(int n, double x) {
  double um1 = 0.0, u = 1.0;
  for (int i = 0; i < n; ++i) {
    const double next = 2.0 * x * u - um1;
    um1 = u;
    u = next;
  }
  return u;
}
}  // namespace

TEST_CASE("heat coefficients follow exp(-kappa^2 alpha / 2)") {
  SpectralDensity d;
  d.kind = DensityKind::Heat;
  d.kappa = 1.3;
  for (double alpha : {0.0, 0.5, 2.0, 11.25}) {
    CHECK(kernels::density_raw_coefficient(d, alpha, 3) ==
          doctest::Approx(std::exp(-0.5 * 1.3 * 1.3 * alpha)).epsilon(1e-14));
  }
}

TEST_CASE("Matern coefficients match the Gamma-mixture quadrature oracle") {
  // The oracle integrated int_0^inf u^{nu + n/2 - 1} e^{-u (2nu/kappa^2 + alpha)} du
  // numerically to 40 digits; the closed form is (2nu/kappa^2 + alpha)^{-nu - n/2}
  // up to an alpha-independent factor, checked here through ratios.
  SpectralDensity d;
  d.kind = DensityKind::Matern;
  d.kappa = 0.7;
  for (const auto& row : refvals::kMaternRatios) {
    d.nu = row.nu;
    const double alpha = static_cast<double>(row.ell) * (row.ell + 1);
    const double ratio = kernels::density_raw_coefficient(d, alpha, 2) /
                         kernels::density_raw_coefficient(d, 0.0, 2);
    CHECK(ratio == doctest::Approx(row.ratio).epsilon(1e-10));
  }
}

TEST_CASE("sphere kernels: variance at zero distance is exactly sigma2") {
  for (const double sigma2 : {1.0, 2.5}) {
    for (const DensityKind kind : {DensityKind::Heat, DensityKind::Matern}) {
      SpectralDensity d;
      d.kind = kind;
      d.kappa = 0.8;
      d.nu = 1.5;
      d.sigma2 = sigma2;
      const SpectralKernel k = kernels::build_kernel(spaces::make_sphere(2), d, 25);
      Rng rng(3);
      const SpacePoint x = spaces::haar_sample_space(spaces::make_sphere(2), rng);
      CHECK(kernels::kernel_value(k, x, x) == doctest::Approx(sigma2).epsilon(1e-12));
    }
  }
}

TEST_CASE("group kernels: variance, symmetry, conjugate closure") {
  SpectralDensity d;
  d.kind = DensityKind::Heat;
  d.kappa = 1.0;
  const SpectralKernel k = kernels::build_kernel(spaces::make_group_space(repr::su(3)), d, 2);
  // Budget 2 ends on (1,0,0) whose dual (1,1,0) must be pulled in.
  CHECK(k.effective_budget == 3);
  bool has_dual = false;
  for (const auto& lv : k.levels) {
    if (lv.rep.signature == repr::Signature{1, 1, 0}) has_dual = true;
  }
  CHECK(has_dual);

  Rng rng(17);
  const auto space = spaces::make_group_space(repr::su(3));
  const SpacePoint x = spaces::haar_sample_space(space, rng);
  const SpacePoint y = spaces::haar_sample_space(space, rng);
  CHECK(kernels::kernel_value(k, x, x) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(kernels::kernel_value(k, x, y) == doctest::Approx(kernels::kernel_value(k, y, x)).epsilon(1e-9));
}

TEST_CASE("kernels are invariant under simultaneous translation") {
  SpectralDensity d;
  d.kind = DensityKind::Matern;
  d.nu = 2.5;
  d.kappa = 0.9;
  const auto space = spaces::make_group_space(repr::so(4));
  const SpectralKernel k = kernels::build_kernel(space, d, 12);
  Rng rng(29);
  const SpacePoint x = spaces::haar_sample_space(space, rng);
  const SpacePoint y = spaces::haar_sample_space(space, rng);
  const groups::GroupElement h = groups::haar_sample(repr::so(4), rng);
  const SpacePoint hx = spaces::make_point(groups::multiply(h, x.elem()));
  const SpacePoint hy = spaces::make_point(groups::multiply(h, y.elem()));
  CHECK(kernels::kernel_value(k, hx, hy) ==
        doctest::Approx(kernels::kernel_value(k, x, y)).epsilon(1e-9));
}

TEST_CASE("SU(2) heat kernel equals an independent Chebyshev series") {
  SpectralDensity d;
  d.kind = DensityKind::Heat;
  d.kappa = 1.0;
  const auto space = spaces::make_group_space(repr::su(2));
  const SpectralKernel k = kernels::build_kernel(space, d, 60);

  // Independent evaluation: coefficients exp(-kappa^2 ((p+1)^2 - 1)/16) with
  // characters U_p(cos theta), normalized by the value at theta = 0.
  auto reference = [&](double theta) {
    double num = 0.0, den = 0.0;
    for (int p = 0; p < 200; ++p) {
      const double alpha = (std::pow(p + 1.0, 2) - 1.0) / 8.0;
      const double c = std::exp(-0.5 * alpha) * (p + 1.0);
      num += c * cheb_u(p, std::cos(theta));
      den += c * (p + 1.0);
    }
    return num / den;
  };

  for (double theta : {0.2, 0.9, 1.7, 2.6, 3.1}) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = std::polar(1.0, theta);
    m(1, 1) = std::polar(1.0, -theta);
    const SpacePoint g = spaces::make_point(groups::GroupElement{repr::su(2), m});
    const SpacePoint e = spaces::make_point(groups::identity(repr::su(2)));
    CHECK(kernels::kernel_value(k, g, e) == doctest::Approx(reference(theta)).epsilon(1e-8));
  }
}

TEST_CASE("kernel Gram matrices are PSD up to jitter scale") {
  Rng rng(123);
  for (const auto& space : {spaces::make_group_space(repr::su(2)), spaces::make_sphere(2)}) {
    SpectralDensity d;
    d.kind = DensityKind::Matern;
    d.nu = 0.5;
    d.kappa = 0.6;
    const SpectralKernel k = kernels::build_kernel(space, d, 30);
    const auto pts = spaces::haar_sample_space(space, 12, rng);
    const Eigen::MatrixXd gram = kernels::kernel_matrix(k, pts);
    CHECK((gram - gram.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);
  }
}

TEST_CASE("projective kernels identify antipodes") {
  SpectralDensity d;
  d.kind = DensityKind::Heat;
  d.kappa = 0.5;
  const auto rp2 = spaces::make_projective(2);
  const SpectralKernel k = kernels::build_kernel(rp2, d, 10);
  Rng rng(8);
  const SpacePoint x = spaces::haar_sample_space(rp2, rng);
  const SpacePoint minus_x = spaces::make_point(Eigen::VectorXd(-x.vec()));
  CHECK(kernels::kernel_value(k, x, minus_x) == doctest::Approx(d.sigma2).epsilon(1e-12));
}

TEST_CASE("very large Matern nu stays finite (log-space construction)") {
  SpectralDensity d;
  d.kind = DensityKind::Matern;
  d.nu = 1000.0;
  d.kappa = 1.0;
  const SpectralKernel k = kernels::build_kernel(spaces::make_sphere(2), d, 20);
  CHECK(std::isfinite(k.normalizer));
  CHECK(k.normalizer > 0.0);
  Rng rng(3);
  const SpacePoint x = spaces::haar_sample_space(spaces::make_sphere(2), rng);
  CHECK(kernels::kernel_value(k, x, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quotient kernel coefficients equal the Killing-scaled sphere ladder") {
  SpectralDensity d;
  d.kind = DensityKind::Heat;
  d.kappa = 0.9;
  Rng rng(55);
  const auto q = spaces::make_so_quotient(3);
  const SpectralKernel kq = kernels::build_quotient_kernel(q, d, 8, 4096, rng);
  const SpectralKernel ks = kernels::build_kernel(spaces::make_sphere(2), d, 8,
                                                  spaces::EigenvalueScale::Killing);
  REQUIRE(kq.levels.size() == ks.levels.size());
  CHECK(kq.normalizer == doctest::Approx(ks.normalizer).epsilon(1e-9));
  for (std::size_t i = 0; i < kq.levels.size(); ++i) {
    CHECK(kq.levels[i].rep.eigenvalue ==
          doctest::Approx(ks.levels[i].zonal.eigenvalue).epsilon(1e-12));
    CHECK(kq.levels[i].mass == doctest::Approx(ks.levels[i].mass).epsilon(1e-12));
    CHECK(kq.levels[i].coefficient == doctest::Approx(ks.levels[i].coefficient).epsilon(1e-9));
  }
}

TEST_CASE("periodic summation of the quotient kernel matches the sphere form") {
  SpectralDensity d;
  d.kind = DensityKind::Heat;
  d.kappa = 1.1;
  Rng rng(77);
  const auto q = spaces::make_so_quotient(3);
  const SpectralKernel kq = kernels::build_quotient_kernel(q, d, 10, 4096, rng);
  const SpectralKernel ks = kernels::build_kernel(spaces::make_sphere(2), d, 10,
                                                  spaces::EigenvalueScale::Killing);
  const auto evaluator = kernels::group_kernel_evaluator(kq);
  for (int trial = 0; trial < 3; ++trial) {
    const groups::GroupElement x = groups::haar_sample(repr::so(3), rng);
    const groups::GroupElement y = groups::haar_sample(repr::so(3), rng);
    const auto res = spaces::periodic_summation(evaluator, *q.quotient, x, y, 2048, rng);
    // Corresponding sphere points: the cosets act on the fixed axis e3.
    const Eigen::VectorXd px = x.m.real().col(2);
    const Eigen::VectorXd py = y.m.real().col(2);
    const double want =
        kernels::kernel_value(ks, spaces::make_point(px), spaces::make_point(py));
    CHECK(std::abs(res.value - want) < 5.0 * res.std_error + 1e-9);
  }
}

TEST_CASE("group evaluator agrees with kernel_value") {
  SpectralDensity d;
  d.kind = DensityKind::Matern;
  d.nu = 1.5;
  d.kappa = 0.8;
  const auto space = spaces::make_group_space(repr::so(3));
  const SpectralKernel k = kernels::build_kernel(space, d, 15);
  const auto evaluator = kernels::group_kernel_evaluator(k);
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const SpacePoint x = spaces::haar_sample_space(space, rng);
    const SpacePoint y = spaces::haar_sample_space(space, rng);
    CHECK(evaluator(x.elem(), y.elem()) ==
          doctest::Approx(kernels::kernel_value(k, x, y)).epsilon(1e-12));
  }
}

TEST_CASE("configuration errors are rejected") {
  SpectralDensity d;
  d.kappa = -1.0;
  CHECK_THROWS_AS(kernels::build_kernel(spaces::make_sphere(2), d, 5), InvalidConfig);
  d.kappa = 1.0;
  d.sigma2 = 0.0;
  CHECK_THROWS_AS(kernels::build_kernel(spaces::make_sphere(2), d, 5), InvalidConfig);
  d.sigma2 = 1.0;
  d.kind = DensityKind::Matern;
  d.nu = -2.0;
  CHECK_THROWS_AS(kernels::build_kernel(spaces::make_sphere(2), d, 5), InvalidConfig);
  d.nu = 1.5;
  CHECK_THROWS_AS(kernels::build_kernel(spaces::make_so_quotient(3), d, 5), InvalidConfig);
}
