#include "liegp/groups.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <vector>

namespace liegp::groups {

namespace {

using repr::GroupFamily;
using repr::GroupId;
using repr::Rat;
using repr::Signature;
using std::complex;

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Exact dimension via the product over positive roots.  This is deliberately
// a separate code path from repr::weyl_dimension (which uses the classical
// shifted-coordinate product formulas): the two routes cross-check each
// other, and this one is what anchors character values at central elements.
// ---------------------------------------------------------------------------

std::vector<Rat> rho_of(const GroupId& g) {
  std::vector<Rat> rho;
  if (g.family == GroupFamily::SU) {
    for (int i = 1; i <= g.n; ++i) rho.emplace_back(g.n + 1 - 2 * i, 2);
  } else if (g.n % 2 == 1) {
    const int k = g.n / 2;
    for (int i = 1; i <= k; ++i) rho.emplace_back(2 * (k - i) + 1, 2);
  } else {
    const int k = g.n / 2;
    for (int i = 1; i <= k; ++i) rho.emplace_back(k - i, 1);
  }
  return rho;
}

long long dimension_via_roots(const GroupId& g, const Signature& sig) {
  const std::vector<Rat> rho = rho_of(g);
  const int m = static_cast<int>(rho.size());
  std::vector<Rat> v(m);
  for (int i = 0; i < m; ++i) v[i] = Rat(sig[i]) + rho[i];

  Rat dim(1);
  // Roots e_i - e_j (all families; for SU the pairing is shift-invariant, so
  // the un-centered signature can be used directly).
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      dim *= (v[i] - v[j]) / (rho[i] - rho[j]);
    }
  }
  if (g.family == GroupFamily::SO) {
    // Roots e_i + e_j.
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        dim *= (v[i] + v[j]) / (rho[i] + rho[j]);
      }
    }
    if (g.n % 2 == 1) {
      // Short roots e_i.
      for (int i = 0; i < m; ++i) dim *= v[i] / rho[i];
    }
  }
  if (dim.denominator() != 1) {
    throw NumericalError("internal error: non-integral root-product dimension");
  }
  return dim.numerator();
}

// ---------------------------------------------------------------------------
// Determinant-ratio character evaluation.
// ---------------------------------------------------------------------------

int positive_root_count(const GroupId& g) {
  if (g.family == GroupFamily::SU) return g.n * (g.n - 1) / 2;
  const int k = g.n / 2;
  return g.n % 2 == 1 ? k * k : k * (k - 1);
}

// Degeneracy threshold for the Weyl-denominator determinant: its magnitude
// is at most 2^(number of positive roots), so this is a relative cutoff.
double denominator_cutoff(const GroupId& g) {
  return 1e-8 * std::pow(2.0, positive_root_count(g));
}

std::optional<complex<double>> det_ratio(const GroupId& g, const Signature& sig,
                                         const std::vector<double>& angles) {
  const double cutoff = denominator_cutoff(g);
  if (g.family == GroupFamily::SU) {
    const int n = g.n;
    Eigen::MatrixXcd num(n, n), den(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        num(i, j) = std::polar(1.0, angles[i] * (sig[j] + n - 1 - j));
        den(i, j) = std::polar(1.0, angles[i] * (n - 1 - j));
      }
    }
    const complex<double> d = den.determinant();
    if (std::abs(d) < cutoff) return std::nullopt;
    return num.determinant() / d;
  }

  const int k = g.n / 2;
  if (g.n % 2 == 1) {
    // Entries 2 i sin(q_j t_i) with half-integer q_j = p_j + (k - j) + 1/2.
    Eigen::MatrixXcd num(k, k), den(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const double q = sig[j] + (k - 1 - j) + 0.5;
        const double r = (k - 1 - j) + 0.5;
        num(i, j) = complex<double>(0.0, 2.0 * std::sin(q * angles[i]));
        den(i, j) = complex<double>(0.0, 2.0 * std::sin(r * angles[i]));
      }
    }
    const complex<double> d = den.determinant();
    if (std::abs(d) < cutoff) return std::nullopt;
    return num.determinant() / d;
  }

  // SO(2k): chi = (det[2 cos(q_j t_i)] + sign(p_k) det[2 i sin(q_j t_i)])
  //              / det[2 cos(r_j t_i)],
  // with q_j = p_j + k - j for j < k and q_k = |p_k|.
  Eigen::MatrixXcd even(k, k), den(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double q = (j == k - 1) ? std::abs(sig[j]) : sig[j] + (k - 1 - j);
      const double r = k - 1 - j;
      even(i, j) = 2.0 * std::cos(q * angles[i]);
      den(i, j) = 2.0 * std::cos(r * angles[i]);
    }
  }
  const complex<double> d = den.determinant();
  if (std::abs(d) < cutoff) return std::nullopt;
  complex<double> value = even.determinant();
  if (sig[k - 1] != 0) {
    Eigen::MatrixXcd odd(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const double q = (j == k - 1) ? std::abs(sig[j]) : sig[j] + (k - 1 - j);
        odd(i, j) = complex<double>(0.0, 2.0 * std::sin(q * angles[i]));
      }
    }
    const double sgn = sig[k - 1] > 0 ? 1.0 : -1.0;
    value += sgn * odd.determinant();
  }
  return value / d;
}

// Detects central elements: all torus phases equal (as points on the circle).
// Only the genuinely central values occur for valid group elements:
// exp(2 pi i j / n) * I for SU(n), and +/- I for SO(n).
std::optional<double> central_angle(const GroupId& g, const std::vector<double>& angles) {
  constexpr double tol = 1e-9;
  if (g.family == GroupFamily::SU) {
    const complex<double> g0 = std::polar(1.0, angles[0]);
    for (double a : angles) {
      if (std::abs(std::polar(1.0, a) - g0) > tol) return std::nullopt;
    }
    return angles[0];
  }
  // SO(n): all angles ~ 0 (identity) or, for SO(2k), all ~ pi (minus the
  // identity).  For odd n only the identity is central.
  const bool all_zero = std::all_of(angles.begin(), angles.end(),
                                    [&](double a) { return std::abs(a) < tol; });
  if (all_zero) return 0.0;
  if (g.n % 2 == 0) {
    const bool all_pi = std::all_of(angles.begin(), angles.end(), [&](double a) {
      return std::abs(std::abs(a) - kPi) < tol;
    });
    if (all_pi) return kPi;
  }
  return std::nullopt;
}

// A fixed generic perturbation direction (square roots of primes are
// rationally independent, so the Weyl denominator cannot vanish identically
// along this ray).  For SU the direction is centered to preserve the
// sum-of-angles constraint.
std::vector<double> generic_direction(const GroupId& g, std::size_t m) {
  static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<double> dir(m);
  double maxv = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    dir[i] = std::sqrt(primes[i]);
    maxv = std::max(maxv, dir[i]);
  }
  for (double& d : dir) d /= maxv;
  if (g.family == GroupFamily::SU) {
    const double mean = std::accumulate(dir.begin(), dir.end(), 0.0) / static_cast<double>(m);
    for (double& d : dir) d -= mean;
  }
  return dir;
}

}  // namespace

GroupElement identity(const GroupId& g) {
  return GroupElement{g, Eigen::MatrixXcd::Identity(g.n, g.n)};
}

void validate_element(const GroupElement& e, double tol) {
  const int n = e.group.n;
  if (e.m.rows() != n || e.m.cols() != n) {
    throw InvalidConfig("group element has wrong matrix size for " + group_name(e.group));
  }
  const double unitary_defect = (e.m.adjoint() * e.m - Eigen::MatrixXcd::Identity(n, n))
                                    .cwiseAbs()
                                    .maxCoeff();
  if (unitary_defect > tol) {
    throw InvalidConfig("matrix is not unitary/orthogonal (defect " +
                        std::to_string(unitary_defect) + ")");
  }
  if (e.group.family == GroupFamily::SO && e.m.imag().cwiseAbs().maxCoeff() > tol) {
    throw InvalidConfig("SO element must be a real matrix");
  }
  const complex<double> det = e.m.determinant();
  if (std::abs(det - complex<double>(1.0, 0.0)) > 10 * tol) {
    throw InvalidConfig("matrix determinant is not 1");
  }
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (!(a.group == b.group)) throw InvalidConfig("group mismatch in multiply");
  return GroupElement{a.group, a.m * b.m};
}

GroupElement inverse(const GroupElement& a) { return GroupElement{a.group, a.m.adjoint()}; }

GroupElement group_difference(const GroupElement& g1, const GroupElement& g2) {
  if (!(g1.group == g2.group)) throw InvalidConfig("group mismatch in group_difference");
  return GroupElement{g1.group, g2.m.adjoint() * g1.m};
}

TorusPoint torus_coordinates(const GroupElement& g) {
  if (g.group.family == GroupFamily::SU) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g.m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
      throw NumericalError("eigenvalue computation failed for SU element");
    }
    std::vector<double> angles(g.group.n);
    for (int i = 0; i < g.group.n; ++i) {
      double a = std::arg(es.eigenvalues()(i));
      if (a <= -kPi + 1e-15) a = kPi;  // use (-pi, pi]
      angles[i] = a;
    }
    std::sort(angles.rbegin(), angles.rend());
    return TorusPoint{std::move(angles)};
  }
  return torus_decomposition_so(g).point;
}

TorusDecomposition torus_decomposition_so(const GroupElement& g) {
  if (g.group.family != GroupFamily::SO) {
    throw InvalidConfig("torus_decomposition_so requires an SO element");
  }
  const int n = g.group.n;
  const Eigen::MatrixXd m = g.m.real();

  // Real Schur form: m = U T U^T with U orthogonal.  For a (normal)
  // orthogonal matrix T is block diagonal with 1x1 blocks (+/-1) and 2x2
  // rotation blocks, which is exactly the torus form up to ordering.
  Eigen::RealSchur<Eigen::MatrixXd> schur(m);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("Schur decomposition failed for SO element");
  }
  const Eigen::MatrixXd& t = schur.matrixT();
  Eigen::MatrixXd u = schur.matrixU();

  struct Block {
    double angle;
    Eigen::VectorXd c1, c2;  // the two basis columns of the plane
  };
  std::vector<Block> blocks;
  std::vector<Eigen::VectorXd> plus_axes, minus_axes;

  int i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      // 2x2 rotation block [[cos, sin], [-sin, cos]] in the (c1, c2) plane.
      double angle = std::atan2(0.5 * (t(i, i + 1) - t(i + 1, i)), 0.5 * (t(i, i) + t(i + 1, i + 1)));
      Eigen::VectorXd c1 = u.col(i), c2 = u.col(i + 1);
      if (angle < 0) {
        angle = -angle;
        c2 = -c2;
      }
      blocks.push_back(Block{angle, std::move(c1), std::move(c2)});
      i += 2;
    } else {
      if (t(i, i) > 0) {
        plus_axes.push_back(u.col(i));
      } else {
        minus_axes.push_back(u.col(i));
      }
      i += 1;
    }
  }
  // det(m) = 1 forces an even count of -1 eigenvalues; pair them into
  // rotation-by-pi planes, and +1 axes into identity planes.
  for (std::size_t j = 0; j + 1 < minus_axes.size(); j += 2) {
    blocks.push_back(Block{kPi, minus_axes[j], minus_axes[j + 1]});
  }
  // An odd leftover +1 axis (odd n only) becomes the trailing fixed axis.
  const std::size_t plus_pairs = plus_axes.size() / 2;
  for (std::size_t j = 0; j < plus_pairs; ++j) {
    blocks.push_back(Block{0.0, plus_axes[2 * j], plus_axes[2 * j + 1]});
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) { return a.angle > b.angle; });

  Eigen::MatrixXd q(n, n);
  std::vector<double> angles;
  int col = 0;
  for (const Block& b : blocks) {
    q.col(col++) = b.c1;
    q.col(col++) = b.c2;
    angles.push_back(b.angle);
  }
  if (n % 2 == 1) {
    // det = 1 with odd n guarantees an odd count of +1 eigenvalues.
    if (plus_axes.size() % 2 != 1) {
      throw NumericalError("internal error: no spare +1 axis for odd SO(n)");
    }
    q.col(col++) = plus_axes.back();
  }
  if (col != n) {
    throw NumericalError("internal error: torus block assembly mismatch");
  }

  // Keep the change of basis inside SO(n): reflect the last plane (or axis)
  // if needed.  For even n this negates the final (smallest) angle, which is
  // exactly the sign that separates the two mirror conjugacy classes.
  if (q.determinant() < 0) {
    q.col(n - 1) = -q.col(n - 1);
    if (n % 2 == 0) {
      double& last = angles.back();
      if (last > 1e-300 && last < kPi - 1e-300) last = -last;
    }
  }
  return TorusDecomposition{TorusPoint{std::move(angles)}, std::move(q)};
}

Eigen::MatrixXd torus_matrix_so(const GroupId& g, const std::vector<double>& angles) {
  if (g.family != GroupFamily::SO) throw InvalidConfig("torus_matrix_so requires SO");
  const int n = g.n;
  if (static_cast<int>(angles.size()) != n / 2) {
    throw InvalidConfig("torus_matrix_so: wrong number of angles");
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n);
  for (int b = 0; b < n / 2; ++b) {
    const double c = std::cos(angles[b]), s = std::sin(angles[b]);
    t(2 * b, 2 * b) = c;
    t(2 * b, 2 * b + 1) = s;
    t(2 * b + 1, 2 * b) = -s;
    t(2 * b + 1, 2 * b + 1) = c;
  }
  return t;
}

complex<double> character(const GroupId& g, const Signature& sig, const TorusPoint& t) {
  repr::validate_signature(g, sig);
  const std::size_t want = g.family == GroupFamily::SU ? static_cast<std::size_t>(g.n)
                                                       : static_cast<std::size_t>(g.n / 2);
  if (t.angles.size() != want) {
    throw InvalidConfig("torus point has wrong number of angles for " + group_name(g));
  }

  // Central elements: the determinant ratio is 0/0, but the value is exactly
  // phase^(sum of signature parts) * dimension.
  if (const auto phase_angle = central_angle(g, t.angles)) {
    long long psum = 0;
    for (int p : sig) psum += p;
    const double dim = static_cast<double>(dimension_via_roots(g, sig));
    return std::polar(dim, *phase_angle * static_cast<double>(psum));
  }

  if (const auto direct = det_ratio(g, sig, t.angles)) return *direct;

  // Degenerate (but non-central) denominator: average symmetric offsets
  // along a fixed generic direction, escalating the step if needed.
  const std::vector<double> dir = generic_direction(g, t.angles.size());
  for (double delta : {1e-4, 1e-3, 1e-2}) {
    std::vector<double> lo(t.angles), hi(t.angles);
    for (std::size_t j = 0; j < dir.size(); ++j) {
      hi[j] += delta * dir[j];
      lo[j] -= delta * dir[j];
    }
    const auto vhi = det_ratio(g, sig, hi);
    const auto vlo = det_ratio(g, sig, lo);
    if (vhi && vlo) return 0.5 * (*vhi + *vlo);
  }
  throw NumericalError("character evaluation degenerate after all fallbacks");
}

complex<double> character_at(const GroupId& g, const Signature& sig, const GroupElement& e) {
  return character(g, sig, torus_coordinates(e));
}

GroupElement haar_sample(const GroupId& g, Rng& rng) {
  const int n = g.n;
  if (g.family == GroupFamily::SU) {
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        a(i, j) = complex<double>(rng.normal(), rng.normal()) / std::sqrt(2.0);
      }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    // Fix the phase gauge of QR so q is Haar on U(n).
    for (int j = 0; j < n; ++j) {
      const complex<double> r = qr.matrixQR()(j, j);
      const double mag = std::abs(r);
      q.col(j) *= (mag > 1e-300) ? r / mag : complex<double>(1.0, 0.0);
    }
    // Project U(n) -> SU(n) by the principal n-th root of the determinant.
    const double det_phase = std::arg(q.determinant());
    q *= std::polar(1.0, -det_phase / n);
    return GroupElement{g, std::move(q)};
  }

  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < n; ++j) {
    if (qr.matrixQR()(j, j) < 0) q.col(j) = -q.col(j);
  }
  // q is Haar on O(n); reflecting the last column maps the det = -1 coset
  // onto SO(n) without disturbing the distribution.
  if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
  return GroupElement{g, q.cast<complex<double>>()};
}

std::vector<GroupElement> haar_sample(const GroupId& g, int count, Rng& rng) {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(haar_sample(g, rng));
  return out;
}

}  // namespace liegp::groups
