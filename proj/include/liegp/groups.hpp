#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "liegp/repr.hpp"
#include "liegp/rng.hpp"

namespace liegp::groups {

// An element of SU(n) or SO(n).  The matrix is stored complex for both
// families (SO matrices simply have zero imaginary part), which keeps the
// algebra uniform.
struct GroupElement {
  repr::GroupId group;
  Eigen::MatrixXcd m;
};

GroupElement identity(const repr::GroupId& g);

// Throws InvalidConfig if `e.m` is not (numerically) a member of the group:
// wrong size, not unitary/orthogonal within `tol`, or wrong determinant.
void validate_element(const GroupElement& e, double tol = 1e-9);

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

// g2^{-1} * g1 : the group-valued "difference" whose conjugacy class
// determines every bi-invariant kernel value k(g1, g2).
GroupElement group_difference(const GroupElement& g1, const GroupElement& g2);

// Angles of a maximal-torus representative of the conjugacy class of g.
//
// SU(n): the n eigenvalue phases in (-pi, pi], sorted descending; their sum
//   is 0 mod 2pi.
// SO(n): k = floor(n/2) rotation angles.  The element is conjugated inside
//   SO(n) to the standard block-diagonal form with 2x2 blocks
//   [[cos t, sin t], [-sin t, cos t]] (plus a trailing 1 for odd n); angles
//   are sorted descending in [0, pi], except that for SO(2k) the *last*
//   angle keeps a sign: when the orthogonal change of basis produced by the
//   eigensolver has determinant -1 it is corrected by reflecting the last
//   plane, which negates t_k.  That sign distinguishes the two mirror
//   conjugacy classes of SO(2k).
struct TorusPoint {
  std::vector<double> angles;
};

TorusPoint torus_coordinates(const GroupElement& g);

// Full decomposition g = Q T Q^T for SO(n) (Q in SO(n), T block-diagonal
// with the angles above).  Exposed for verification; torus_coordinates
// returns just the angles.
struct TorusDecomposition {
  TorusPoint point;
  Eigen::MatrixXd q;  // SO(n) only
};

TorusDecomposition torus_decomposition_so(const GroupElement& g);

// Builds the block-diagonal torus representative with the given angles.
Eigen::MatrixXd torus_matrix_so(const repr::GroupId& g, const std::vector<double>& angles);

// Character of the irreducible representation `sig` at a torus point,
// evaluated as a ratio of alternating determinants in the eigenvalue phases
// (numerator: generalized Vandermonde in the shifted weight; denominator:
// Weyl denominator).  Near points where the denominator degenerates
// (coincident or special angles) the ratio is resolved internally:
//  * central elements (all phases equal) evaluate exactly to
//    phase^(sum of parts) * dimension via the root product formula;
//  * otherwise the angles are nudged by +/-delta along a fixed generic
//    direction and the two values averaged, escalating delta a few times
//    if needed.
// Callers never see a 0/0.
std::complex<double> character(const repr::GroupId& g, const repr::Signature& sig,
                               const TorusPoint& t);

// character() composed with torus_coordinates().
std::complex<double> character_at(const repr::GroupId& g, const repr::Signature& sig,
                                  const GroupElement& e);

// One Haar-distributed element, via QR decomposition of a Ginibre matrix
// with the R-diagonal phase correction (then a determinant correction:
// SU(n) divides by an n-th root of the determinant, SO(n) reflects the last
// column when det = -1).
GroupElement haar_sample(const repr::GroupId& g, Rng& rng);

std::vector<GroupElement> haar_sample(const repr::GroupId& g, int count, Rng& rng);

}  // namespace liegp::groups
