#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "liegp/errors.hpp"

namespace liegp::repr {

// Exact rational scalar used for root-system arithmetic.  All eigenvalue
// comparisons during enumeration are done in this type so that ordering and
// tie-breaking are exact, never floating-point dependent.
using Rat = boost::rational<long long>;

enum class GroupFamily { SU, SO };

// A compact connected matrix group: SU(n) (n >= 2) or SO(n) (n >= 3).
struct GroupId {
  GroupFamily family;
  int n;

  bool operator==(const GroupId&) const = default;
};

GroupId su(int n);
GroupId so(int n);

// "SU(3)", "SO(5)", ...
std::string group_name(const GroupId& g);

// Rank of the maximal torus: n-1 for SU(n), floor(n/2) for SO(n).
int torus_rank(const GroupId& g);

// Dimension of the group manifold: n^2-1 for SU(n), n(n-1)/2 for SO(n).
int manifold_dim(const GroupId& g);

// Highest weight written in the standard orthogonal coordinates.
//
// SU(n): n non-increasing integers with last part 0 (the canonical
//   representative of the weight, which is only defined modulo adding a
//   constant to all parts).
// SO(2k+1): k non-increasing integers, all >= 0.
// SO(2k): k integers with p1 >= ... >= p_{k-1} >= |p_k|; the last part may
//   be negative and distinguishes the two mirror representations.
using Signature = std::vector<int>;

// Throws InvalidConfig when `sig` is not a valid canonical signature for `g`.
void validate_signature(const GroupId& g, const Signature& sig);

// Signature of the complex-conjugate (dual) representation.
// SU(n): reverse, negate, shift so the last part is 0 again.
// SO(2k+1): self-dual, returns the input.
// SO(2k): for odd k the dual flips the sign of the last part; for even k the
//   longest Weyl element acts as -1, so every representation is self-dual.
Signature conjugate_signature(const GroupId& g, const Signature& sig);

// Exact dimension of the irreducible representation with highest weight
// `sig`.  SU(n) uses the Weyl product over positive roots; SO(n) uses the
// classical hook-style product formulas in the shifted coordinates
// l_i = p_i + (rank adjustment).
long long weyl_dimension(const GroupId& g, const Signature& sig);

// Laplace-Beltrami eigenvalue of the representation's matrix coefficients,
// with the metric normalized by the negative dual Killing form, as an exact
// rational:  ( <w+rho, w+rho> - <rho, rho> ) / c,  where c = 2n for SU(n)
// and c = 2(n-2) for SO(n), and (for SU) w is the signature projected to
// sum zero.  With this normalization the adjoint representation always has
// eigenvalue exactly 1.
Rat laplace_eigenvalue_exact(const GroupId& g, const Signature& sig);
double laplace_eigenvalue(const GroupId& g, const Signature& sig);

// One enumerated irreducible representation.
struct Representation {
  Signature signature;
  long long dimension = 0;
  double eigenvalue = 0.0;       // laplace_eigenvalue(signature)
  Rat eigenvalue_exact{0};       // same value, exact
  bool self_conjugate = false;   // signature == conjugate_signature(signature)
  Signature conjugate;           // conjugate_signature(signature)
};

// The `budget` irreducible representations with the smallest Laplace
// eigenvalues, sorted by (eigenvalue, signature lexicographic).
//
// Candidate signatures are generated inside a growing box |p_i| <= B; the
// box stops growing once every signature outside it provably has a larger
// eigenvalue than the budget-th smallest found so far (the bound uses the
// exact monotone growth of <w+rho, w+rho> in the leading part).  Ordering
// and the cut are decided in exact rational arithmetic, so the result is
// reproducible and tie-stable.
std::vector<Representation> enumerate_representations(const GroupId& g, int budget);

// Builds the Representation record for one signature.
Representation make_representation(const GroupId& g, const Signature& sig);

}  // namespace liegp::repr
