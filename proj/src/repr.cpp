#include "liegp/repr.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace liegp::repr {

namespace {

constexpr int kMaxSuRank = 10;   // SU(n), n <= 10
constexpr int kMaxSoRank = 12;   // SO(n), n <= 12
constexpr int kMaxPart = 100000;
constexpr double kMaxDimension = 1e12;  // keeps exact products inside long long

std::string sig_string(const Signature& sig) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) os << ",";
    os << sig[i];
  }
  os << ")";
  return os.str();
}

// rho in orthogonal coordinates (exact).
std::vector<Rat> rho_vector(const GroupId& g) {
  std::vector<Rat> rho;
  if (g.family == GroupFamily::SU) {
    const int n = g.n;
    rho.reserve(n);
    for (int i = 1; i <= n; ++i) rho.emplace_back(n + 1 - 2 * i, 2);
  } else if (g.n % 2 == 1) {
    const int k = g.n / 2;
    rho.reserve(k);
    for (int i = 1; i <= k; ++i) rho.emplace_back(2 * (k - i) + 1, 2);
  } else {
    const int k = g.n / 2;
    rho.reserve(k);
    for (int i = 1; i <= k; ++i) rho.emplace_back(k - i, 1);
  }
  return rho;
}

// Killing-scale divisor: the Laplace eigenvalue in the negative dual Killing
// metric is (|w+rho|^2 - |rho|^2) / c.
long long killing_scale(const GroupId& g) {
  return g.family == GroupFamily::SU ? 2LL * g.n : 2LL * (g.n - 2);
}

// Signature projected to the weight used in the eigenvalue formula: SU
// signatures are defined modulo constants, so they are centered to sum zero.
std::vector<Rat> eigen_weight(const GroupId& g, const Signature& sig) {
  std::vector<Rat> w;
  w.reserve(sig.size());
  if (g.family == GroupFamily::SU) {
    long long s = 0;
    for (int p : sig) s += p;
    for (int p : sig) w.emplace_back(static_cast<long long>(p) * g.n - s, g.n);
  } else {
    for (int p : sig) w.emplace_back(p, 1);
  }
  return w;
}

// Multiplies `acc` by `factor`, guarding against exact-arithmetic overflow
// with a parallel floating-point estimate.
void checked_mul(Rat& acc, const Rat& factor, long double& estimate) {
  estimate *= std::abs(boost::rational_cast<long double>(factor));
  if (estimate > kMaxDimension) {
    throw InvalidConfig("representation dimension exceeds the supported range");
  }
  acc *= factor;
}

}  // namespace

GroupId su(int n) {
  if (n < 2 || n > kMaxSuRank) {
    throw InvalidConfig("SU(n) requires 2 <= n <= " + std::to_string(kMaxSuRank));
  }
  return GroupId{GroupFamily::SU, n};
}

GroupId so(int n) {
  if (n < 3 || n > kMaxSoRank) {
    throw InvalidConfig("SO(n) requires 3 <= n <= " + std::to_string(kMaxSoRank));
  }
  return GroupId{GroupFamily::SO, n};
}

std::string group_name(const GroupId& g) {
  return (g.family == GroupFamily::SU ? "SU(" : "SO(") + std::to_string(g.n) + ")";
}

int torus_rank(const GroupId& g) {
  return g.family == GroupFamily::SU ? g.n - 1 : g.n / 2;
}

int manifold_dim(const GroupId& g) {
  return g.family == GroupFamily::SU ? g.n * g.n - 1 : g.n * (g.n - 1) / 2;
}

void validate_signature(const GroupId& g, const Signature& sig) {
  const int len = g.family == GroupFamily::SU ? g.n : g.n / 2;
  if (static_cast<int>(sig.size()) != len) {
    throw InvalidConfig("signature " + sig_string(sig) + " for " + group_name(g) + " must have " +
                        std::to_string(len) + " parts");
  }
  for (int p : sig) {
    if (std::abs(p) > kMaxPart) {
      throw InvalidConfig("signature part exceeds supported range");
    }
  }
  for (int i = 0; i + 1 < len; ++i) {
    if (sig[i] < sig[i + 1]) {
      throw InvalidConfig("signature " + sig_string(sig) + " must be non-increasing");
    }
  }
  if (g.family == GroupFamily::SU) {
    if (sig.back() != 0) {
      throw InvalidConfig("SU signature " + sig_string(sig) +
                          " must be canonical: last part 0 (signatures are defined "
                          "modulo adding a constant to every part)");
    }
  } else if (g.n % 2 == 1) {
    if (sig.back() < 0) {
      throw InvalidConfig("SO(odd) signature " + sig_string(sig) + " must be non-negative");
    }
  } else {
    // SO(2k): p_{k-1} >= |p_k|.
    if (len >= 2 && sig[len - 2] < std::abs(sig[len - 1])) {
      throw InvalidConfig("SO(even) signature " + sig_string(sig) +
                          " must satisfy p_{k-1} >= |p_k|");
    }
  }
}

Signature conjugate_signature(const GroupId& g, const Signature& sig) {
  validate_signature(g, sig);
  if (g.family == GroupFamily::SU) {
    // Negate and reverse, then shift so the last part is 0 again.
    Signature out(sig.size());
    const int first = sig.front();
    for (std::size_t i = 0; i < sig.size(); ++i) {
      out[i] = first - sig[sig.size() - 1 - i];
    }
    return out;
  }
  if (g.n % 2 == 1) return sig;
  const int k = g.n / 2;
  if (k % 2 == 0) return sig;  // longest Weyl element is -1: self-dual
  Signature out = sig;
  out.back() = -out.back();
  return out;
}

long long weyl_dimension(const GroupId& g, const Signature& sig) {
  validate_signature(g, sig);
  Rat dim(1);
  long double estimate = 1.0L;
  if (g.family == GroupFamily::SU) {
    const int n = g.n;
    // q_i = p_i + n - i strictly decreasing; dim = prod_{i<j} (q_i - q_j)/(j - i).
    std::vector<long long> q(n);
    for (int i = 0; i < n; ++i) q[i] = sig[i] + n - 1 - i;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        checked_mul(dim, Rat(q[i] - q[j], j - i), estimate);
      }
    }
  } else if (g.n % 2 == 1) {
    const int k = g.n / 2;
    // Doubled shifted coordinates L_i = 2(p_i + k - i + 1/2) keep everything
    // integral: dim = prod_i L_i/R_i * prod_{i<j} (L_i^2 - L_j^2)/(R_i^2 - R_j^2).
    std::vector<long long> l(k), r(k);
    for (int i = 0; i < k; ++i) {
      l[i] = 2LL * sig[i] + 2LL * (k - 1 - i) + 1;
      r[i] = 2LL * (k - 1 - i) + 1;
    }
    for (int i = 0; i < k; ++i) checked_mul(dim, Rat(l[i], r[i]), estimate);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        checked_mul(dim, Rat(l[i] * l[i] - l[j] * l[j], r[i] * r[i] - r[j] * r[j]), estimate);
      }
    }
  } else {
    const int k = g.n / 2;
    // l_i = p_i + k - i; dim = prod_{i<j} (l_i^2 - l_j^2)/(r_i^2 - r_j^2).
    std::vector<long long> l(k), r(k);
    for (int i = 0; i < k; ++i) {
      l[i] = static_cast<long long>(sig[i]) + (k - 1 - i);
      r[i] = k - 1 - i;
    }
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        checked_mul(dim, Rat(l[i] * l[i] - l[j] * l[j], r[i] * r[i] - r[j] * r[j]), estimate);
      }
    }
  }
  if (dim.denominator() != 1) {
    // The Weyl product of a valid dominant weight is always integral.
    throw NumericalError("internal error: non-integral dimension for " + sig_string(sig));
  }
  return dim.numerator();
}

Rat laplace_eigenvalue_exact(const GroupId& g, const Signature& sig) {
  validate_signature(g, sig);
  const std::vector<Rat> w = eigen_weight(g, sig);
  const std::vector<Rat> rho = rho_vector(g);
  Rat acc(0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += (w[i] + rho[i]) * (w[i] + rho[i]) - rho[i] * rho[i];
  }
  return acc / Rat(killing_scale(g));
}

double laplace_eigenvalue(const GroupId& g, const Signature& sig) {
  return boost::rational_cast<double>(laplace_eigenvalue_exact(g, sig));
}

Representation make_representation(const GroupId& g, const Signature& sig) {
  Representation rep;
  rep.signature = sig;
  rep.dimension = weyl_dimension(g, sig);
  rep.eigenvalue_exact = laplace_eigenvalue_exact(g, sig);
  rep.eigenvalue = boost::rational_cast<double>(rep.eigenvalue_exact);
  rep.conjugate = conjugate_signature(g, sig);
  rep.self_conjugate = (rep.conjugate == sig);
  return rep;
}

namespace {

// Emits all non-increasing integer tuples of length `len` with values in
// [0, maxval].
template <typename Emit>
void gen_nonincreasing(int len, int maxval, std::vector<int>& cur, const Emit& emit) {
  if (static_cast<int>(cur.size()) == len) {
    emit(cur);
    return;
  }
  const int hi = cur.empty() ? maxval : cur.back();
  for (int v = hi; v >= 0; --v) {
    cur.push_back(v);
    gen_nonincreasing(len, maxval, cur, emit);
    cur.pop_back();
  }
}

// All canonical signatures with leading part at most `box`.
std::vector<Signature> signatures_in_box(const GroupId& g, int box) {
  std::vector<Signature> out;
  std::vector<int> cur;
  if (g.family == GroupFamily::SU) {
    gen_nonincreasing(g.n - 1, box, cur, [&](const std::vector<int>& s) {
      Signature sig = s;
      sig.push_back(0);
      out.push_back(std::move(sig));
    });
  } else if (g.n % 2 == 1) {
    gen_nonincreasing(g.n / 2, box, cur, [&](const std::vector<int>& s) { out.push_back(s); });
  } else {
    gen_nonincreasing(g.n / 2, box, cur, [&](const std::vector<int>& s) {
      out.push_back(s);
      if (s.back() > 0) {
        Signature mirror = s;
        mirror.back() = -mirror.back();
        out.push_back(std::move(mirror));
      }
    });
  }
  return out;
}

// Exact lower bound on the eigenvalue of any signature whose leading part
// is at least `m`: every such signature lies outside the box [0, m-1].
Rat outside_box_bound(const GroupId& g, long long m) {
  if (g.family == GroupFamily::SU) {
    // |w|^2 >= m^2/2 for a centered dominant weight with spread m, and
    // <w, rho> >= 0 because both sequences are similarly ordered.
    return Rat(m * m, 2 * killing_scale(g));
  }
  const Rat rho1 = rho_vector(g).front();
  const Rat shifted = Rat(m) + rho1;
  return (shifted * shifted - rho1 * rho1) / Rat(killing_scale(g));
}

}  // namespace

std::vector<Representation> enumerate_representations(const GroupId& g, int budget) {
  if (budget < 1 || budget > 100000) {
    throw InvalidConfig("representation budget must be in [1, 100000]");
  }
  const auto by_eigen_then_sig = [](const Representation& a, const Representation& b) {
    if (a.eigenvalue_exact != b.eigenvalue_exact) {
      return a.eigenvalue_exact < b.eigenvalue_exact;
    }
    return a.signature < b.signature;
  };
  constexpr int kMaxBox = 1 << 14;
  for (int box = 4; box <= kMaxBox; box *= 2) {
    std::vector<Representation> reps;
    for (const Signature& sig : signatures_in_box(g, box)) {
      reps.push_back(make_representation(g, sig));
    }
    std::sort(reps.begin(), reps.end(), by_eigen_then_sig);
    if (static_cast<int>(reps.size()) >= budget) {
      const Rat worst_kept = reps[budget - 1].eigenvalue_exact;
      if (outside_box_bound(g, box + 1) > worst_kept) {
        reps.resize(budget);
        return reps;
      }
    }
  }
  throw InvalidConfig("representation budget too large for " + group_name(g));
}

}  // namespace liegp::repr
