#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "braidsurf/reps.hpp"

namespace braidsurf {

struct InvariantBasis {
  std::vector<int> factor_dims;
  int dim = 0;   // ambient tensor dimension
  CMat vectors;  // dim x count, orthonormal columns
  int count() const { return static_cast<int>(vectors.cols()); }
};

namespace detail {

inline void check_same_group(const std::vector<UnitaryRep>& factors) {
  if (factors.empty()) throw std::invalid_argument("need at least one tensor factor");
  for (const auto& f : factors)
    if (f.group->fingerprint != factors[0].group->fingerprint)
      throw std::invalid_argument("tensor factors must share one group");
}

// Kronecker product of the factors evaluated at the tuple x, in order.
inline CMat tensor_at(const std::vector<UnitaryRep>& factors, const std::vector<int>& x) {
  CMat M = factors[0](x[0]);
  for (std::size_t i = 1; i < factors.size(); ++i)
    M = Eigen::kroneckerProduct(M, factors[i](x[i])).eval();
  return M;
}

// Odometer over k digits in [0, base); returns false after the last tuple.
inline bool next_tuple(std::vector<int>& t, int base) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < base) return true;
    t[i] = 0;
  }
  return false;
}

}  // namespace detail

// Orthonormal basis of the diagonal-invariant subspace of the tensor product,
// read off the averaging projector (1/|G|) sum_g rho_1(g) x ... x rho_k(g).
// The projector is Hermitian (rho unitary), so eigenvalues split 0/1.
inline InvariantBasis invariant_vectors(const std::vector<UnitaryRep>& factors) {
  detail::check_same_group(factors);
  const FiniteGroup& G = *factors[0].group;
  int D = 1;
  for (const auto& f : factors) D *= f.dim;

  CMat P = CMat::Zero(D, D);
  std::vector<int> diag(factors.size());
  for (int g = 0; g < G.order; ++g) {
    std::fill(diag.begin(), diag.end(), g);
    P += detail::tensor_at(factors, diag);
  }
  P /= static_cast<double>(G.order);

  Eigen::SelfAdjointEigenSolver<CMat> es((P + P.adjoint()) / 2);
  int keep = 0;
  for (int i = 0; i < D; ++i)
    if (es.eigenvalues()(i) > 0.5) ++keep;

  InvariantBasis B;
  B.dim = D;
  for (const auto& f : factors) B.factor_dims.push_back(f.dim);
  B.vectors = es.eigenvectors().rightCols(keep);  // eigenvalues ascend
  return B;
}

// <(rho_1(x_1) x ... x rho_k(x_k)) u, v> for invariant u, v. Bi-invariant
// under simultaneous diagonal translation of x on either side.
inline std::complex<double> spherical_value(const std::vector<UnitaryRep>& factors,
                                            const CVec& u, const CVec& v,
                                            const std::vector<int>& x) {
  detail::check_same_group(factors);
  if (x.size() != factors.size())
    throw std::invalid_argument("spherical_value: tuple length != factor count");
  int D = 1;
  for (const auto& f : factors) D *= f.dim;
  if (u.size() != D || v.size() != D)
    throw std::invalid_argument("spherical_value: vector dimension mismatch");
  return (v.adjoint() * (detail::tensor_at(factors, x) * u))(0, 0);
}

// Result of a coset-separation query. Tuples in G^k name points of the
// double-coset space of the diagonal subgroup in G^{k+1}, classes normalized
// so the extra coordinate is the identity; two tuples land in the same class
// exactly when they are simultaneously conjugate. A separating witness is a
// spherical function: a (k+1)-tuple of irreducibles (the leading factor sits
// on the identity coordinate) plus a pair of diagonal-invariant vectors.
struct Separation {
  bool separated = false;
  std::vector<int> witness_factors;  // indices into numeric_irreps(G), k+1 entries
  int u_index = -1, v_index = -1;    // columns of the witness invariant basis
  std::complex<double> at_x{}, at_y{};
};

inline Separation separate_cosets(const GroupPtr& Gp, const std::vector<int>& x,
                                  const std::vector<int>& y,
                                  std::uint64_t seed = kSplitSeed) {
  const FiniteGroup& G = *Gp;
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("separate_cosets: tuples must have equal positive length");
  const int k = static_cast<int>(x.size());
  for (int e : x)
    if (e < 0 || e >= G.order) throw std::invalid_argument("separate_cosets: bad element");
  for (int e : y)
    if (e < 0 || e >= G.order) throw std::invalid_argument("separate_cosets: bad element");

  // Ground truth by brute force: same class iff some g conjugates x to y
  // componentwise.
  bool same = false;
  for (int g = 0; g < G.order && !same; ++g) {
    bool all = true;
    for (int i = 0; i < k && all; ++i) all = (G.conj(x[i], g) == y[i]);
    same = all;
  }

  auto irr = numeric_irreps(Gp, seed);
  std::vector<int> xe(k + 1, G.id), ye(k + 1, G.id);
  std::copy(x.begin(), x.end(), xe.begin() + 1);
  std::copy(y.begin(), y.end(), ye.begin() + 1);

  const double gap = 10 * 1e-9;
  std::vector<int> J(k + 1, 0);
  do {
    std::vector<UnitaryRep> factors;
    for (int j : J) factors.push_back(irr[j]);
    InvariantBasis B = invariant_vectors(factors);
    if (B.count() == 0) continue;
    CMat Mx = detail::tensor_at(factors, xe);
    CMat My = detail::tensor_at(factors, ye);
    CMat Px = B.vectors.adjoint() * (Mx * B.vectors);  // pairwise values
    CMat Py = B.vectors.adjoint() * (My * B.vectors);
    for (int uu = 0; uu < B.count(); ++uu)
      for (int vv = 0; vv < B.count(); ++vv)
        if (std::abs(Px(vv, uu) - Py(vv, uu)) > gap) {
          if (same)
            throw std::logic_error("separate_cosets: witness disagrees with brute force");
          Separation s;
          s.separated = true;
          s.witness_factors = J;
          s.u_index = uu;
          s.v_index = vv;
          s.at_x = Px(vv, uu);
          s.at_y = Py(vv, uu);
          return s;
        }
  } while (detail::next_tuple(J, static_cast<int>(irr.size())));

  if (!same)
    throw std::logic_error("separate_cosets: distinct cosets admit no witness");
  return Separation{};
}

// Wielandt count, both sides computed independently: the number of diagonal
// double cosets in G^{k+1} (equivalently, simultaneous-conjugation classes of
// k-tuples, counted by direct orbit enumeration) against the sum over
// (k+1)-tuples J of irreducibles of (dim of diagonal invariants in tensor_J)^2,
// the latter from character sums, rounded with a guard band.
inline std::pair<long long, long long> wielandt_check(const GroupPtr& Gp, int k,
                                                      std::uint64_t seed = kSplitSeed,
                                                      int cap = 200) {
  const FiniteGroup& G = *Gp;
  if (k < 1) throw std::invalid_argument("wielandt_check: k must be positive");
  long long points = 1;
  for (int i = 0; i < k; ++i) {
    points *= G.order;
    if (points > cap) throw std::invalid_argument("wielandt_check: |G|^k exceeds cap");
  }

  std::vector<char> seen(static_cast<std::size_t>(points), 0);
  std::vector<int> tup(k, 0), conj(k, 0);
  long long orbits = 0;
  for (long long idx = 0; idx < points; ++idx) {
    if (seen[static_cast<std::size_t>(idx)]) continue;
    ++orbits;
    long long rest = idx;
    for (int i = k - 1; i >= 0; --i) {
      tup[i] = static_cast<int>(rest % G.order);
      rest /= G.order;
    }
    for (int g = 0; g < G.order; ++g) {
      long long enc = 0;
      for (int i = 0; i < k; ++i) enc = enc * G.order + G.conj(tup[i], g);
      seen[static_cast<std::size_t>(enc)] = 1;
    }
  }

  auto irr = numeric_irreps(Gp, seed);
  std::vector<std::vector<std::complex<double>>> chi;
  for (const auto& r : irr) chi.push_back(r.character());

  long long msq = 0;
  std::vector<int> J(k + 1, 0);
  do {
    std::complex<double> acc = 0;
    for (int g = 0; g < G.order; ++g) {
      std::complex<double> prod = 1;
      for (int j : J) prod *= chi[static_cast<std::size_t>(j)][static_cast<std::size_t>(g)];
      acc += prod;
    }
    double m = acc.real() / G.order;
    long long mi = std::llround(m);
    if (std::abs(m - static_cast<double>(mi)) > 0.01 || std::abs(acc.imag() / G.order) > 0.01)
      throw std::runtime_error("wielandt_check: multiplicity rounding ambiguity");
    msq += mi * mi;
  } while (detail::next_tuple(J, static_cast<int>(irr.size())));

  return {orbits, msq};
}

}  // namespace braidsurf
