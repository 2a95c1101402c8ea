#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "braidsurf/group.hpp"

namespace braidsurf {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Fixed seed for the random splitting operator. Changing it reshuffles the
// numeric bases (not the dims or characters); fixtures assume this value.
inline constexpr std::uint64_t kSplitSeed = 2718281828ull;

struct UnitaryRep {
  GroupPtr group;
  int dim = 0;
  std::vector<CMat> mats;  // indexed by element
  double tol = 1e-9;

  const CMat& operator()(int g) const { return mats[g]; }

  std::vector<std::complex<double>> character() const {
    std::vector<std::complex<double>> chi(mats.size());
    for (std::size_t g = 0; g < mats.size(); ++g) chi[g] = mats[g].trace();
    return chi;
  }

  // (1/|G|) sum |chi(g)|^2; equals 1 exactly when irreducible.
  double commutant_dimension() const {
    double s = 0;
    for (const auto& m : mats) s += std::norm(m.trace());
    return s / static_cast<double>(mats.size());
  }
};

// Full homomorphy + unitarity defect, all pairs. Test helper; quadratic in |G|.
inline double rep_defect(const UnitaryRep& r) {
  const FiniteGroup& G = *r.group;
  double worst = 0;
  CMat eye = CMat::Identity(r.dim, r.dim);
  for (int a = 0; a < G.order; ++a) {
    worst = std::max(worst, (r.mats[a].adjoint() * r.mats[a] - eye).cwiseAbs().maxCoeff());
    for (int b = 0; b < G.order; ++b)
      worst = std::max(worst,
                       (r.mats[a] * r.mats[b] - r.mats[G.op(a, b)]).cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace detail {

// Columns of Q restricted from the regular representation. Right translation
// e_h -> e_{hg} gives Reg(g)(h,k) = [k = hg], so Reg(g)*Q permutes rows.
inline CMat reg_apply(const FiniteGroup& G, int g, const CMat& Q) {
  CMat out(Q.rows(), Q.cols());
  for (int h = 0; h < G.order; ++h) out.row(h) = Q.row(G.op(h, g));
  return out;
}

inline bool characters_match(const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-6) return false;
  return true;
}

}  // namespace detail

// Splits the regular representation by eigenspaces of a group-averaged random
// Hermitian operator. The averaged operator commutes with all right
// translations, so each eigenspace is a subrepresentation; for a generic
// sample every eigenspace is irreducible. Deterministic given the seed;
// failures at tolerance (accidental eigenvalue collisions) retry with the
// next seed, a bounded number of times.
inline std::vector<UnitaryRep> numeric_irreps(const GroupPtr& Gp,
                                              std::uint64_t seed = kSplitSeed,
                                              int cap = 200) {
  const FiniteGroup& G = *Gp;
  const int n = G.order;
  if (n > cap) throw std::invalid_argument("numeric_irreps: group order exceeds cap");

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    CMat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = std::complex<double>(unif(rng), unif(rng));
    CMat H = (A + A.adjoint()) / 2;

    // Average over the group: (Reg(g)^* H Reg(g))(a,b) = H(ag^-1, bg^-1);
    // summing over g^-1 is summing over g.
    CMat Hbar = CMat::Zero(n, n);
    for (int g = 0; g < n; ++g)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Hbar(a, b) += H(G.op(a, g), G.op(b, g));
    Hbar /= static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<CMat> es(Hbar);
    if (es.info() != Eigen::Success) continue;
    const auto& ev = es.eigenvalues();
    const CMat& vecs = es.eigenvectors();

    std::vector<UnitaryRep> found;
    bool ok = true;
    long long dimsq = 0;
    int start = 0;
    while (start < n && ok) {
      int stop = start + 1;
      while (stop < n && ev(stop) - ev(stop - 1) < 1e-6) ++stop;
      int d = stop - start;
      CMat Q = vecs.middleCols(start, d);

      UnitaryRep r;
      r.group = Gp;
      r.dim = d;
      r.mats.resize(n);
      CMat eye = CMat::Identity(d, d);
      for (int g = 0; g < n && ok; ++g) {
        CMat RQ = detail::reg_apply(G, g, Q);
        CMat M = Q.adjoint() * RQ;
        // eigenspaces of Hbar are invariant; a visible residual means the
        // cluster boundary cut through a degenerate eigenvalue
        if ((RQ - Q * M).cwiseAbs().maxCoeff() > 1e-8) ok = false;
        if ((M.adjoint() * M - eye).cwiseAbs().maxCoeff() > 1e-8) ok = false;
        r.mats[g] = std::move(M);
      }
      if (ok && std::abs(r.commutant_dimension() - 1.0) > 0.01) ok = false;
      if (ok) {
        auto chi = r.character();
        bool dup = false;
        for (const auto& prev : found)
          if (prev.dim == r.dim && detail::characters_match(prev.character(), chi)) {
            dup = true;
            break;
          }
        if (!dup) {
          dimsq += static_cast<long long>(d) * d;
          found.push_back(std::move(r));
        }
      }
      start = stop;
    }
    if (!ok || dimsq != n) continue;

    std::sort(found.begin(), found.end(), [](const UnitaryRep& a, const UnitaryRep& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      auto ca = a.character(), cb = b.character();
      for (std::size_t i = 0; i < ca.size(); ++i) {
        double ra = std::round(ca[i].real() * 1e6), rb = std::round(cb[i].real() * 1e6);
        if (ra != rb) return ra < rb;
        double ia = std::round(ca[i].imag() * 1e6), ib = std::round(cb[i].imag() * 1e6);
        if (ia != ib) return ia < ib;
      }
      return false;
    });
    return found;
  }
  throw std::runtime_error("numeric_irreps: splitting failed at tolerance, retries exhausted");
}

}  // namespace braidsurf
