#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "braidsurf/braid.hpp"
#include "braidsurf/squier.hpp"
#include "braidsurf/su2.hpp"

namespace braidsurf {

struct SpectralRadiusTooLarge : std::runtime_error {
  double radius;
  explicit SpectralRadiusTooLarge(double r)
      : std::runtime_error("coupling matrix spectral radius " + std::to_string(r) +
                           " is not below 1"),
        radius(r) {}
};

// Convention for the complement blocks. Transpose (equivalently, conjugate
// of the inverse on SU(2)) is the one under which the determinant is fully
// bi-invariant and matches the invariant-vector series: J A^T J = -A^{-1},
// so each coupling round trip contributes A_i A_j^{-1}. The entrywise
// conjugate (= inverse transpose here) is kept as a knob for comparison; it
// still passes plain conjugation invariance but not the series check.
enum class PerpConvention { TransposeBlocks, ConjugateBlocks };

struct NeretinOptions {
  PerpConvention perp = PerpConvention::TransposeBlocks;
#ifdef NDEBUG
  bool check_invariance = false;
#else
  bool check_invariance = true;
#endif
  double invariance_tol = 1e-9;
};

namespace detail {

inline Eigen::MatrixXcd neretin_core(const std::vector<SU2Element>& A,
                                     const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                     PerpConvention perp) {
  int k = static_cast<int>(A.size());
  Eigen::Matrix2cd J;
  J << 0, 1, -1, 0;

  Eigen::MatrixXcd Ab = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
  Eigen::MatrixXcd Ap = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
  Eigen::MatrixXcd Xb = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
  Eigen::MatrixXcd Yb = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    Ab.block<2, 2>(2 * i, 2 * i) = A[i].m;
    if (perp == PerpConvention::TransposeBlocks)
      Ap.block<2, 2>(2 * i, 2 * i) = A[i].m.transpose();
    else
      Ap.block<2, 2>(2 * i, 2 * i) = A[i].m.conjugate();
    for (int j = 0; j < k; ++j) {
      Xb.block<2, 2>(2 * i, 2 * j) = X(i, j) * J;
      Yb.block<2, 2>(2 * i, 2 * j) = Y(i, j) * J;
    }
  }
  return Ab * Xb * Ap * Yb;
}

inline void check_coupling(const Eigen::MatrixXd& X, int k, const char* name) {
  if (X.rows() != k || X.cols() != k)
    throw std::invalid_argument(std::string("neretin_phi2: ") + name + " must be k x k");
  for (int i = 0; i < k; ++i) {
    if (X(i, i) != 0)
      throw std::invalid_argument(std::string("neretin_phi2: ") + name +
                                  " must have zero diagonal (no self-coupling)");
    for (int j = 0; j < k; ++j)
      if (X(i, j) != X(j, i))
        throw std::invalid_argument(std::string("neretin_phi2: ") + name +
                                    " must be symmetric");
  }
}

}  // namespace detail

// det(1 - A X A_perp Y)^{-1}: the square of the closed form for the
// generating function of the diagonal SU(2) tensor invariants, evaluated at
// the tuple A with pair couplings X, Y. Under the transpose convention it
// is invariant under A_i -> g A_i h for any fixed g, h: congruence by an
// SL(2) element fixes the symplectic coupling blocks, so the conjugating
// factors cancel inside the determinant.
inline std::complex<double> neretin_phi2(const std::vector<SU2Element>& A,
                                         const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                         const NeretinOptions& opt = {}) {
  if (A.empty()) throw std::invalid_argument("neretin_phi2: empty tuple");
  int k = static_cast<int>(A.size());
  detail::check_coupling(X, k, "X");
  detail::check_coupling(Y, k, "Y");

  Eigen::MatrixXcd M = detail::neretin_core(A, X, Y, opt.perp);
  double radius = 0;
  for (auto ev : M.eigenvalues()) radius = std::max(radius, std::abs(ev));
  if (radius >= 1) throw SpectralRadiusTooLarge(radius);

  Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(2 * k, 2 * k);
  std::complex<double> value = 1.0 / (one - M).determinant();

  if (opt.check_invariance) {
    std::mt19937_64 rng(0xabcdefULL);
    SU2Element g = random_su2(rng);
    std::vector<SU2Element> Ac;
    Ac.reserve(A.size());
    for (const auto& a : A)
      Ac.push_back(SU2Element(g.m * a.m * g.m.adjoint()));
    Eigen::MatrixXcd Mc = detail::neretin_core(Ac, X, Y, opt.perp);
    std::complex<double> vc = 1.0 / (one - Mc).determinant();
    if (std::abs(vc - value) > opt.invariance_tol)
      throw std::logic_error("neretin_phi2: complement convention breaks conjugation invariance");
  }
  return value;
}

// Pullback along the unitarized Burau representation on three strands:
// the tuple of braid words maps to SU(2) and the determinant form is
// evaluated there. Constant on simultaneous-conjugation classes of tuples.
inline std::complex<double> phi2_burau(const std::vector<BraidWord>& words, double theta,
                                       const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                       const NeretinOptions& opt = {}) {
  if (words.empty()) throw std::invalid_argument("phi2_burau: empty tuple");
  std::vector<SU2Element> A;
  A.reserve(words.size());
  for (const auto& w : words) {
    if (w.n != 3) throw std::invalid_argument("phi2_burau: braid words must have three strands");
    A.push_back(SU2Element(burau_su2(w, theta)));
  }
  return neretin_phi2(A, X, Y, opt);
}

}  // namespace braidsurf
