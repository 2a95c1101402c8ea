#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "braidsurf/burau.hpp"

namespace braidsurf {

struct SquierFormNotPositive : std::runtime_error {
  double theta;
  explicit SquierFormNotPositive(double th)
      : std::runtime_error("Squier form not positive definite at theta=" + std::to_string(th)),
        theta(th) {}
};

// Invariant Hermitian form for reduced Burau on three strands at t =
// exp(i theta): H = [[2cos(theta/2), s],[conj(s), 2cos(theta/2)]] with
// s = exp(i theta/2). Found as the nullspace of the invariance constraints;
// positivity is checked numerically at use sites, not assumed.
inline Eigen::Matrix2cd squier_form(double theta) {
  std::complex<double> s = std::polar(1.0, theta / 2);
  Eigen::Matrix2cd H;
  H << 2 * std::cos(theta / 2), s, std::conj(s), 2 * std::cos(theta / 2);
  return H;
}

inline bool squier_positive(double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(squier_form(theta));
  return es.eigenvalues().minCoeff() > 1e-9;
}

// Unitarized Burau on three strands, normalized to determinant one by a
// writhe-character twist: U(w) = lambda^writhe(w) * P rho(w) P^-1 with
// P = H^{1/2} and lambda = exp(-i(theta+pi)/2), killing det rho(sigma) = -t.
inline Eigen::Matrix2cd burau_su2(const BraidWord& w, double theta) {
  if (w.n != 3) throw std::invalid_argument("burau_su2: needs three strands");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(squier_form(theta));
  if (es.eigenvalues().minCoeff() <= 1e-9) throw SquierFormNotPositive(theta);
  Eigen::Vector2d ev = es.eigenvalues();
  Eigen::Matrix2cd V = es.eigenvectors();
  Eigen::Matrix2cd P = V * ev.cwiseSqrt().asDiagonal() * V.adjoint();
  Eigen::Matrix2cd Pinv = V * ev.cwiseSqrt().cwiseInverse().asDiagonal() * V.adjoint();

  auto rho = reduced_burau_numeric(w, std::polar(1.0, theta));
  Eigen::Matrix2cd R;
  R << rho[0][0], rho[0][1], rho[1][0], rho[1][1];
  std::complex<double> lambda = std::polar(1.0, -(theta + M_PI) / 2);
  return std::pow(lambda, writhe(w)) * (P * R * Pinv);
}

}  // namespace braidsurf
