#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "braidsurf/spherical.hpp"

namespace braidsurf {

struct SU2Element {
  Eigen::Matrix2cd m;

  explicit SU2Element(const Eigen::Matrix2cd& g) : m(g) {
    double u = (g.adjoint() * g - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (u > 1e-10 || std::abs(g.determinant() - std::complex<double>(1)) > 1e-10)
      throw std::invalid_argument("SU2Element: matrix is not special unitary");
  }

  static SU2Element identity() { return SU2Element(Eigen::Matrix2cd::Identity()); }
};

inline SU2Element random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::complex<double> a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng));
  double r = std::sqrt(std::norm(a) + std::norm(b));
  a /= r;
  b /= r;
  Eigen::Matrix2cd g;
  g << a, b, -std::conj(b), std::conj(a);
  return SU2Element(g);
}

namespace detail {

// Exact rationals for the kernel computation; intermediate products go
// through 128 bits and anything escaping 64 bits throws rather than lies.
struct Frac {
  long long n = 0, d = 1;

  static long long narrowed(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
      throw std::overflow_error("su2_invariant_basis: exact arithmetic overflow");
    return static_cast<long long>(v);
  }

  static Frac make(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("Frac: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    return Frac{narrowed(n), narrowed(d)};
  }

  bool zero() const { return n == 0; }
  Frac operator+(const Frac& o) const {
    return make(static_cast<__int128>(n) * o.d + static_cast<__int128>(o.n) * d,
                static_cast<__int128>(d) * o.d);
  }
  Frac operator*(const Frac& o) const {
    return make(static_cast<__int128>(n) * o.n, static_cast<__int128>(d) * o.d);
  }
  Frac operator-() const { return Frac{-n, d}; }
  Frac inverse() const { return make(d, n); }
};

// Reduced row echelon over Q; returns a kernel basis with denominators
// cleared to coprime integers.
inline std::vector<std::vector<long long>> frac_kernel(std::vector<std::vector<Frac>> M,
                                                       int cols) {
  int rows = static_cast<int>(M.size());
  std::vector<int> pivot_of_col(cols, -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (!M[i][c].zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(M[r], M[sel]);
    Frac inv = M[r][c].inverse();
    for (int j = c; j < cols; ++j) M[r][j] = M[r][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c].zero()) continue;
      Frac f = -M[i][c];
      for (int j = c; j < cols; ++j) M[i][j] = M[i][j] + f * M[r][j];
    }
    pivot_of_col[c] = r++;
  }

  std::vector<std::vector<long long>> basis;
  for (int c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<Frac> v(cols, Frac{0, 1});
    v[c] = Frac{1, 1};
    for (int c2 = 0; c2 < cols; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = -M[pivot_of_col[c2]][c];
    long long lcm = 1;
    for (const auto& f : v) {
      long long x = lcm, y = f.d;
      while (y) {
        long long t = x % y;
        x = y;
        y = t;
      }
      lcm = Frac::narrowed(static_cast<__int128>(lcm) / x * f.d);
    }
    std::vector<long long> iv(cols);
    long long g = 0;
    for (int j = 0; j < cols; ++j) {
      iv[j] = Frac::narrowed(static_cast<__int128>(v[j].n) * (lcm / v[j].d));
      long long a = std::abs(iv[j]), b = g;
      while (b) {
        long long t = a % b;
        a = b;
        b = t;
      }
      g = a == 0 ? g : a;
    }
    if (g > 1)
      for (auto& x : iv) x /= g;
    basis.push_back(std::move(iv));
  }
  return basis;
}

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace detail

// Spin-j representation (two_j = 2j) on the normalized monomial basis
// e_t = x^t y^{2j-t} / sqrt(t!(2j-t)!), t = 0..2j. The group substitutes
// row vectors, (rho(g)p)(v) = p(v g), so rho(gh) = rho(g) rho(h); the
// normalization makes every rho(g) unitary.
inline CMat su2_rep(int two_j, const SU2Element& g) {
  if (two_j < 0) throw std::invalid_argument("su2_rep: negative weight");
  int dim = two_j + 1;
  std::complex<double> a = g.m(0, 0), b = g.m(0, 1), c = g.m(1, 0), d = g.m(1, 1);

  // binomial table
  std::vector<std::vector<double>> bin(dim, std::vector<double>(dim, 0));
  for (int i = 0; i < dim; ++i) {
    bin[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      bin[i][j] = bin[i - 1][j - 1] + (j <= i - 1 ? bin[i - 1][j] : 0);
  }

  CMat R = CMat::Zero(dim, dim);
  for (int t = 0; t <= two_j; ++t) {
    // x^t y^{2j-t} |-> (xa+yc)^t (xb+yd)^{2j-t}, collected by x-degree s
    for (int p = 0; p <= t; ++p)
      for (int q = 0; q <= two_j - t; ++q) {
        int s = p + q;
        std::complex<double> coef = bin[t][p] * bin[two_j - t][q] * std::pow(a, p) *
                                    std::pow(c, t - p) * std::pow(b, q) *
                                    std::pow(d, two_j - t - q);
        R(s, t) += coef;
      }
  }
  for (int s = 0; s <= two_j; ++s)
    for (int t = 0; t <= two_j; ++t) {
      double lg = 0.5 * (detail::log_factorial(s) + detail::log_factorial(two_j - s) -
                         detail::log_factorial(t) - detail::log_factorial(two_j - t));
      R(s, t) *= std::exp(lg);
    }
  return R;
}

// Diagonal invariants of V_{j_1} x ... x V_{j_k}: the common kernel of the
// raising, lowering and weight operators, computed exactly over Q in the
// monomial basis, then orthonormalized in the unitary normalization.
// The weight operator cuts the problem to weight-zero monomials; a
// weight-zero vector killed by the raising operator generates a trivial
// subrepresentation, but the lowering rows are kept so the kernel really is
// the intersection of all three.
inline InvariantBasis su2_invariant_basis(const std::vector<double>& spins) {
  if (spins.empty() || spins.size() > 4)
    throw std::invalid_argument("su2_invariant_basis: need 1..4 factors");
  int k = static_cast<int>(spins.size());
  std::vector<int> n(k);  // two_j per factor
  for (int i = 0; i < k; ++i) {
    double two = 2 * spins[i];
    n[i] = static_cast<int>(std::llround(two));
    if (std::abs(two - n[i]) > 1e-9 || n[i] < 0 || spins[i] > 3)
      throw std::invalid_argument("su2_invariant_basis: spins must be half-integers in [0,3]");
  }

  int D = 1, N = 0;
  for (int i = 0; i < k; ++i) {
    D *= n[i] + 1;
    N += n[i];
  }

  InvariantBasis B;
  B.dim = D;
  for (int i = 0; i < k; ++i) B.factor_dims.push_back(n[i] + 1);
  if (N % 2 != 0) {
    B.vectors = CMat::Zero(D, 0);
    return B;
  }

  // enumerate monomials by total x-degree; invariants live at degree N/2
  std::vector<std::vector<int>> w0;
  std::map<std::vector<int>, int> up_index, down_index;
  {
    std::vector<int> t(k, 0);
    for (;;) {
      int deg = 0;
      for (int i = 0; i < k; ++i) deg += t[i];
      if (deg == N / 2) w0.push_back(t);
      if (deg == N / 2 + 1) up_index.emplace(t, static_cast<int>(up_index.size()));
      if (deg == N / 2 - 1) down_index.emplace(t, static_cast<int>(down_index.size()));
      int i = k - 1;
      while (i >= 0 && t[i] == n[i]) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }

  int C = static_cast<int>(w0.size());
  int RU = static_cast<int>(up_index.size()), RD = static_cast<int>(down_index.size());
  std::vector<std::vector<detail::Frac>> M(RU + RD,
                                           std::vector<detail::Frac>(C, detail::Frac{0, 1}));
  for (int col = 0; col < C; ++col) {
    std::vector<int> t = w0[col];
    for (int s = 0; s < k; ++s) {
      if (t[s] < n[s]) {  // raising on factor s: coefficient 2j - t
        ++t[s];
        M[up_index.at(t)][col] = M[up_index.at(t)][col] + detail::Frac{n[s] - (t[s] - 1), 1};
        --t[s];
      }
      if (t[s] > 0) {  // lowering: coefficient t
        --t[s];
        M[RU + down_index.at(t)][col] = M[RU + down_index.at(t)][col] + detail::Frac{t[s] + 1, 1};
        ++t[s];
      }
    }
  }

  auto kernel = detail::frac_kernel(std::move(M), C);

  // monomial coordinates -> unitary normalization, then orthonormalize
  CMat V = CMat::Zero(D, static_cast<Eigen::Index>(kernel.size()));
  for (std::size_t b = 0; b < kernel.size(); ++b)
    for (int col = 0; col < C; ++col) {
      if (kernel[b][col] == 0) continue;
      const std::vector<int>& t = w0[col];
      long long flat = 0;
      double lg = 0;
      for (int i = 0; i < k; ++i) {
        flat = flat * (n[i] + 1) + t[i];
        lg += 0.5 * (detail::log_factorial(t[i]) + detail::log_factorial(n[i] - t[i]));
      }
      V(flat, static_cast<Eigen::Index>(b)) = kernel[b][col] * std::exp(lg);
    }
  if (kernel.empty()) {
    B.vectors = CMat::Zero(D, 0);
    return B;
  }
  Eigen::HouseholderQR<CMat> qr(V);
  B.vectors = qr.householderQ() * CMat::Identity(D, static_cast<Eigen::Index>(kernel.size()));
  return B;
}

}  // namespace braidsurf
