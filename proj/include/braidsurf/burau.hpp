#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "braidsurf/braid.hpp"
#include "braidsurf/laurent.hpp"

namespace braidsurf {

// Dense square matrices over any commutative ring R with +, -, *, ==.
// Ring constants are derived from a passed-in multiplicative unit so that
// context-carrying scalars (finite field elements) work too.
template <class R>
using Mat = std::vector<std::vector<R>>;

template <class R>
Mat<R> mat_eye(int n, const R& one) {
  R zero = one - one;
  Mat<R> m(n, std::vector<R>(n, zero));
  for (int i = 0; i < n; ++i) m[i][i] = one;
  return m;
}

template <class R>
Mat<R> mat_mul(const Mat<R>& a, const Mat<R>& b) {
  int n = static_cast<int>(a.size());
  R zero = a[0][0] - a[0][0];
  Mat<R> r(n, std::vector<R>(n, zero));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const R& aik = a[i][k];
      if (aik == zero) continue;
      for (int j = 0; j < n; ++j) r[i][j] = r[i][j] + aik * b[k][j];
    }
  return r;
}

// Reduced Burau image of a single generator, (n-1)x(n-1); n >= 2.
// Convention: words map to plain matrix products left-to-right, and the
// companion unreduced form below turns into permutation matrices at t = 1.
template <class R>
Mat<R> reduced_burau_gen(int n, int letter, const R& t, const R& tinv, const R& one) {
  int i = std::abs(letter);
  if (n < 2 || i < 1 || i > n - 1) throw std::invalid_argument("burau: bad generator");
  Mat<R> m = mat_eye(n - 1, one);
  if (letter > 0) {
    m[i - 1][i - 1] = one - one - t;  // -t
    if (i >= 2) m[i - 2][i - 1] = t;
    if (i <= n - 2) m[i][i - 1] = one;
  } else {
    m[i - 1][i - 1] = one - one - tinv;
    if (i >= 2) m[i - 2][i - 1] = one;
    if (i <= n - 2) m[i][i - 1] = tinv;
  }
  return m;
}

template <class R>
Mat<R> reduced_burau(const BraidWord& w, const R& t, const R& tinv, const R& one) {
  Mat<R> m = mat_eye(w.n - 1, one);
  for (int x : w.letters) m = mat_mul(m, reduced_burau_gen(w.n, x, t, tinv, one));
  return m;
}

// Unreduced companion form, n x n; at t = 1 this is the permutation matrix
// P[x][perm(x)] = 1 of the underlying permutation.
template <class R>
Mat<R> unreduced_burau_gen(int n, int letter, const R& t, const R& tinv, const R& one) {
  int i = std::abs(letter);
  if (i < 1 || i > n - 1) throw std::invalid_argument("burau: bad generator");
  Mat<R> m = mat_eye(n, one);
  R zero = one - one;
  if (letter > 0) {
    m[i - 1][i - 1] = one - t;
    m[i - 1][i] = t;
    m[i][i - 1] = one;
    m[i][i] = zero;
  } else {
    m[i - 1][i - 1] = zero;
    m[i - 1][i] = one;
    m[i][i - 1] = tinv;
    m[i][i] = one - tinv;
  }
  return m;
}

template <class R>
Mat<R> unreduced_burau(const BraidWord& w, const R& t, const R& tinv, const R& one) {
  Mat<R> m = mat_eye(w.n, one);
  for (int x : w.letters) m = mat_mul(m, unreduced_burau_gen(w.n, x, t, tinv, one));
  return m;
}

inline Mat<std::complex<double>> reduced_burau_numeric(const BraidWord& w,
                                                       std::complex<double> t) {
  if (std::abs(t) < 1e-12) throw std::invalid_argument("burau: t must be invertible");
  return reduced_burau(w, t, 1.0 / t, std::complex<double>(1.0));
}

inline Mat<Laurent> reduced_burau_symbolic(const BraidWord& w) {
  return reduced_burau(w, Laurent::t_power(1), Laurent::t_power(-1), Laurent(1));
}

inline Mat<Laurent> unreduced_burau_symbolic(const BraidWord& w) {
  return unreduced_burau(w, Laurent::t_power(1), Laurent::t_power(-1), Laurent(1));
}

// det by cofactor expansion; matrices here are at most 5x5.
template <class R>
R mat_det(const Mat<R>& m, const R& one) {
  int n = static_cast<int>(m.size());
  if (n == 0) return one;
  if (n == 1) return m[0][0];
  R zero = one - one, det = zero;
  for (int j = 0; j < n; ++j) {
    if (m[0][j] == zero) continue;
    Mat<R> sub(n - 1, std::vector<R>(n - 1, zero));
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c)
        if (c != j) sub[r - 1][cc++] = m[r][c];
    }
    R term = m[0][j] * mat_det(sub, one);
    det = j % 2 == 0 ? det + term : det - term;
  }
  return det;
}

}  // namespace braidsurf
