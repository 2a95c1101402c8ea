#pragma once

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace braidsurf {

using IntMat = std::vector<std::vector<long long>>;

inline IntMat int_identity(int n) {
  IntMat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat int_mul(const IntMat& a, const IntMat& b) {
  int r = static_cast<int>(a.size());
  int k = r ? static_cast<int>(a[0].size()) : 0;
  int c = b.empty() ? 0 : static_cast<int>(b[0].size());
  IntMat m(r, std::vector<long long>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < k; ++t) {
      if (!a[i][t]) continue;
      for (int j = 0; j < c; ++j) m[i][j] += a[i][t] * b[t][j];
    }
  return m;
}

// D = U A V with U, V unimodular, D diagonal and each diagonal entry
// dividing the next.
struct SmithForm {
  int rows = 0, cols = 0, rank = 0;
  IntMat U, V, D;
  std::vector<long long> invariant_factors;
};

inline SmithForm smith_form(IntMat A) {
  SmithForm f;
  f.rows = static_cast<int>(A.size());
  f.cols = f.rows ? static_cast<int>(A[0].size()) : 0;
  f.U = int_identity(f.rows);
  f.V = int_identity(f.cols);
  f.D = std::move(A);
  IntMat& D = f.D;

  auto row_axpy = [&](int dst, int src, long long q) {  // row dst -= q * row src
    for (int j = 0; j < f.cols; ++j) D[dst][j] -= q * D[src][j];
    for (int j = 0; j < f.rows; ++j) f.U[dst][j] -= q * f.U[src][j];
  };
  auto col_axpy = [&](int dst, int src, long long q) {
    for (int i = 0; i < f.rows; ++i) D[i][dst] -= q * D[i][src];
    for (int i = 0; i < f.cols; ++i) f.V[i][dst] -= q * f.V[i][src];
  };
  auto row_swap = [&](int i, int j) {
    std::swap(D[i], D[j]);
    std::swap(f.U[i], f.U[j]);
  };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < f.rows; ++r) std::swap(D[r][i], D[r][j]);
    for (int r = 0; r < f.cols; ++r) std::swap(f.V[r][i], f.V[r][j]);
  };

  int m = std::min(f.rows, f.cols);
  for (int t = 0; t < m; ++t) {
    for (;;) {
      // smallest-magnitude nonzero entry of the trailing block to (t,t)
      int pi = -1, pj = -1;
      for (int i = t; i < f.rows; ++i)
        for (int j = t; j < f.cols; ++j)
          if (D[i][j] && (pi < 0 || std::llabs(D[i][j]) < std::llabs(D[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        f.rank = t;
        goto done;
      }
      if (pi != t) row_swap(pi, t);
      if (pj != t) col_swap(pj, t);

      bool clean = true;
      for (int i = t + 1; i < f.rows; ++i)
        if (D[i][t]) {
          row_axpy(i, t, D[i][t] / D[t][t]);
          if (D[i][t]) clean = false;  // remainder left: smaller pivot exists
        }
      for (int j = t + 1; j < f.cols; ++j)
        if (D[t][j]) {
          col_axpy(j, t, D[t][j] / D[t][t]);
          if (D[t][j]) clean = false;
        }
      if (!clean) continue;

      // divisibility chain: fold an offending row in and redo
      int bi = -1, bj = -1;
      for (int i = t + 1; i < f.rows && bi < 0; ++i)
        for (int j = t + 1; j < f.cols; ++j)
          if (D[i][j] % D[t][t]) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;
      row_axpy(t, bi, -1);
    }
    if (D[t][t] < 0) {
      for (int j = 0; j < f.cols; ++j) D[t][j] = -D[t][j];
      for (int j = 0; j < f.rows; ++j) f.U[t][j] = -f.U[t][j];
    }
    f.rank = t + 1;
  }
done:
  for (int t = 0; t < f.rank; ++t) f.invariant_factors.push_back(f.D[t][t]);
  return f;
}

// One integer solution of A x = b, if any.
inline std::optional<std::vector<long long>> solve_from(const SmithForm& f,
                                                        const std::vector<long long>& b) {
  if (static_cast<int>(b.size()) != f.rows) throw std::invalid_argument("solve: rhs size");
  std::vector<long long> ub(f.rows, 0);
  for (int i = 0; i < f.rows; ++i)
    for (int j = 0; j < f.rows; ++j) ub[i] += f.U[i][j] * b[j];
  std::vector<long long> z(f.cols, 0);
  for (int i = 0; i < f.rows; ++i) {
    if (i < f.rank) {
      if (ub[i] % f.D[i][i]) return std::nullopt;
      z[i] = ub[i] / f.D[i][i];
    } else if (ub[i]) {
      return std::nullopt;
    }
  }
  std::vector<long long> x(f.cols, 0);
  for (int i = 0; i < f.cols; ++i)
    for (int j = 0; j < f.cols; ++j) x[i] += f.V[i][j] * z[j];
  return x;
}

inline std::optional<std::vector<long long>> solve_integer(const IntMat& A,
                                                           const std::vector<long long>& b) {
  return solve_from(smith_form(A), b);
}

}  // namespace braidsurf
