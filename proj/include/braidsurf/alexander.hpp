#pragma once

#include "braidsurf/burau.hpp"

namespace braidsurf {

// Alexander polynomial of the closure of w, which must be a knot: the
// underlying permutation is a single n-cycle. Uses
//   det(rho(w) - I) = +/- t^a (1 + t + ... + t^{n-1}) Delta(t)
// with exact Laurent arithmetic, normalized so the lowest term is a positive
// constant. The unknot gives 1.
inline Laurent alexander_poly(const BraidWord& w) {
  if (w.n == 1) return Laurent(1);
  Permutation p = underlying_permutation(w);
  if (p.cycles().size() != 1 || static_cast<int>(p.cycles()[0].size()) != w.n)
    throw std::invalid_argument("alexander_poly: closure is not a knot");
  Mat<Laurent> m = reduced_burau_symbolic(w);
  for (int i = 0; i < w.n - 1; ++i) m[i][i] = m[i][i] - Laurent(1);
  Laurent det = mat_det(m, Laurent(1));
  Laurent den;
  for (int k = 0; k < w.n; ++k) den = den + Laurent::t_power(k);
  auto q = det.divide(den);
  if (!q) throw std::logic_error("alexander_poly: determinant not divisible");
  return q->normalized();
}

}  // namespace braidsurf
