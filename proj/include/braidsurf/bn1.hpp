#pragma once

#include <stdexcept>
#include <vector>

#include "braidsurf/braid.hpp"
#include "braidsurf/perm.hpp"

namespace braidsurf {

// Element of the quotient of the braid group by the commutator subgroup of
// the pure braid group: a permutation plus an integer vector indexed by
// unordered strand pairs. The value (lk, perm) denotes (pure part) * (section
// of perm), where the section is the positive permutation braid and pure
// parts carry half the signed pair crossing counts.
struct AbBraid {
  int n = 1;
  Permutation perm;
  std::vector<long long> lk;

  AbBraid() : perm(1), lk() {}
  AbBraid(int strands, Permutation p, std::vector<long long> v)
      : n(strands), perm(std::move(p)), lk(std::move(v)) {
    if (perm.degree() != n || lk.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
      throw std::invalid_argument("AbBraid: shape mismatch");
  }

  static AbBraid identity(int n) {
    return AbBraid(n, Permutation(n), std::vector<long long>(n * (n - 1) / 2, 0));
  }

  bool is_identity() const {
    if (!perm.is_identity()) return false;
    for (long long v : lk)
      if (v) return false;
    return true;
  }

  bool operator==(const AbBraid& o) const = default;
};

// Conjugation action of a permutation on pure-part vectors:
// (act_s v)_{ab} = v_{s(a) s(b)}.
inline std::vector<long long> ab_act(const Permutation& s, const std::vector<long long>& v) {
  int n = s.degree();
  std::vector<long long> r(v.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) r[pair_index(n, a, b)] = v[pair_index(n, s(a), s(b))];
  return r;
}

// Factor set of the positive-permutation-braid section. A pair contributes
// exactly when it crosses in both section braids along the composite.
inline std::vector<long long> ab_kappa(const Permutation& s, const Permutation& t) {
  int n = s.degree();
  std::vector<long long> k(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (s.inverts(a, b) && t.inverts(s(a), s(b))) k[pair_index(n, a, b)] = 1;
  return k;
}

inline AbBraid ab_mul(const AbBraid& x, const AbBraid& y) {
  if (x.n != y.n) throw std::invalid_argument("AbBraid: strand mismatch");
  std::vector<long long> v = ab_act(x.perm, y.lk);
  std::vector<long long> kap = ab_kappa(x.perm, y.perm);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += x.lk[i] + kap[i];
  return AbBraid(x.n, x.perm * y.perm, std::move(v));
}

inline AbBraid ab_inv(const AbBraid& x) {
  Permutation si = x.perm.inverse();
  std::vector<long long> kap = ab_kappa(x.perm, si);
  std::vector<long long> w(x.lk.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -x.lk[i] - kap[i];
  return AbBraid(x.n, si, ab_act(si, w));
}

inline AbBraid ab_pow(const AbBraid& x, long long e) {
  AbBraid base = e < 0 ? ab_inv(x) : x;
  AbBraid r = AbBraid::identity(x.n);
  for (long long i = 0, m = e < 0 ? -e : e; i < m; ++i) r = ab_mul(r, base);
  return r;
}

inline AbBraid ab_section(const Permutation& s) {
  int n = s.degree();
  return AbBraid(n, s, std::vector<long long>(n * (n - 1) / 2, 0));
}

inline AbBraid abelianize(const BraidWord& w) {
  CrossingData cd = crossing_data(w);
  int n = w.n;
  std::vector<long long> u(cd.cross.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int i = pair_index(n, a, b);
      long long c = cd.cross[i] - (cd.perm.inverts(a, b) ? 1 : 0);
      if (c % 2 != 0) throw std::logic_error("abelianize: crossing parity violated");
      u[i] = c / 2;
    }
  return AbBraid(n, cd.perm, std::move(u));
}

// Positive permutation braid realizing s: adjacent swaps from a bubble sort
// of the image vector, in recorded order. Each pair crosses at most once.
inline BraidWord section_word(const Permutation& s) {
  int n = s.degree();
  std::vector<int> arr(s.images());
  Word w;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j + 1 < n; ++j)
      if (arr[j] > arr[j + 1]) {
        std::swap(arr[j], arr[j + 1]);
        w.push_back(j + 1);
        moved = true;
      }
  }
  return BraidWord(n, std::move(w));
}

}  // namespace braidsurf
