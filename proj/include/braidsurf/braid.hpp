#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "braidsurf/freegroup.hpp"
#include "braidsurf/perm.hpp"

namespace braidsurf {

// Word in the standard braid generators: letter +i / -i is a positive /
// negative crossing of the strands at positions i, i+1 (1-based). Words act
// left-to-right, like every product in this library.
struct BraidWord {
  int n = 1;
  Word letters;

  BraidWord() = default;
  BraidWord(int strands, Word w) : n(strands), letters(std::move(w)) {
    if (n < 1) throw std::invalid_argument("BraidWord: need at least one strand");
    for (int x : letters)
      if (x == 0 || std::abs(x) >= n)
        throw std::invalid_argument("BraidWord: letter out of range");
  }

  int length() const { return static_cast<int>(letters.size()); }
};

inline BraidWord bw_concat(const BraidWord& a, const BraidWord& b) {
  if (a.n != b.n) throw std::invalid_argument("braid concat: strand mismatch");
  Word w = a.letters;
  w.insert(w.end(), b.letters.begin(), b.letters.end());
  return BraidWord(a.n, std::move(w));
}

inline BraidWord bw_inverse(const BraidWord& a) {
  Word w(a.letters.rbegin(), a.letters.rend());
  for (int& x : w) x = -x;
  return BraidWord(a.n, std::move(w));
}

// u a u^-1
inline BraidWord bw_conj(const BraidWord& u, const BraidWord& a) {
  return bw_concat(bw_concat(u, a), bw_inverse(u));
}

inline int writhe(const BraidWord& w) {
  int e = 0;
  for (int x : w.letters) e += x > 0 ? 1 : -1;
  return e;
}

// Maps start position to end position of each strand.
inline Permutation underlying_permutation(const BraidWord& w) {
  Permutation p(w.n);
  for (int x : w.letters) {
    int i = std::abs(x) - 1;
    p = p * Permutation::transposition(w.n, i, i + 1);
  }
  return p;
}

// Signed crossing counts per unordered strand pair, strands named by their
// start positions. cross[pair_index(a,b)] has the same parity as "the strand
// pair {a,b} ends in flipped order".
inline int pair_index(int n, int a, int b) {
  if (a > b) std::swap(a, b);
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

struct CrossingData {
  Permutation perm;
  std::vector<long long> cross;  // length n(n-1)/2
};

inline CrossingData crossing_data(const BraidWord& w) {
  int n = w.n;
  std::vector<int> at(n);  // at[pos] = strand currently at pos
  for (int i = 0; i < n; ++i) at[i] = i;
  std::vector<long long> cross(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  for (int x : w.letters) {
    int i = std::abs(x) - 1;
    cross[pair_index(n, at[i], at[i + 1])] += x > 0 ? 1 : -1;
    std::swap(at[i], at[i + 1]);
  }
  // at = final arrangement; strand s ends where at[pos] == s
  std::vector<int> img(n);
  for (int pos = 0; pos < n; ++pos) img[at[pos]] = pos;
  return {Permutation(std::move(img)), std::move(cross)};
}

}  // namespace braidsurf
