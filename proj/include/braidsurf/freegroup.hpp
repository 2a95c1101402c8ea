#pragma once

#include <cstdlib>
#include <functional>
#include <vector>

namespace braidsurf {

// Free-group words: letters are nonzero ints, -x is the inverse of x.
// All helpers keep words freely reduced; callers may assume reduced output
// and must hand in reduced input (fw_reduce repairs arbitrary letter lists).
using Word = std::vector<int>;

inline void fw_append(Word& w, int letter) {
  if (!w.empty() && w.back() == -letter)
    w.pop_back();
  else
    w.push_back(letter);
}

inline Word fw_reduce(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (int x : w) fw_append(r, x);
  return r;
}

inline Word fw_mul(Word a, const Word& b) {
  for (int x : b) fw_append(a, x);
  return a;
}

inline Word fw_inv(const Word& a) {
  Word r(a.rbegin(), a.rend());
  for (int& x : r) x = -x;
  return r;
}

// u w u^-1
inline Word fw_conj(const Word& u, const Word& w) { return fw_mul(fw_mul(u, w), fw_inv(u)); }

// a b a^-1 b^-1
inline Word fw_comm(const Word& a, const Word& b) {
  return fw_mul(fw_mul(a, b), fw_mul(fw_inv(a), fw_inv(b)));
}

inline Word fw_pow(const Word& a, int e) {
  Word base = e < 0 ? fw_inv(a) : a;
  Word r;
  for (int i = 0; i < std::abs(e); ++i) r = fw_mul(r, base);
  return r;
}

inline Word fw_cyclic_reduce(Word w) {
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

// Applies an endomorphism given by generator images: letter g > 0 maps to
// image(g), letter -g to its inverse.
inline Word fw_map(const Word& w, const std::function<Word(int)>& image) {
  Word r;
  for (int x : w) {
    Word piece = image(std::abs(x));
    if (x < 0) piece = fw_inv(piece);
    for (int y : piece) fw_append(r, y);
  }
  return r;
}

}  // namespace braidsurf
