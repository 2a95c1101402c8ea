#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace braidsurf {

// Permutation of {0,...,n-1} stored as its image vector.
//
// Every product in this library composes left-to-right: (p*q)(x) = q(p(x)),
// i.e. p acts first. Braid words, group elements and matrix products all
// follow the same convention. Printed/serialized forms are 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
      if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
        throw std::invalid_argument("Permutation: images are not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation transposition(int n, int a, int b) {
    Permutation p(n);
    std::swap(p.img_[a], p.img_[b]);
    return p;
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("Permutation: degree mismatch");
    Permutation r;
    r.img_.resize(p.degree());
    for (int i = 0; i < p.degree(); ++i) r.img_[i] = q.img_[p.img_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(degree());
    for (int i = 0; i < degree(); ++i) r.img_[img_[i]] = i;
    return r;
  }

  bool operator==(const Permutation& o) const = default;
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  int sign() const {
    std::vector<char> seen(degree(), 0);
    int s = 1;
    for (int i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        ++len;
      }
      if (len % 2 == 0) s = -s;
    }
    return s;
  }

  // Nontrivial cycles, each starting at its least point, ordered by that point.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(degree(), 0);
    for (int i = 0; i < degree(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<int> cyc;
      for (int j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        cyc.push_back(j);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  long long order() const {
    long long m = 1;
    std::vector<char> seen(degree(), 0);
    for (int i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      long long len = 0;
      for (int j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        ++len;
      }
      m = std::lcm(m, len);
    }
    return m;
  }

  // 1-based cycle notation; identity prints as "e".
  std::string cycle_string() const {
    auto cs = cycles();
    if (cs.empty()) return "e";
    std::string out;
    for (const auto& c : cs) {
      out += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(c[k] + 1);
      }
      out += ')';
    }
    return out;
  }

  // True when the relative order of a and b flips under the permutation.
  bool inverts(int a, int b) const { return (a < b) != (img_[a] < img_[b]); }

 private:
  std::vector<int> img_;
};

}  // namespace braidsurf
