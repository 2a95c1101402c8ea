#pragma once

#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace braidsurf {

// Finite field F_{p^d} as F_p[x] modulo a deterministic irreducible monic
// polynomial (the lexicographically first one). Elements carry a shared
// context pointer; arithmetic is only defined within one context.
struct GFContext {
  int p = 2, d = 1;
  std::vector<int> poly;  // monic, coeffs low->high, size d+1

  static std::shared_ptr<const GFContext> make(int p, int d);
};

using GFCtx = std::shared_ptr<const GFContext>;

class GF {
 public:
  GF() = default;
  GF(GFCtx F, std::vector<int> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
    c_.resize(F_->d, 0);
  }
  static GF scalar(const GFCtx& F, long long v) {
    std::vector<int> c(F->d, 0);
    c[0] = static_cast<int>(((v % F->p) + F->p) % F->p);
    return GF(F, std::move(c));
  }

  const std::vector<int>& coeffs() const { return c_; }
  const GFCtx& ctx() const { return F_; }
  bool is_zero() const {
    for (int v : c_)
      if (v) return false;
    return true;
  }

  friend GF operator+(const GF& a, const GF& b) {
    std::vector<int> c(a.c_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (c[i] + b.c_[i]) % a.F_->p;
    return GF(a.F_, std::move(c));
  }
  friend GF operator-(const GF& a, const GF& b) {
    std::vector<int> c(a.c_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (c[i] - b.c_[i] + a.F_->p) % a.F_->p;
    return GF(a.F_, std::move(c));
  }
  friend GF operator*(const GF& a, const GF& b) {
    int p = a.F_->p, d = a.F_->d;
    std::vector<int> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
      if (!a.c_[i]) continue;
      for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a.c_[i] * b.c_[j]) % p;
    }
    // reduce modulo the context polynomial
    for (int k = 2 * d - 2; k >= d; --k) {
      int v = prod[k];
      if (!v) continue;
      prod[k] = 0;
      for (int j = 0; j < d; ++j)
        prod[k - d + j] = ((prod[k - d + j] - v * a.F_->poly[j]) % p + p * p) % p;
    }
    prod.resize(d);
    return GF(a.F_, std::move(prod));
  }

  GF pow(long long e) const {
    GF r = scalar(F_, 1), base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }
  GF inverse() const {
    if (is_zero()) throw std::invalid_argument("GF: zero has no inverse");
    long long q = 1;
    for (int i = 0; i < F_->d; ++i) q *= F_->p;
    return pow(q - 2);
  }

  bool operator==(const GF& o) const { return c_ == o.c_; }
  bool operator<(const GF& o) const { return c_ < o.c_; }

  long long multiplicative_order() const {
    GF e = *this, one = scalar(F_, 1);
    long long n = 1;
    while (!(e == one)) {
      e = e * *this;
      if (++n > 1 << 20) throw std::logic_error("GF: runaway order");
    }
    return n;
  }

 private:
  GFCtx F_;
  std::vector<int> c_;
};

namespace detail {

// polynomial arithmetic over F_p for the irreducibility scan
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
  while (a.size() >= m.size()) {
    int v = a.back();
    if (v) {
      std::size_t off = a.size() - m.size();
      for (std::size_t j = 0; j < m.size(); ++j)
        a[off + j] = ((a[off + j] - v * m[j]) % p + p * p) % p;
    }
    a.pop_back();
  }
  return a;
}

inline bool poly_irreducible(const std::vector<int>& f, int p) {
  int d = static_cast<int>(f.size()) - 1;
  // trial division by every monic polynomial of degree 1..d/2
  std::vector<int> g(2, 0);
  for (int deg = 1; deg * 2 <= d; ++deg) {
    std::vector<int> cand(deg + 1, 0);
    cand[deg] = 1;
    long long total = 1;
    for (int i = 0; i < deg; ++i) total *= p;
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int i = 0; i < deg; ++i) {
        cand[i] = static_cast<int>(c % p);
        c /= p;
      }
      std::vector<int> r = poly_mod(f, cand, p);
      bool zero = true;
      for (int v : r)
        if (v) zero = false;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace detail

inline std::shared_ptr<const GFContext> GFContext::make(int p, int d) {
  if (p < 2 || d < 1 || d > 12) throw std::invalid_argument("GF: bad field parameters");
  for (int i = 2; i * i <= p; ++i)
    if (p % i == 0) throw std::invalid_argument("GF: p must be prime");
  auto F = std::make_shared<GFContext>();
  F->p = p;
  F->d = d;
  std::vector<int> f(d + 1, 0);
  f[d] = 1;
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= p;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < d; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (d == 1 || detail::poly_irreducible(f, p)) {
      F->poly = f;
      return F;
    }
  }
  throw std::logic_error("GF: no irreducible polynomial found");
}

// Smallest d with k | p^d - 1, i.e. the order of p mod k.
inline int gf_embedding_degree(int p, int k) {
  if (k < 1) throw std::invalid_argument("root order must be positive");
  if (k == 1) return 1;
  if (std::gcd(p, k) != 1) throw std::invalid_argument("root order must be coprime to p");
  long long r = 1;
  for (int d = 1; d <= 12; ++d) {
    r = r * p % k;
    if (r == 1) return d;
  }
  throw std::invalid_argument("no small field contains that root of unity");
}

// Deterministic primitive k-th root: first element in coefficient-lex order
// whose multiplicative order is exactly k.
inline GF gf_primitive_root(const GFCtx& F, int k) {
  long long q = 1;
  for (int i = 0; i < F->d; ++i) q *= F->p;
  if ((q - 1) % k != 0) throw std::invalid_argument("field has no k-th root of unity");
  std::vector<int> c(F->d, 0);
  for (long long code = 1; code < q; ++code) {
    long long v = code;
    for (int i = 0; i < F->d; ++i) {
      c[i] = static_cast<int>(v % F->p);
      v /= F->p;
    }
    GF e(F, c);
    if (e.multiplicative_order() == k) return e;
  }
  throw std::logic_error("GF: primitive root scan failed");
}

}  // namespace braidsurf
