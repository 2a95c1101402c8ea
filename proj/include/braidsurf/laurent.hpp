#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace braidsurf {

// Integer Laurent polynomial in one variable t. Sparse map degree -> coeff,
// zero coefficients never stored.
class Laurent {
 public:
  Laurent() = default;
  Laurent(long long c) {
    if (c) c_[0] = c;
  }
  static Laurent t_power(int k, long long coeff = 1) {
    Laurent p;
    if (coeff) p.c_[k] = coeff;
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<int, long long>& coeffs() const { return c_; }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (auto [d, v] : b.c_) {
      auto it = r.c_.find(d);
      if (it == r.c_.end())
        r.c_[d] = v;
      else if ((it->second += v) == 0)
        r.c_.erase(it);
    }
    return r;
  }
  friend Laurent operator-(const Laurent& a) {
    Laurent r = a;
    for (auto& [d, v] : r.c_) v = -v;
    return r;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto [da, va] : a.c_)
      for (auto [db, vb] : b.c_) {
        auto it = r.c_.find(da + db);
        if (it == r.c_.end())
          r.c_[da + db] = va * vb;
        else if ((it->second += va * vb) == 0)
          r.c_.erase(it);
      }
    return r;
  }
  bool operator==(const Laurent& o) const = default;

  int min_deg() const { return c_.begin()->first; }
  int max_deg() const { return c_.rbegin()->first; }

  // Exact division; nullopt when no Laurent quotient exists. An exact
  // quotient has degrees within [min-den.min, max-den.max], which bounds the
  // loop: the remainder's top degree drops every step.
  std::optional<Laurent> divide(const Laurent& den) const {
    if (den.is_zero()) return std::nullopt;
    if (is_zero()) return Laurent();
    Laurent rem = *this, q;
    long long lead = den.c_.rbegin()->second;
    int qmin = min_deg() - den.min_deg();
    while (!rem.is_zero()) {
      int d = rem.max_deg() - den.max_deg();
      if (d < qmin) return std::nullopt;
      long long rc = rem.c_.rbegin()->second;
      if (rc % lead != 0) return std::nullopt;
      Laurent piece = t_power(d, rc / lead);
      q = q + piece;
      rem = rem - piece * den;
    }
    return q;
  }

  // Multiplies by +/- t^k so the lowest term has degree 0 and positive sign.
  Laurent normalized() const {
    if (is_zero()) return Laurent();
    Laurent r;
    int shift = min_deg();
    long long sgn = c_.begin()->second > 0 ? 1 : -1;
    for (auto [d, v] : c_) r.c_[d - shift] = sgn * v;
    return r;
  }

  std::complex<double> eval(std::complex<double> t) const {
    std::complex<double> s = 0;
    for (auto [d, v] : c_) s += static_cast<double>(v) * std::pow(t, d);
    return s;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto [d, v] : c_) {
      if (!first && v > 0) os << "+";
      first = false;
      if (v == -1 && d != 0)
        os << "-";
      else if (v != 1 || d == 0)
        os << v;
      if (d == 1)
        os << "t";
      else if (d != 0)
        os << "t^" << d;
    }
    return os.str();
  }

 private:
  std::map<int, long long> c_;
};

}  // namespace braidsurf
