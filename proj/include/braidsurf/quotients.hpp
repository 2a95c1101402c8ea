#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "braidsurf/bn1.hpp"
#include "braidsurf/burau.hpp"
#include "braidsurf/gf.hpp"
#include "braidsurf/group.hpp"

namespace braidsurf {

// A finite quotient of B_n with a deterministic element indexing.
// Descriptors: "sym", "burau:p=5,k=4", "ab:N=2".
//
// The Burau probe uses the unreduced companion matrices over F_{p^d} with t
// the deterministic primitive k-th root, so k=1 gives literally the
// permutation matrices. The group table is materialized only when the
// generated group is small enough; element_of works regardless.
struct QuotientProbe {
  std::string descriptor;
  int strands = 0;
  long long order = 0;
  int identity_index = 0;
  GroupPtr group;  // null when order > table cap
  std::function<int(const BraidWord&)> element_of;
};

namespace detail {

inline std::map<std::string, std::string> parse_probe_params(const std::string& s) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("quotient descriptor: want k=v");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

// BFS closure of the monoid generated by gens; in a finite group this is the
// generated subgroup. Returns elements in BFS order.
template <class E, class MulFn>
std::vector<E> probe_closure(const E& id, const std::vector<E>& gens, MulFn mul,
                             long long order_cap) {
  std::map<E, int> index;
  std::vector<E> elems{id};
  index[id] = 0;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      E y = mul(elems[i], g);
      if (index.emplace(y, static_cast<int>(elems.size())).second) {
        elems.push_back(y);
        if (static_cast<long long>(elems.size()) > order_cap)
          throw std::runtime_error("quotient group exceeds order cap");
      }
    }
  return elems;
}

template <class E, class MulFn>
QuotientProbe finish_probe(std::string descriptor, int n, const E& id, const std::vector<E>& gens,
                           MulFn mul, long long order_cap, long long table_cap,
                           std::function<E(const BraidWord&)> eval) {
  std::vector<E> elems = probe_closure(id, gens, mul, order_cap);
  auto index = std::make_shared<std::map<E, int>>();
  for (std::size_t i = 0; i < elems.size(); ++i) (*index)[elems[i]] = static_cast<int>(i);

  QuotientProbe P;
  P.descriptor = descriptor;
  P.strands = n;
  P.order = static_cast<long long>(elems.size());
  P.identity_index = 0;
  if (P.order <= table_cap) {
    int m = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) table[a * m + b] = index->at(mul(elems[a], elems[b]));
    P.group = FiniteGroup::build(m, std::move(table), {}, {}, descriptor, /*trusted=*/true);
  }
  P.element_of = [index, eval, n](const BraidWord& w) {
    if (w.n != n) throw std::invalid_argument("probe: strand count mismatch");
    return index->at(eval(w));
  };
  return P;
}

}  // namespace detail

inline QuotientProbe make_probe(int n, const std::string& spec, long long order_cap = 4096,
                                long long table_cap = 1024) {
  if (spec == "sym") {
    auto S = detail::make_symmetric(n, false, "S" + std::to_string(n));
    auto index = std::make_shared<std::map<Permutation, int>>();
    for (int i = 0; i < S->order; ++i) (*index)[S->perm_real[i]] = i;
    QuotientProbe P;
    P.descriptor = spec;
    P.strands = n;
    P.order = S->order;
    P.identity_index = index->at(Permutation(n));
    P.group = S;
    P.element_of = [index, n](const BraidWord& w) {
      if (w.n != n) throw std::invalid_argument("probe: strand count mismatch");
      return index->at(underlying_permutation(w));
    };
    return P;
  }
  auto colon = spec.find(':');
  std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  auto kv = colon == std::string::npos ? std::map<std::string, std::string>{}
                                       : detail::parse_probe_params(spec.substr(colon + 1));
  if (head == "ab") {
    if (!kv.count("N")) throw std::invalid_argument("ab probe: missing N");
    int N = std::stoi(kv["N"]);
    if (N < 2) throw std::invalid_argument("ab probe: N must be >= 2");
    auto reduce = [N](AbBraid a) {
      for (auto& v : a.lk) v = ((v % N) + N) % N;
      return a;
    };
    // map keys: (perm images, lk mod N)
    using Key = std::pair<std::vector<int>, std::vector<long long>>;
    auto key = [](const AbBraid& a) { return Key{a.perm.images(), a.lk}; };
    std::vector<Key> kgens;
    for (int i = 1; i < n; ++i) kgens.push_back(key(reduce(abelianize(BraidWord(n, {i})))));
    int nn = n;
    auto mulk = [nn, reduce, key](const Key& x, const Key& y) {
      AbBraid a(nn, Permutation(x.first), x.second), b(nn, Permutation(y.first), y.second);
      return key(reduce(ab_mul(a, b)));
    };
    auto evalk = [reduce, key](const BraidWord& w) { return key(reduce(abelianize(w))); };
    return detail::finish_probe<Key>(spec, n, key(AbBraid::identity(n)), kgens, mulk, order_cap,
                                     table_cap, evalk);
  }
  if (head == "burau") {
    if (!kv.count("p") || !kv.count("k")) throw std::invalid_argument("burau probe: need p and k");
    int p = std::stoi(kv["p"]), k = std::stoi(kv["k"]);
    int d = gf_embedding_degree(p, k);
    auto F = GFContext::make(p, d);
    GF t = k == 1 ? GF::scalar(F, 1) : gf_primitive_root(F, k);
    GF tinv = t.inverse(), one = GF::scalar(F, 1);
    using M = Mat<GF>;
    std::vector<M> gens;
    for (int i = 1; i < n; ++i) gens.push_back(unreduced_burau_gen(n, i, t, tinv, one));
    auto mulm = [](const M& a, const M& b) { return mat_mul(a, b); };
    auto evalm = [t, tinv, one](const BraidWord& w) { return unreduced_burau(w, t, tinv, one); };
    return detail::finish_probe<M>(spec, n, mat_eye(n, one), gens, mulm, order_cap, table_cap,
                                   evalm);
  }
  throw std::invalid_argument("unknown quotient descriptor: " + spec);
}

inline int quotient_probe(const BraidWord& w, const QuotientProbe& probe) {
  return probe.element_of(w);
}

}  // namespace braidsurf
