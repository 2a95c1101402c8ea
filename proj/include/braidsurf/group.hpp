#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "braidsurf/freegroup.hpp"
#include "braidsurf/hash.hpp"
#include "braidsurf/perm.hpp"

namespace braidsurf {

// Finite group as a dense multiplication table. Element = index 0..order-1.
// Immutable after construction; shared by pointer everywhere.
struct FiniteGroup {
  int order = 0;
  std::vector<int> mul;  // order*order, row-major: mul[a*order+b] = a.b
  std::vector<int> inv;
  int id = 0;
  std::vector<std::string> labels;
  std::vector<Permutation> perm_real;  // optional faithful realization
  std::string descriptor;
  std::uint64_t fingerprint = 0;

  int op(int a, int b) const { return mul[a * order + b]; }
  int inv_of(int a) const { return inv[a]; }
  // conjugate of x by g
  int conj(int x, int g) const { return op(op(g, x), inv[g]); }
  int comm(int a, int b) const { return op(op(a, b), op(inv[a], inv[b])); }
  bool has_perm_real() const { return !perm_real.empty(); }

  int element_order(int x) const {
    int e = x, n = 1;
    while (e != id) {
      e = op(e, x);
      ++n;
    }
    return n;
  }

  bool is_abelian() const {
    for (int a = 0; a < order; ++a)
      for (int b = a + 1; b < order; ++b)
        if (op(a, b) != op(b, a)) return false;
    return true;
  }

  std::optional<int> find_label(const std::string& s) const {
    for (int i = 0; i < order; ++i)
      if (labels[i] == s) return i;
    return std::nullopt;
  }

  // Letters of w are +/-(i+1) referring to gens[i].
  int eval_word(const Word& w, const std::vector<int>& gens) const {
    int e = id;
    for (int x : w) {
      int g = gens[std::abs(x) - 1];
      e = op(e, x > 0 ? g : inv[g]);
    }
    return e;
  }

  // Structural validation. Full associativity is cubic, so it is sampled
  // above the threshold; closure-built groups are associative by construction
  // and may pass trusted=true.
  static std::shared_ptr<const FiniteGroup> build(int order, std::vector<int> mul,
                                                  std::vector<std::string> labels,
                                                  std::vector<Permutation> perm_real,
                                                  std::string descriptor, bool trusted = false) {
    auto G = std::make_shared<FiniteGroup>();
    G->order = order;
    G->mul = std::move(mul);
    G->labels = std::move(labels);
    G->perm_real = std::move(perm_real);
    G->descriptor = std::move(descriptor);
    if (order <= 0 || static_cast<long long>(order) * order != static_cast<long long>(G->mul.size()))
      throw std::invalid_argument("group table: wrong size");
    for (int v : G->mul)
      if (v < 0 || v >= order) throw std::invalid_argument("group table: entry out of range");

    int id = -1;
    for (int e = 0; e < order; ++e) {
      bool ok = true;
      for (int a = 0; a < order && ok; ++a)
        ok = G->op(e, a) == a && G->op(a, e) == a;
      if (ok) {
        id = e;
        break;
      }
    }
    if (id < 0) throw std::invalid_argument("group table: no identity");
    G->id = id;

    G->inv.assign(order, -1);
    for (int a = 0; a < order; ++a) {
      for (int b = 0; b < order; ++b)
        if (G->op(a, b) == id && G->op(b, a) == id) {
          G->inv[a] = b;
          break;
        }
      if (G->inv[a] < 0) throw std::invalid_argument("group table: missing inverse");
    }

    if (!trusted) {
      if (order <= 128) {
        for (int a = 0; a < order; ++a)
          for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
              if (G->op(G->op(a, b), c) != G->op(a, G->op(b, c)))
                throw std::invalid_argument("group table: not associative");
      } else {
        std::uint64_t s = 0x9e3779b97f4a7c15ull;
        for (int i = 0; i < 200000; ++i) {
          s = s * 6364136223846793005ull + 1442695040888963407ull;
          int a = static_cast<int>((s >> 33) % order);
          int b = static_cast<int>((s >> 13) % order);
          int c = static_cast<int>(s % order);
          if (G->op(G->op(a, b), c) != G->op(a, G->op(b, c)))
            throw std::invalid_argument("group table: not associative");
        }
      }
    }

    if (G->labels.empty())
      for (int i = 0; i < order; ++i) G->labels.push_back("g" + std::to_string(i));
    if (static_cast<int>(G->labels.size()) != order)
      throw std::invalid_argument("group table: label count mismatch");

    if (!G->perm_real.empty()) {
      if (static_cast<int>(G->perm_real.size()) != order)
        throw std::invalid_argument("perm realization: wrong size");
      std::set<Permutation> distinct(G->perm_real.begin(), G->perm_real.end());
      if (static_cast<int>(distinct.size()) != order)
        throw std::invalid_argument("perm realization: not faithful");
      for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
          if (!(G->perm_real[a] * G->perm_real[b] == G->perm_real[G->op(a, b)]))
            throw std::invalid_argument("perm realization: not a homomorphism");
    }

    Fnv1a f;
    f.feed_u64(static_cast<std::uint64_t>(order));
    for (int v : G->mul) f.feed_i32(v);
    for (const auto& s : G->labels) f.feed_str(s);
    for (const auto& p : G->perm_real)
      for (int v : p.images()) f.feed_i32(v);
    G->fingerprint = f.h;
    return G;
  }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct GroupHom {
  GroupPtr source, target;
  std::vector<int> map;

  GroupHom(GroupPtr src, GroupPtr tgt, std::vector<int> m)
      : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
    if (static_cast<int>(map.size()) != source->order)
      throw std::invalid_argument("hom: map size mismatch");
    for (int v : map)
      if (v < 0 || v >= target->order) throw std::invalid_argument("hom: image out of range");
    for (int a = 0; a < source->order; ++a)
      for (int b = 0; b < source->order; ++b)
        if (map[source->op(a, b)] != target->op(map[a], map[b]))
          throw std::invalid_argument("hom: not a homomorphism");
  }

  int operator()(int x) const { return map[x]; }

  bool is_surjective() const {
    std::set<int> im(map.begin(), map.end());
    return static_cast<int>(im.size()) == target->order;
  }

  std::vector<int> kernel() const {
    std::vector<int> k;
    for (int a = 0; a < source->order; ++a)
      if (map[a] == target->id) k.push_back(a);
    return k;
  }
};

inline std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens) {
  std::vector<char> in(G.order, 0);
  std::vector<int> queue;
  in[G.id] = 1;
  queue.push_back(G.id);
  for (int g : gens)
    if (!in[g]) {
      in[g] = 1;
      queue.push_back(g);
    }
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int g : gens) {
      int y = G.op(queue[i], g);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

inline std::vector<int> derived_subgroup(const FiniteGroup& G) {
  std::vector<int> comms;
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b) comms.push_back(G.comm(a, b));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return subgroup_closure(G, comms);
}

inline std::vector<int> center(const FiniteGroup& G) {
  std::vector<int> z;
  for (int a = 0; a < G.order; ++a) {
    bool central = true;
    for (int b = 0; b < G.order && central; ++b) central = G.op(a, b) == G.op(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

// Classes ordered by least member; each class sorted.
inline std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G) {
  std::vector<std::vector<int>> classes;
  std::vector<char> seen(G.order, 0);
  for (int x = 0; x < G.order; ++x) {
    if (seen[x]) continue;
    std::set<int> cls;
    for (int g = 0; g < G.order; ++g) cls.insert(G.conj(x, g));
    for (int y : cls) seen[y] = 1;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

inline int class_of(const std::vector<std::vector<int>>& classes, int x) {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::binary_search(classes[i].begin(), classes[i].end(), x)) return static_cast<int>(i);
  throw std::logic_error("class_of: element not found");
}

inline bool is_transitive(const std::vector<Permutation>& perms, int n) {
  for (const auto& p : perms)
    if (p.degree() != n) throw std::invalid_argument("is_transitive: degree mismatch");
  std::vector<char> reach(n, 0);
  std::vector<int> queue{0};
  reach[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& p : perms) {
      for (int q : {p(queue[i]), p.inverse()(queue[i])})
        if (!reach[q]) {
          reach[q] = 1;
          queue.push_back(q);
        }
    }
  return static_cast<int>(queue.size()) == n;
}

// A short generating sequence: greedily grown, deterministic.
inline std::vector<int> generating_set(const FiniteGroup& G) {
  std::vector<int> gens;
  std::vector<int> cl{G.id};
  for (int x = 0; x < G.order && static_cast<int>(cl.size()) < G.order; ++x) {
    if (std::binary_search(cl.begin(), cl.end(), x)) continue;
    gens.push_back(x);
    cl = subgroup_closure(G, gens);
  }
  return gens;
}

namespace detail {

// Backtracking search over generator images; emits every isomorphism G -> H
// (or stops after the first when all_maps is false).
inline void iso_search(const FiniteGroup& G, const FiniteGroup& H, bool all_maps,
                       std::vector<std::vector<int>>& out) {
  if (G.order != H.order) return;
  std::vector<int> gens = generating_set(G);

  // words expressing every element of G in the generators, via BFS
  std::vector<Word> expr(G.order);
  std::vector<char> have(G.order, 0);
  std::vector<int> queue{G.id};
  have[G.id] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      int y = G.op(queue[i], gens[gi]);
      if (!have[y]) {
        have[y] = 1;
        expr[y] = expr[queue[i]];
        expr[y].push_back(static_cast<int>(gi) + 1);
        queue.push_back(y);
      }
    }

  std::vector<int> img(gens.size(), -1);
  auto build_and_check = [&]() {
    std::vector<int> m(G.order);
    for (int x = 0; x < G.order; ++x) m[x] = H.eval_word(expr[x], img);
    std::vector<char> hit(H.order, 0);
    for (int v : m) {
      if (hit[v]) return;
      hit[v] = 1;
    }
    for (int a = 0; a < G.order; ++a)
      for (int b = 0; b < G.order; ++b)
        if (m[G.op(a, b)] != H.op(m[a], m[b])) return;
    out.push_back(std::move(m));
  };

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (!all_maps && !out.empty()) return;
    if (i == gens.size()) {
      build_and_check();
      return;
    }
    int want = G.element_order(gens[i]);
    for (int h = 0; h < H.order; ++h) {
      if (H.element_order(h) != want) continue;
      img[i] = h;
      rec(i + 1);
    }
    img[i] = -1;
  };
  rec(0);
}

}  // namespace detail

inline std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& G,
                                                        const FiniteGroup& H) {
  std::vector<std::vector<int>> out;
  detail::iso_search(G, H, false, out);
  if (out.empty()) return std::nullopt;
  return out.front();
}

// All automorphisms, identity first, deterministic order.
inline std::vector<std::vector<int>> automorphisms(const FiniteGroup& G) {
  std::vector<std::vector<int>> out;
  detail::iso_search(G, G, true, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Built-in groups

namespace detail {

template <class Elem, class MulFn>
GroupPtr group_from_elements(const std::vector<Elem>& elems, MulFn mulfn,
                             std::vector<std::string> labels, std::vector<Permutation> perms,
                             std::string descriptor) {
  std::map<Elem, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  int n = static_cast<int>(elems.size());
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto it = index.find(mulfn(elems[a], elems[b]));
      if (it == index.end()) throw std::invalid_argument("group elements: not closed");
      mul[a * n + b] = it->second;
    }
  return FiniteGroup::build(n, std::move(mul), std::move(labels), std::move(perms),
                            std::move(descriptor));
}

inline GroupPtr make_symmetric(int n, bool even_only, std::string descriptor) {
  if (n < 1 || n > 6) throw std::invalid_argument("symmetric group degree out of range (1..6)");
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<Permutation> elems;
  do {
    Permutation p{std::vector<int>(base)};
    if (!even_only || p.sign() == 1) elems.push_back(p);
  } while (std::next_permutation(base.begin(), base.end()));
  std::vector<std::string> labels;
  for (const auto& p : elems) labels.push_back(p.cycle_string());
  auto perms = elems;
  return group_from_elements(
      elems, [](const Permutation& a, const Permutation& b) { return a * b; }, std::move(labels),
      std::move(perms), std::move(descriptor));
}

inline GroupPtr make_cyclic(int k, std::string descriptor) {
  if (k < 1 || k > 512) throw std::invalid_argument("cyclic group order out of range");
  std::vector<int> mul(static_cast<std::size_t>(k) * k);
  std::vector<std::string> labels;
  std::vector<Permutation> perms;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) mul[a * k + b] = (a + b) % k;
  for (int a = 0; a < k; ++a) {
    labels.push_back(std::to_string(a));
    std::vector<int> img(k);
    for (int x = 0; x < k; ++x) img[x] = (x + a) % k;
    perms.emplace_back(std::move(img));
  }
  return FiniteGroup::build(k, std::move(mul), std::move(labels), std::move(perms),
                            std::move(descriptor));
}

inline std::vector<Permutation> right_regular(const std::vector<int>& mul, int n) {
  std::vector<Permutation> perms;
  for (int g = 0; g < n; ++g) {
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) img[x] = mul[x * n + g];
    perms.emplace_back(std::move(img));
  }
  return perms;
}

inline GroupPtr make_v4(std::string descriptor) {
  std::vector<int> mul(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) mul[a * 4 + b] = a ^ b;
  auto perms = right_regular(mul, 4);
  return FiniteGroup::build(4, std::move(mul), {"1", "a", "b", "ab"}, std::move(perms),
                            std::move(descriptor));
}

inline GroupPtr make_d4(std::string descriptor) {
  // r = rotation of the square, s = reflection fixing corners 1 and 3.
  Permutation r{std::vector<int>{1, 2, 3, 0}};
  Permutation s{std::vector<int>{0, 3, 2, 1}};
  std::vector<Permutation> elems;
  std::vector<std::string> labels = {"1", "r", "r2", "r3", "s", "rs", "r2s", "r3s"};
  for (int j = 0; j < 2; ++j) {
    Permutation e(4);
    for (int i = 0; i < 4; ++i) {
      Permutation x = e;
      if (j) x = x * s;
      elems.push_back(x);
      e = e * r;
    }
  }
  auto perms = elems;
  return group_from_elements(
      elems, [](const Permutation& a, const Permutation& b) { return a * b; }, std::move(labels),
      std::move(perms), std::move(descriptor));
}

inline GroupPtr make_q8(std::string descriptor) {
  // index = 2*axis + sign with axes (1, i, j, k) and sign 0 = +, 1 = -
  auto mulq = [](int x, int y) {
    int sx = x & 1, ax = x >> 1, sy = y & 1, ay = y >> 1;
    int s = sx ^ sy, a;
    if (ax == 0)
      a = ay;
    else if (ay == 0)
      a = ax;
    else if (ax == ay) {
      a = 0;
      s ^= 1;
    } else {
      a = 6 - ax - ay;
      if ((ay - ax + 3) % 3 != 1) s ^= 1;
    }
    return 2 * a + s;
  };
  std::vector<int> mul(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) mul[a * 8 + b] = mulq(a, b);
  auto perms = right_regular(mul, 8);
  return FiniteGroup::build(8, std::move(mul), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"},
                            std::move(perms), std::move(descriptor));
}

inline GroupPtr make_heis3(std::string descriptor) {
  // triples (a,b,c) over F_3 with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
  using T = std::array<int, 3>;
  std::vector<T> elems;
  std::vector<std::string> labels;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        elems.push_back({a, b, c});
        labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c) + ")");
      }
  auto G = group_from_elements(
      elems,
      [](const T& x, const T& y) {
        return T{(x[0] + y[0]) % 3, (x[1] + y[1]) % 3, (x[2] + y[2] + x[0] * y[1]) % 3};
      },
      std::move(labels), {}, std::move(descriptor));
  auto H = std::make_shared<FiniteGroup>(*G);
  H->perm_real = right_regular(H->mul, H->order);
  return FiniteGroup::build(H->order, H->mul, H->labels, H->perm_real, H->descriptor);
}

inline GroupPtr make_sl23(std::string descriptor) {
  // 2x2 matrices over F_3 of determinant 1, acting on row vectors from the
  // right so that the table follows the global left-to-right convention.
  using M = std::array<int, 4>;
  std::vector<M> elems;
  std::vector<std::string> labels;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if (((a * d - b * c) % 3 + 3) % 3 == 1) {
            elems.push_back({a, b, c, d});
            labels.push_back("[[" + std::to_string(a) + "," + std::to_string(b) + "],[" +
                             std::to_string(c) + "," + std::to_string(d) + "]]");
          }
  auto G = group_from_elements(
      elems,
      [](const M& x, const M& y) {
        return M{(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3,
                 (x[2] * y[0] + x[3] * y[2]) % 3, (x[2] * y[1] + x[3] * y[3]) % 3};
      },
      std::move(labels), {}, std::move(descriptor));
  auto H = std::make_shared<FiniteGroup>(*G);
  H->perm_real = right_regular(H->mul, H->order);
  return FiniteGroup::build(H->order, H->mul, H->labels, H->perm_real, H->descriptor);
}

inline GroupPtr make_product(const GroupPtr& A, const GroupPtr& B, std::string descriptor) {
  int n = A->order * B->order;
  if (n > 4096) throw std::invalid_argument("product group too large");
  auto idx = [&](int a, int b) { return a * B->order + b; };
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels(n);
  for (int a = 0; a < A->order; ++a)
    for (int b = 0; b < B->order; ++b) {
      labels[idx(a, b)] = A->labels[a] + "|" + B->labels[b];
      for (int c = 0; c < A->order; ++c)
        for (int d = 0; d < B->order; ++d)
          mul[idx(a, b) * n + idx(c, d)] = idx(A->op(a, c), B->op(b, d));
    }
  std::vector<Permutation> perms;
  if (A->has_perm_real() && B->has_perm_real()) {
    int da = A->perm_real[0].degree(), db = B->perm_real[0].degree();
    for (int a = 0; a < A->order; ++a)
      for (int b = 0; b < B->order; ++b) {
        std::vector<int> img(da + db);
        for (int x = 0; x < da; ++x) img[x] = A->perm_real[a](x);
        for (int x = 0; x < db; ++x) img[da + x] = da + B->perm_real[b](x);
        perms.emplace_back(std::move(img));
      }
  }
  return FiniteGroup::build(n, std::move(mul), std::move(labels), std::move(perms),
                            std::move(descriptor));
}

inline GroupPtr load_table_group(const std::string& path, std::string descriptor) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group table file: " + path);
  nlohmann::json j;
  in >> j;
  int order = j.at("order").get<int>();
  std::vector<int> mul;
  for (const auto& row : j.at("mul"))
    for (const auto& v : row) mul.push_back(v.get<int>());
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return FiniteGroup::build(order, std::move(mul), std::move(labels), {}, std::move(descriptor));
}

inline GroupPtr parse_atom(const std::string& name) {
  if (name == "V4") return make_v4(name);
  if (name == "D4") return make_d4(name);
  if (name == "Q8") return make_q8(name);
  if (name == "Heis3") return make_heis3(name);
  if (name == "SL23") return make_sl23(name);
  if (name.size() >= 2 && name[0] == 'S' && std::isdigit(static_cast<unsigned char>(name[1])))
    return make_symmetric(std::stoi(name.substr(1)), false, name);
  if (name.size() >= 2 && name[0] == 'A' && std::isdigit(static_cast<unsigned char>(name[1])))
    return make_symmetric(std::stoi(name.substr(1)), true, name);
  if (name.rfind("Z/", 0) == 0) return make_cyclic(std::stoi(name.substr(2)), name);
  throw std::invalid_argument("unknown group descriptor: " + name);
}

}  // namespace detail

// Descriptor grammar: built-in names (S3, A4, Z/6, V4, D4, Q8, Heis3, SL23),
// direct products joined with 'x' (e.g. "Z/2xZ/2"), or "table:<path>" for an
// explicit multiplication table in JSON.
inline GroupPtr group_from_spec(const std::string& spec) {
  if (spec.rfind("table:", 0) == 0) return detail::load_table_group(spec.substr(6), spec);
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur += ch;
  }
  parts.push_back(cur);
  GroupPtr G = detail::parse_atom(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    GroupPtr H = detail::parse_atom(parts[i]);
    std::string d = G->descriptor + "x" + H->descriptor;
    G = detail::make_product(G, H, i + 1 == parts.size() ? spec : d);
  }
  return G;
}

}  // namespace braidsurf
