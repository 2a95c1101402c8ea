#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidsurf/group.hpp"
#include "braidsurf/monodromy.hpp"
#include "braidsurf/orbit.hpp"

namespace braidsurf {

struct NoCoverAvailable : std::runtime_error {
  explicit NoCoverAvailable(const std::string& what) : std::runtime_error(what) {}
};

struct LiftMismatch : std::runtime_error {
  explicit LiftMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NonNullHomologous : std::runtime_error {
  explicit NonNullHomologous(const std::string& what) : std::runtime_error(what) {}
};

// Central extension proj: total ->> base whose kernel lies in [total, total].
// The kernel being central is what makes lifting invariants independent of
// the choice of handle lifts.
struct StemExtension {
  GroupPtr total;
  GroupPtr base;
  std::vector<int> proj;                  // dense map, total index -> base index
  std::vector<int> kernel;                // proj^{-1}(id), sorted
  std::vector<std::vector<int>> preimages;  // per base element, sorted
  std::string name;

  int project(int x) const { return proj[x]; }
  int any_lift(int y) const { return preimages[y].front(); }
  bool is_trivial() const { return kernel.size() == 1; }

  static StemExtension make(GroupPtr total, GroupPtr base, std::vector<int> proj,
                            std::string name) {
    StemExtension E;
    E.total = std::move(total);
    E.base = std::move(base);
    E.proj = std::move(proj);
    E.name = std::move(name);
    GroupHom h(E.total, E.base, E.proj);  // validates the homomorphism
    if (!h.is_surjective()) throw std::invalid_argument("stem extension: proj not surjective");
    E.kernel = h.kernel();
    for (int k : E.kernel)
      for (int x = 0; x < E.total->order; ++x)
        if (E.total->op(k, x) != E.total->op(x, k))
          throw std::invalid_argument("stem extension: kernel not central");
    auto der = derived_subgroup(*E.total);
    if (!std::includes(der.begin(), der.end(), E.kernel.begin(), E.kernel.end()))
      throw std::invalid_argument("stem extension: kernel not inside the derived subgroup");
    E.preimages.assign(E.base->order, {});
    for (int x = 0; x < E.total->order; ++x) E.preimages[E.proj[x]].push_back(x);
    return E;
  }
};

inline StemExtension identity_cover(const GroupPtr& G) {
  std::vector<int> id_map(G->order);
  for (int i = 0; i < G->order; ++i) id_map[i] = i;
  return StemExtension::make(G, G, std::move(id_map), "id");
}

namespace detail {

// Compose a model extension total ->> model_base with an isomorphism
// model_base -> G so the result covers the caller's group object.
inline StemExtension transport_extension(const GroupPtr& total, const GroupPtr& model_base,
                                         const std::vector<int>& proj_model, const GroupPtr& G,
                                         const std::vector<int>& iso, std::string name) {
  std::vector<int> proj(total->order);
  for (int x = 0; x < total->order; ++x) proj[x] = iso[proj_model[x]];
  return StemExtension::make(total, G, std::move(proj), std::move(name));
}

inline std::vector<int> q8_to_v4_proj() {
  // quaternion index = 2*axis + sign; dropping the sign maps axes (1,i,j,k)
  // onto (1,a,b,ab)
  std::vector<int> p(8);
  for (int x = 0; x < 8; ++x) p[x] = x >> 1;
  return p;
}

inline std::vector<int> d4_to_v4_proj() {
  // r^i s^j -> a^i b^j; kernel {1, r^2}
  std::vector<int> p(8);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 4; ++i) p[j * 4 + i] = (i & 1) | (j << 1);
  return p;
}

inline std::vector<int> heis3_proj() {
  // (a,b,c) -> (a,b); kernel = the center {(0,0,c)}
  std::vector<int> p(27);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) p[a * 9 + b * 3 + c] = a * 3 + b;
  return p;
}

// SL(2,3) permutes the four points of the projective line over F_3 by the
// row-vector action; kernel {I, -I}.
inline std::vector<int> sl23_to_a4_proj(const GroupPtr& sl23, const GroupPtr& a4) {
  const std::array<std::array<int, 2>, 4> pts = {{{1, 0}, {0, 1}, {1, 1}, {1, 2}}};
  auto normalize = [](int u, int v) {
    if (u != 0) {
      int s = u == 1 ? 1 : 2;  // inverse of u in F_3
      return std::array<int, 2>{1, (v * s) % 3};
    }
    return std::array<int, 2>{0, 1};
  };
  auto point_index = [&](std::array<int, 2> q) {
    for (int i = 0; i < 4; ++i)
      if (pts[i] == q) return i;
    throw std::logic_error("projective point not found");
  };
  std::vector<int> p(sl23->order);
  for (int m = 0; m < sl23->order; ++m) {
    // recover the matrix entries from the label "[[a,b],[c,d]]"
    const std::string& lbl = sl23->labels[m];
    std::array<int, 4> M{};
    int k = 0;
    for (char ch : lbl)
      if (ch >= '0' && ch <= '2') M[k++] = ch - '0';
    std::vector<int> img(4);
    for (int i = 0; i < 4; ++i) {
      int u = (pts[i][0] * M[0] + pts[i][1] * M[2]) % 3;
      int v = (pts[i][0] * M[1] + pts[i][1] * M[3]) % 3;
      img[i] = point_index(normalize(u, v));
    }
    Permutation pi{std::move(img)};
    int found = -1;
    for (int y = 0; y < a4->order; ++y)
      if (a4->perm_real[y] == pi) {
        found = y;
        break;
      }
    if (found < 0) throw std::logic_error("projective action left A4");
    p[m] = found;
  }
  return p;
}

}  // namespace detail

// Shipped covers for the groups whose multiplier we realize explicitly:
// V4 (two covers), (Z/3)^2, A4; groups with trivial multiplier get the
// identity cover. Anything else is out of our table.
inline std::vector<StemExtension> builtin_extensions(const GroupPtr& G) {
  auto cyclic = [&]() {
    if (!G->is_abelian()) return false;
    for (int x = 0; x < G->order; ++x)
      if (G->element_order(x) == G->order) return true;
    return false;
  };
  if (G->order == 1 || cyclic()) return {identity_cover(G)};
  if (G->order == 6 && !G->is_abelian()) return {identity_cover(G)};
  if (G->order == 8 && !G->is_abelian()) {
    int invol = 0;
    for (int x = 0; x < G->order; ++x)
      if (G->element_order(x) == 2) ++invol;
    if (invol == 1) return {identity_cover(G)};  // quaternion: trivial multiplier
  }
  if (G->order == 4 && G->is_abelian()) {
    auto model = detail::make_v4("V4");
    auto iso = find_isomorphism(*model, *G);
    if (iso) {
      auto q8 = detail::make_q8("Q8");
      auto d4 = detail::make_d4("D4");
      return {detail::transport_extension(q8, model, detail::q8_to_v4_proj(), G, *iso, "q8-v4"),
              detail::transport_extension(d4, model, detail::d4_to_v4_proj(), G, *iso, "d4-v4")};
    }
  }
  if (G->order == 9 && G->is_abelian()) {
    auto model = group_from_spec("Z/3xZ/3");
    auto iso = find_isomorphism(*model, *G);
    if (iso) {
      auto h = detail::make_heis3("Heis3");
      return {detail::transport_extension(h, model, detail::heis3_proj(), G, *iso, "heis3-z3z3")};
    }
  }
  if (G->order == 12 && !G->is_abelian()) {
    auto model = detail::make_symmetric(4, true, "A4");
    auto iso = find_isomorphism(*model, *G);
    if (iso) {
      auto sl = detail::make_sl23("SL23");
      return {detail::transport_extension(sl, model, detail::sl23_to_a4_proj(sl, model), G, *iso,
                                          "sl23-a4")};
    }
  }
  throw NoCoverAvailable("no shipped stem extension for group: " + G->descriptor);
}

// Value of the lifted relator word prod [a~_i, b~_i] * prod c~_j in the
// kernel. Handle lifts are arbitrary (centrality makes the commutators
// independent of them); each c~_j is the fixed class lift conjugated by a
// lift of the least conjugator. class_lifts keys are the least member of
// each base conjugacy class; missing entries fall back to the least lift.
// A seed randomizes the handle lifts, for testing lift independence.
inline int lifting_invariant(const SurfaceMonodromy& t, const StemExtension& E,
                             const std::map<int, int>* class_lifts = nullptr,
                             std::optional<std::uint64_t> seed = std::nullopt) {
  if (t.group->fingerprint != E.base->fingerprint)
    throw std::invalid_argument("lifting invariant: monodromy group is not the extension base");
  const FiniteGroup& T = *E.total;
  std::mt19937_64 rng(seed ? *seed : 0);
  auto pick = [&](int y) {
    const auto& P = E.preimages[y];
    if (!seed) return P.front();
    return P[rng() % P.size()];
  };
  int acc = T.id;
  for (int i = 0; i < t.g; ++i) acc = T.op(acc, T.comm(pick(t.a[i]), pick(t.b[i])));
  auto classes = conjugacy_classes(*t.group);
  for (int cj : t.c) {
    const auto& cls = classes[class_of(classes, cj)];
    int rep = cls.front();
    int L;
    if (class_lifts && class_lifts->count(rep)) {
      L = class_lifts->at(rep);
      if (L < 0 || L >= T.order) throw LiftMismatch("peripheral lift out of range");
      if (!std::binary_search(cls.begin(), cls.end(), E.proj[L]))
        throw LiftMismatch("peripheral lift projects outside the class of c_j");
    } else {
      L = E.any_lift(rep);
    }
    int pL = E.proj[L];
    int h = -1;
    for (int g = 0; g < t.group->order; ++g)
      if (t.group->conj(pL, g) == cj) {
        h = g;
        break;
      }
    acc = T.op(acc, T.conj(L, pick(h)));
  }
  if (E.proj[acc] != E.base->id)
    throw std::invalid_argument("lifting invariant: tuple does not satisfy the relator");
  return acc;
}

// Kernel elements reachable by re-choosing the peripheral conjugators: for
// each class the image of z -> [z~, L] over the centralizer of proj(L),
// which lands in the kernel and is a subgroup since the kernel is central.
inline std::vector<int> ambiguity_subgroup(const SurfaceMonodromy& t, const StemExtension& E,
                                           const std::map<int, int>* class_lifts = nullptr) {
  const FiniteGroup& T = *E.total;
  auto classes = conjugacy_classes(*t.group);
  std::vector<int> gens{T.id};
  std::vector<char> seen_class(classes.size(), 0);
  for (int cj : t.c) {
    int ci = class_of(classes, cj);
    if (seen_class[ci]) continue;
    seen_class[ci] = 1;
    int rep = classes[ci].front();
    int L = class_lifts && class_lifts->count(rep) ? class_lifts->at(rep) : E.any_lift(rep);
    int pL = E.proj[L];
    for (int z = 0; z < t.group->order; ++z)
      if (t.group->op(z, pL) == t.group->op(pL, z)) gens.push_back(T.comm(E.any_lift(z), L));
  }
  return subgroup_closure(T, gens);
}

// Operational relative class: kernel value, primitive boundary part
// (1,...,1) recorded as the puncture count, and the ambiguity subgroup the
// comparison has to be read modulo.
struct SchurClass {
  int value = 0;
  int punctures = 0;
  std::vector<int> ambiguity;
};

inline SchurClass relative_class(const SurfaceMonodromy& t, const StemExtension& E,
                                 const std::map<int, int>* class_lifts = nullptr) {
  if (t.punctures() == 0)
    throw std::invalid_argument("relative class: no punctures (use lifting_invariant)");
  SchurClass s;
  s.value = lifting_invariant(t, E, class_lifts);
  s.punctures = t.punctures();
  s.ambiguity = ambiguity_subgroup(t, E, class_lifts);
  return s;
}

inline bool same_class(const SchurClass& x, const SchurClass& y, const StemExtension& E) {
  if (x.punctures != y.punctures) return false;
  std::vector<int> gens = x.ambiguity;
  gens.insert(gens.end(), y.ambiguity.begin(), y.ambiguity.end());
  auto amb = subgroup_closure(*E.total, gens);
  int d = E.total->op(x.value, E.total->inv_of(y.value));
  return std::binary_search(amb.begin(), amb.end(), d);
}

// Smallest k <= max_k with stabilize(t,k) elementary. Defined only for
// tuples whose invariant vanishes over every shipped cover; groups without
// a shipped cover pass vacuously. exhausted reports whether every level
// got a definite No (budget misses leave the bound open).
struct ThicknessBound {
  bool found = false;
  int k = -1;
  bool exhausted = true;
};

inline ThicknessBound thickness_upper(const SurfaceMonodromy& t, int max_k,
                                      long long budget = 1000000) {
  if (t.punctures() != 0) throw std::invalid_argument("thickness: punctured case not defined");
  std::vector<StemExtension> covers;
  try {
    covers = builtin_extensions(t.group);
  } catch (const NoCoverAvailable&) {
  }
  for (const auto& E : covers)
    if (lifting_invariant(t, E) != E.total->id)
      throw NonNullHomologous("thickness: nonzero lifting invariant over " + E.name);
  ThicknessBound r;
  for (int k = 0; k <= max_k; ++k) {
    auto e = is_elementary(stabilize(t, k), budget);
    if (e.kind == ElementaryResult::Kind::Yes) {
      r.found = true;
      r.k = k;
      return r;
    }
    if (e.kind == ElementaryResult::Kind::Unknown) r.exhausted = false;
  }
  r.found = false;
  r.k = -1;
  return r;
}

}  // namespace braidsurf
