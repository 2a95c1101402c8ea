#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidsurf/group.hpp"
#include "braidsurf/hash.hpp"

namespace braidsurf {

// Monodromy tuple (a_1,b_1,...,a_g,b_g; c_1,...,c_m) in a finite group,
// subject to the surface relator prod_i [a_i,b_i] * prod_j c_j = 1.
// Entries are element indices into *group.
struct SurfaceMonodromy {
  GroupPtr group;
  int g = 0;
  std::vector<int> a, b;
  std::vector<int> c;

  int punctures() const { return static_cast<int>(c.size()); }

  // Flattened entry list, the canonical ordering key.
  std::vector<int> key() const {
    std::vector<int> k;
    k.reserve(a.size() + b.size() + c.size());
    for (int i = 0; i < g; ++i) {
      k.push_back(a[i]);
      k.push_back(b[i]);
    }
    for (int x : c) k.push_back(x);
    return k;
  }

  bool same_shape(const SurfaceMonodromy& o) const {
    return group->fingerprint == o.group->fingerprint && g == o.g && c.size() == o.c.size();
  }
};

inline SurfaceMonodromy make_monodromy(GroupPtr G, int g, std::vector<int> a, std::vector<int> b,
                                       std::vector<int> c) {
  if (g < 0 || static_cast<int>(a.size()) != g || static_cast<int>(b.size()) != g)
    throw std::invalid_argument("monodromy: handle count mismatch");
  for (const auto* v : {&a, &b, &c})
    for (int x : *v)
      if (x < 0 || x >= G->order) throw std::invalid_argument("monodromy: element out of range");
  SurfaceMonodromy t;
  t.group = std::move(G);
  t.g = g;
  t.a = std::move(a);
  t.b = std::move(b);
  t.c = std::move(c);
  return t;
}

inline int relator_value(const SurfaceMonodromy& t) {
  const FiniteGroup& G = *t.group;
  int v = G.id;
  for (int i = 0; i < t.g; ++i) v = G.op(v, G.comm(t.a[i], t.b[i]));
  for (int x : t.c) v = G.op(v, x);
  return v;
}

// Relator holds and no peripheral image is trivial.
inline bool validate(const SurfaceMonodromy& t) {
  for (int x : t.c)
    if (x == t.group->id) return false;
  return relator_value(t) == t.group->id;
}

inline SurfaceMonodromy conjugate_tuple(const SurfaceMonodromy& t, int h) {
  SurfaceMonodromy r = t;
  const FiniteGroup& G = *t.group;
  for (int i = 0; i < t.g; ++i) {
    r.a[i] = G.conj(t.a[i], h);
    r.b[i] = G.conj(t.b[i], h);
  }
  for (std::size_t j = 0; j < t.c.size(); ++j) r.c[j] = G.conj(t.c[j], h);
  return r;
}

// Lexicographically least simultaneous conjugate; two tuples are conjugate
// iff their canonical forms agree.
inline SurfaceMonodromy canonical_form(const SurfaceMonodromy& t) {
  SurfaceMonodromy best = t;
  std::vector<int> bk = best.key();
  for (int h = 1; h < t.group->order; ++h) {
    SurfaceMonodromy cand = conjugate_tuple(t, h);
    std::vector<int> ck = cand.key();
    if (ck < bk) {
      best = std::move(cand);
      bk = std::move(ck);
    }
  }
  return best;
}

inline SurfaceMonodromy apply_group_map(const SurfaceMonodromy& t, const std::vector<int>& f) {
  SurfaceMonodromy r = t;
  for (int i = 0; i < t.g; ++i) {
    r.a[i] = f[t.a[i]];
    r.b[i] = f[t.b[i]];
  }
  for (std::size_t j = 0; j < t.c.size(); ++j) r.c[j] = f[t.c[j]];
  return r;
}

inline SurfaceMonodromy stabilize(const SurfaceMonodromy& t, int k) {
  if (k < 0) throw std::invalid_argument("stabilize: negative count");
  SurfaceMonodromy r = t;
  r.g += k;
  r.a.insert(r.a.end(), k, t.group->id);
  r.b.insert(r.b.end(), k, t.group->id);
  return r;
}

// ---------------------------------------------------------------------------
// Enumeration

struct EnumerateConstraints {
  // One entry per puncture: an element index whose conjugacy class the
  // peripheral image must lie in, or -1 for any non-identity element.
  std::vector<int> peripheral_classes;
  bool surjective = false;
  bool transitive = false;
};

struct EnumerateStats {
  long long raw = 0;      // tuples emitted
  long long classes = 0;  // distinct conjugation canonical forms among them
};

namespace detail {

// One relator slot: either a handle (emits (a_i,b_i), value [a_i,b_i]) or a
// puncture (emits c_j drawn from an allowed set). Options are listed in lex
// order of the emitted entries.
struct Slot {
  bool handle = false;
  std::vector<std::pair<std::vector<int>, int>> options;  // (entries, relator value)
};

inline std::vector<Slot> relator_slots(const FiniteGroup& G, int g, int m,
                                       const EnumerateConstraints& cons) {
  std::vector<Slot> slots;
  if (g > 0) {
    Slot h;
    h.handle = true;
    for (int x = 0; x < G.order; ++x)
      for (int y = 0; y < G.order; ++y) h.options.push_back({{x, y}, G.comm(x, y)});
    slots.assign(g, h);
  }
  auto classes = conjugacy_classes(G);
  for (int j = 0; j < m; ++j) {
    Slot s;
    int want = -1;
    if (!cons.peripheral_classes.empty()) {
      if (static_cast<int>(cons.peripheral_classes.size()) != m)
        throw std::invalid_argument("enumerate: one peripheral class per puncture expected");
      want = cons.peripheral_classes[j];
    }
    if (want >= 0) {
      const auto& cls = classes[class_of(classes, want)];
      for (int x : cls)
        if (x != G.id) s.options.push_back({{x}, x});
      if (s.options.empty()) throw std::invalid_argument("enumerate: identity peripheral class");
    } else {
      for (int x = 0; x < G.order; ++x)
        if (x != G.id) s.options.push_back({{x}, x});
    }
    slots.push_back(std::move(s));
  }
  return slots;
}

}  // namespace detail

// Streams every tuple satisfying the relator and the constraints, in lex
// order of the flattened entries. Meet-in-the-middle on the relator: the back
// slots are tabulated per partial product, the front slots are walked in lex
// order.
inline EnumerateStats enumerate_monodromies(
    const GroupPtr& G, int g, int m, const EnumerateConstraints& cons,
    const std::function<void(const SurfaceMonodromy&)>& sink) {
  if (cons.transitive && !G->has_perm_real())
    throw std::invalid_argument("enumerate: transitivity needs a permutation realization");
  std::vector<detail::Slot> slots = detail::relator_slots(*G, g, m, cons);
  int S = static_cast<int>(slots.size());

  // back window: longest suffix whose option table stays small
  int split = S;
  double backsz = 1;
  while (split > 0 && S - split < S - 1) {
    double nxt = backsz * static_cast<double>(slots[split - 1].options.size());
    if (nxt > double(1 << 22)) break;
    backsz = nxt;
    --split;
  }

  // value -> list of back tuples (entry lists), lists in lex order
  std::map<int, std::vector<std::vector<int>>> back;
  {
    std::vector<int> entries;
    std::function<void(int, int)> rec = [&](int i, int v) {
      if (i == S) {
        back[v].push_back(entries);
        return;
      }
      for (const auto& [ent, val] : slots[i].options) {
        entries.insert(entries.end(), ent.begin(), ent.end());
        rec(i + 1, G->op(v, val));
        entries.resize(entries.size() - ent.size());
      }
    };
    rec(split, G->id);
  }

  EnumerateStats stats;
  std::set<std::vector<int>> canon_seen;
  auto emit = [&](const std::vector<int>& entries) {
    SurfaceMonodromy t;
    t.group = G;
    t.g = g;
    for (int i = 0; i < g; ++i) {
      t.a.push_back(entries[2 * i]);
      t.b.push_back(entries[2 * i + 1]);
    }
    t.c.assign(entries.begin() + 2 * g, entries.end());
    if (cons.surjective &&
        static_cast<int>(subgroup_closure(*G, entries).size()) != G->order)
      return;
    if (cons.transitive) {
      std::vector<Permutation> ps;
      for (int x : entries) ps.push_back(G->perm_real[x]);
      if (!is_transitive(ps, G->perm_real[0].degree())) return;
    }
    ++stats.raw;
    canon_seen.insert(canonical_form(t).key());
    sink(t);
  };

  std::vector<int> front;
  std::function<void(int, int)> walk = [&](int i, int v) {
    if (i == split) {
      auto it = back.find(G->inv[v]);
      if (it == back.end()) return;
      std::vector<int> entries = front;
      for (const auto& tail : it->second) {
        entries.resize(front.size());
        entries.insert(entries.end(), tail.begin(), tail.end());
        emit(entries);
      }
      return;
    }
    for (const auto& [ent, val] : slots[i].options) {
      front.insert(front.end(), ent.begin(), ent.end());
      walk(i + 1, G->op(v, val));
      front.resize(front.size() - ent.size());
    }
  };
  walk(0, G->id);
  stats.classes = static_cast<long long>(canon_seen.size());
  return stats;
}

inline std::vector<SurfaceMonodromy> enumerate_all(const GroupPtr& G, int g, int m,
                                                   const EnumerateConstraints& cons = {}) {
  std::vector<SurfaceMonodromy> out;
  enumerate_monodromies(G, g, m, cons, [&](const SurfaceMonodromy& t) { out.push_back(t); });
  return out;
}

}  // namespace braidsurf
