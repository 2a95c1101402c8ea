#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidsurf/freegroup.hpp"
#include "braidsurf/group.hpp"
#include "braidsurf/monodromy.hpp"

namespace braidsurf {

struct SearchExhausted : std::runtime_error {
  explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

// G presented as a quotient of the free group on `rank` letters; images give
// the letter targets and every relator has to die in G.
struct GroupPresentation {
  int rank = 0;
  std::vector<Word> relators;
  std::vector<int> images;
  GroupPtr group;

  static GroupPresentation make(int rank, std::vector<Word> relators, std::vector<int> images,
                                GroupPtr group) {
    GroupPresentation P;
    P.rank = rank;
    P.relators = std::move(relators);
    P.images = std::move(images);
    P.group = std::move(group);
    if (rank < 1 || static_cast<int>(P.images.size()) != rank)
      throw std::invalid_argument("presentation: rank/images mismatch");
    for (int g : P.images)
      if (g < 0 || g >= P.group->order) throw std::invalid_argument("presentation: image range");
    for (const auto& r : P.relators) {
      for (int x : r)
        if (x == 0 || std::abs(x) > rank)
          throw std::invalid_argument("presentation: relator letter out of range");
      if (P.group->eval_word(r, P.images) != P.group->id)
        throw std::invalid_argument("presentation: relator does not vanish");
    }
    if (static_cast<int>(subgroup_closure(*P.group, P.images).size()) != P.group->order)
      throw std::invalid_argument("presentation: images do not generate");
    return P;
  }
};

// Standard presentations for the small targets the search is used with.
inline GroupPresentation preset_presentation(const GroupPtr& G) {
  auto order_n = [&](int n, const std::vector<int>& avoid) {
    for (int x = 0; x < G->order; ++x) {
      if (G->element_order(x) != n) continue;
      if (std::find(avoid.begin(), avoid.end(), x) == avoid.end()) return x;
    }
    return -1;
  };
  // cyclic: <x | x^n>
  for (int x = 0; x < G->order; ++x)
    if (G->is_abelian() && G->element_order(x) == G->order) {
      Word r(G->order, 1);
      return GroupPresentation::make(1, {r}, {x}, G);
    }
  if (G->order == 4 && G->is_abelian()) {
    int x = order_n(2, {}), y = order_n(2, {x});
    return GroupPresentation::make(2, {{1, 1}, {2, 2}, {1, 2, 1, 2}}, {x, y}, G);
  }
  if (G->order == 9 && G->is_abelian()) {
    int x = order_n(3, {});
    int y = -1;
    auto span = subgroup_closure(*G, {x});
    for (int e = 0; e < G->order; ++e)
      if (G->element_order(e) == 3 && !std::binary_search(span.begin(), span.end(), e)) {
        y = e;
        break;
      }
    return GroupPresentation::make(2, {{1, 1, 1}, {2, 2, 2}, {1, 2, -1, -2}}, {x, y}, G);
  }
  if (G->order == 6 && !G->is_abelian()) {
    int x = order_n(2, {}), y = order_n(3, {});
    return GroupPresentation::make(2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}, {x, y}, G);
  }
  throw std::invalid_argument("no preset presentation for group: " + G->descriptor);
}

namespace detail {

// Freely reduced words of length <= len, shortest first, lex within a length.
inline std::vector<Word> reduced_words(int rank, int len) {
  std::vector<Word> out{Word{}};
  std::size_t lo = 0;
  for (int l = 1; l <= len; ++l) {
    std::size_t hi = out.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (int s = -rank; s <= rank; ++s) {
        if (s == 0 || (!out[i].empty() && out[i].back() == -s)) continue;
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    lo = hi;
  }
  return out;
}

struct OclSlot {
  // candidate commutator words, deduped, lex-sorted; pair index recovers the
  // witness (u, v)
  std::vector<Word> value;
  std::vector<std::pair<Word, Word>> parts;
};

inline OclSlot commutator_slot(const std::vector<Word>& us, const std::vector<Word>& vs) {
  std::map<Word, std::pair<Word, Word>> seen;
  for (const auto& u : us)
    for (const auto& v : vs) {
      Word c = fw_comm(u, v);
      seen.emplace(std::move(c), std::make_pair(u, v));
    }
  OclSlot s;
  for (auto& [w, p] : seen) {
    s.value.push_back(w);
    s.parts.push_back(p);
  }
  return s;
}

}  // namespace detail

// Smallest n = g + s such that prod [a~_i, b~_i] * prod_{j<=s} [r_j, f_j]
// freely reduces to the empty word, with a~_i, b~_i lifts of the handle
// images, r_j conjugates of presentation relators (conjugator length
// <= len_max) and |f_j| <= len_max. found=false with exhausted=true means
// the bounded space holds no expression.
struct OclResult {
  bool found = false;
  int n = -1;
  int stabilizations = -1;
  bool exhausted = false;
  std::vector<std::pair<Word, Word>> handle_lifts;
  std::vector<std::pair<Word, Word>> stab_lifts;
};

inline OclResult ocl_bounded(const SurfaceMonodromy& t, const GroupPresentation& P, int n_max,
                             int len_max, long long budget = 50000000) {
  if (t.punctures() != 0) throw std::invalid_argument("ocl: punctured case not defined");
  if (t.group->fingerprint != P.group->fingerprint)
    throw std::invalid_argument("ocl: presentation group mismatch");
  if (n_max < t.g) throw std::invalid_argument("ocl: n_max below genus");

  auto words = detail::reduced_words(P.rank, len_max);
  std::vector<std::vector<Word>> lifts(t.group->order);
  for (const auto& w : words) lifts[t.group->eval_word(w, P.images)].push_back(w);

  std::vector<detail::OclSlot> handle(t.g);
  for (int i = 0; i < t.g; ++i) {
    if (lifts[t.a[i]].empty() || lifts[t.b[i]].empty())
      return {};  // no lift at this length: nothing to search, not exhausted
    handle[i] = detail::commutator_slot(lifts[t.a[i]], lifts[t.b[i]]);
  }

  // stabilization slot: [w z^t w^-1, f]
  std::vector<Word> rel_conj;
  {
    std::map<Word, int> seen;
    for (const auto& z : P.relators)
      for (int sgn : {1, -1})
        for (const auto& w : words) {
          Word r = fw_conj(w, sgn > 0 ? z : fw_inv(z));
          if (!r.empty()) seen.emplace(std::move(r), 0);
        }
    for (auto& [w, _] : seen) rel_conj.push_back(w);
  }
  std::vector<Word> fs;
  for (const auto& w : words)
    if (!w.empty()) fs.push_back(w);
  detail::OclSlot stab = detail::commutator_slot(rel_conj, fs);

  long long nodes = budget;
  auto spend = [&](long long k) {
    nodes -= k;
    if (nodes < 0) throw SearchExhausted("ocl: node budget exhausted");
  };

  for (int s = 0; n_max >= t.g && s <= n_max - t.g; ++s) {
    std::vector<const detail::OclSlot*> slots;
    for (int i = 0; i < t.g; ++i) slots.push_back(&handle[i]);
    for (int j = 0; j < s; ++j) slots.push_back(&stab);
    int S = static_cast<int>(slots.size());

    if (S == 0) {
      OclResult r;
      r.found = true;
      r.n = 0;
      r.stabilizations = 0;
      r.exhausted = true;
      return r;
    }
    if (s > 0 && stab.value.empty()) break;

    // suffix window: grow from the back while the option product stays small
    int back = 0;
    long long win = 1;
    while (back < S - 1 && win * static_cast<long long>(slots[S - 1 - back]->value.size()) <= (1 << 18))
      win *= static_cast<long long>(slots[S - 1 - back++]->value.size());
    if (back == 0) back = 1;

    std::map<Word, std::vector<int>> suffix;  // product -> first (lex) choice
    std::vector<int> choice(back, 0);
    std::function<void(int, const Word&)> build = [&](int d, const Word& acc) {
      spend(1);
      if (d == back) {
        suffix.emplace(acc, choice);
        return;
      }
      const auto& sl = *slots[S - back + d];
      for (int k = 0; k < static_cast<int>(sl.value.size()); ++k) {
        choice[d] = k;
        build(d + 1, fw_mul(acc, sl.value[k]));
      }
    };
    build(0, Word{});

    int front = S - back;
    std::vector<int> fchoice(front, 0);
    std::vector<int> hit;
    std::function<bool(int, const Word&)> walk = [&](int d, const Word& acc) {
      spend(1);
      if (d == front) {
        auto it = suffix.find(fw_inv(acc));
        if (it == suffix.end()) return false;
        hit = fchoice;
        hit.insert(hit.end(), it->second.begin(), it->second.end());
        return true;
      }
      const auto& sl = *slots[d];
      for (int k = 0; k < static_cast<int>(sl.value.size()); ++k) {
        fchoice[d] = k;
        if (walk(d + 1, fw_mul(acc, sl.value[k]))) return true;
      }
      return false;
    };
    if (walk(0, Word{})) {
      OclResult r;
      r.found = true;
      r.n = t.g + s;
      r.stabilizations = s;
      r.exhausted = true;
      for (int i = 0; i < t.g; ++i) r.handle_lifts.push_back(handle[i].parts[hit[i]]);
      for (int j = 0; j < s; ++j) r.stab_lifts.push_back(stab.parts[hit[t.g + j]]);
      return r;
    }
  }
  OclResult r;
  r.exhausted = true;
  return r;
}

}  // namespace braidsurf
