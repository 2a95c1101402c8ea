#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "braidsurf/mcg.hpp"
#include "braidsurf/monodromy.hpp"

namespace braidsurf {

struct OrbitSummary {
  std::vector<SurfaceMonodromy> reps;  // canonical forms, sorted by key
  bool complete = true;                // false when the node budget was hit
  bool moves_complete = true;          // move-set coverage claim for (g,m)
  std::vector<std::string> move_names;
  std::uint64_t moveset_fp = 0;
  std::uint64_t group_fp = 0;

  long long size() const { return static_cast<long long>(reps.size()); }
};

// Canonical form refined by an optional automorphism list: least conjugation
// canonical form over all supplied group maps.
inline SurfaceMonodromy canonical_form_aut(const SurfaceMonodromy& t,
                                           const std::vector<std::vector<int>>* auts) {
  SurfaceMonodromy best = canonical_form(t);
  if (auts) {
    std::vector<int> bk = best.key();
    for (const auto& f : *auts) {
      SurfaceMonodromy cand = canonical_form(apply_group_map(t, f));
      std::vector<int> ck = cand.key();
      if (ck < bk) {
        best = std::move(cand);
        bk = std::move(ck);
      }
    }
  }
  return best;
}

// Deterministic BFS closure of the canonical form under the move set (and
// optionally under Aut(G)). Deduplication happens on canonical keys, so the
// orbit is the set of conjugacy classes reachable from t.
inline OrbitSummary orbit(const SurfaceMonodromy& t, long long budget = 1000000,
                          const std::vector<std::vector<int>>* auts = nullptr) {
  OrbitSummary out;
  out.moves_complete = moves_complete(t.g, t.punctures());
  out.moveset_fp = moveset_fingerprint(t.g, t.punctures());
  out.group_fp = t.group->fingerprint;
  std::vector<MCGMove> moves = mcg_moves(t.g, t.punctures());
  for (const auto& mv : moves) out.move_names.push_back(mv.name);

  std::set<std::vector<int>> seen;
  std::deque<SurfaceMonodromy> queue;
  SurfaceMonodromy c0 = canonical_form_aut(t, auts);
  seen.insert(c0.key());
  queue.push_back(std::move(c0));
  std::vector<SurfaceMonodromy> reps;
  while (!queue.empty()) {
    SurfaceMonodromy cur = std::move(queue.front());
    queue.pop_front();
    reps.push_back(cur);
    for (const auto& mv : moves) {
      SurfaceMonodromy nxt = canonical_form_aut(mv.apply(cur), auts);
      std::vector<int> k = nxt.key();
      if (seen.count(k)) continue;
      if (static_cast<long long>(seen.size()) >= budget) {
        out.complete = false;
        continue;
      }
      seen.insert(std::move(k));
      queue.push_back(std::move(nxt));
    }
  }
  if (!out.complete)
    for (auto& q : queue) reps.push_back(std::move(q));
  std::sort(reps.begin(), reps.end(),
            [](const SurfaceMonodromy& x, const SurfaceMonodromy& y) { return x.key() < y.key(); });
  out.reps = std::move(reps);
  return out;
}

// A tuple is elementary iff its orbit contains one in the handlebody kill
// pattern (every b_i trivial). The pattern is conjugation-invariant, so it
// can be tested on canonical representatives.
struct ElementaryResult {
  enum class Kind { Yes, No, Unknown } kind;
  std::optional<SurfaceMonodromy> witness;
  OrbitSummary summary;
};

inline ElementaryResult is_elementary(const SurfaceMonodromy& t, long long budget = 1000000) {
  if (t.punctures() != 0) throw std::invalid_argument("is_elementary: closed case only");
  if (!validate(t)) throw std::invalid_argument("is_elementary: invalid tuple");
  ElementaryResult r{ElementaryResult::Kind::Unknown, std::nullopt, orbit(t, budget)};
  for (const auto& rep : r.summary.reps) {
    bool kill = true;
    for (int x : rep.b) kill = kill && x == t.group->id;
    if (kill) {
      r.kind = ElementaryResult::Kind::Yes;
      r.witness = rep;
      return r;
    }
  }
  r.kind = r.summary.complete ? ElementaryResult::Kind::No : ElementaryResult::Kind::Unknown;
  return r;
}

}  // namespace braidsurf
