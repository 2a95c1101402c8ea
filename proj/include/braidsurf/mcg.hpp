#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "braidsurf/hash.hpp"
#include "braidsurf/monodromy.hpp"

namespace braidsurf {

// Tuple-rewriting rule on monodromies. Every emitted move comes from a free
// group automorphism that fixes the surface relator word exactly, so it is a
// bijection on the finite set of valid tuples and preserves each peripheral
// conjugacy class. Bijections on a finite set have forward-reachable
// inverses, so plain forward closure under these moves already computes the
// full orbit of the generated group.
struct MCGMove {
  std::string name;
  std::function<SurfaceMonodromy(const SurfaceMonodromy&)> apply;
};

namespace detail {

// Twist mixing adjacent handles i, i+1. With (x,y,z,w) = (a_i,b_i,a_{i+1},b_{i+1}):
//   y -> (zw) z (zw)^-1 y,   w -> [w,z] y x y^-1 z w
// fixes [x,y][z,w] identically and acts on homology by y += z, w += x + z,
// the transvection the per-handle twists cannot reach.
inline SurfaceMonodromy apply_mix(const SurfaceMonodromy& t, int i) {
  const FiniteGroup& G = *t.group;
  SurfaceMonodromy r = t;
  int x = t.a[i], y = t.b[i], z = t.a[i + 1], w = t.b[i + 1];
  int v = G.op(z, w);
  r.b[i] = G.op(G.conj(z, v), y);
  int tail = G.op(G.conj(x, y), G.op(z, w));
  r.b[i + 1] = G.op(G.comm(w, z), tail);
  return r;
}

// Swap handles i and i+1 across the twist u = [a_i,b_i].
inline SurfaceMonodromy apply_swap(const SurfaceMonodromy& t, int i) {
  const FiniteGroup& G = *t.group;
  SurfaceMonodromy r = t;
  int u = G.comm(t.a[i], t.b[i]);
  r.a[i] = G.conj(t.a[i + 1], u);
  r.b[i] = G.conj(t.b[i + 1], u);
  r.a[i + 1] = t.a[i];
  r.b[i + 1] = t.b[i];
  return r;
}

// Pure braid generator on punctures r < s (0-based), Artin action:
//   c_r -> (c_r c_s) c_r (c_r c_s)^-1,  c_s -> c_r c_s c_r^-1,
//   c_i -> [c_r,c_s] c_i [c_r,c_s]^-1 for r < i < s.
inline SurfaceMonodromy apply_pure_braid(const SurfaceMonodromy& t, int r, int s) {
  const FiniteGroup& G = *t.group;
  SurfaceMonodromy out = t;
  int cr = t.c[r], cs = t.c[s];
  int u = G.op(cr, cs);
  out.c[r] = G.conj(cr, u);
  out.c[s] = G.conj(cs, cr);
  int v = G.comm(cr, cs);
  for (int i = r + 1; i < s; ++i) out.c[i] = G.conj(t.c[i], v);
  return out;
}

// Twist about the curve enclosing the last handle and punctures 1..j:
// conjugate the enclosed entries by the enclosed total holonomy.
inline SurfaceMonodromy apply_handle_puncture(const SurfaceMonodromy& t, int j) {
  const FiniteGroup& G = *t.group;
  SurfaceMonodromy r = t;
  int v = G.comm(t.a[t.g - 1], t.b[t.g - 1]);
  for (int i = 0; i < j; ++i) v = G.op(v, t.c[i]);
  r.a[t.g - 1] = G.conj(t.a[t.g - 1], v);
  r.b[t.g - 1] = G.conj(t.b[t.g - 1], v);
  for (int i = 0; i < j; ++i) r.c[i] = G.conj(t.c[i], v);
  return r;
}

// Twist about the curve separating all handles from all punctures.
inline SurfaceMonodromy apply_boundary(const SurfaceMonodromy& t) {
  const FiniteGroup& G = *t.group;
  SurfaceMonodromy r = t;
  int v = G.id;
  for (int i = 0; i < t.g; ++i) v = G.op(v, G.comm(t.a[i], t.b[i]));
  for (int i = 0; i < t.g; ++i) {
    r.a[i] = G.conj(t.a[i], v);
    r.b[i] = G.conj(t.b[i], v);
  }
  return r;
}

}  // namespace detail

// Move set for genus g with m punctures. Complete for closed surfaces
// (per-handle twists, adjacent mixing twists and swaps) and for the sphere
// (full set of pure braid generators); the mixed case adds handle-puncture
// interaction twists but is best-effort, see moves_complete.
inline std::vector<MCGMove> mcg_moves(int g, int m) {
  std::vector<MCGMove> moves;
  for (int i = 0; i < g; ++i) {
    moves.push_back({"ta" + std::to_string(i + 1), [i](const SurfaceMonodromy& t) {
                       SurfaceMonodromy r = t;
                       r.b[i] = t.group->op(t.b[i], t.a[i]);
                       return r;
                     }});
    moves.push_back({"tb" + std::to_string(i + 1), [i](const SurfaceMonodromy& t) {
                       SurfaceMonodromy r = t;
                       r.a[i] = t.group->op(t.a[i], t.group->inv_of(t.b[i]));
                       return r;
                     }});
  }
  for (int i = 0; i + 1 < g; ++i) {
    moves.push_back({"mix" + std::to_string(i + 1),
                     [i](const SurfaceMonodromy& t) { return detail::apply_mix(t, i); }});
    moves.push_back({"swap" + std::to_string(i + 1),
                     [i](const SurfaceMonodromy& t) { return detail::apply_swap(t, i); }});
  }
  for (int r = 0; r < m; ++r)
    for (int s = r + 1; s < m; ++s)
      moves.push_back({"A" + std::to_string(r + 1) + "_" + std::to_string(s + 1),
                       [r, s](const SurfaceMonodromy& t) {
                         return detail::apply_pure_braid(t, r, s);
                       }});
  if (g >= 1 && m >= 1) {
    for (int j = 1; j <= m; ++j)
      moves.push_back({"hp" + std::to_string(j), [j](const SurfaceMonodromy& t) {
                         return detail::apply_handle_puncture(t, j);
                       }});
    moves.push_back(
        {"bd", [](const SurfaceMonodromy& t) { return detail::apply_boundary(t); }});
  }
  return moves;
}

inline bool moves_complete(int g, int m) { return m == 0 || g == 0; }

inline std::uint64_t moveset_fingerprint(int g, int m) {
  Fnv1a f;
  f.feed_i32(g);
  f.feed_i32(m);
  for (const auto& mv : mcg_moves(g, m)) f.feed_str(mv.name);
  return f.h;
}

}  // namespace braidsurf
