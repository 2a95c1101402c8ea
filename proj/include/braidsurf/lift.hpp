#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidsurf/bn1.hpp"
#include "braidsurf/braid.hpp"
#include "braidsurf/burau.hpp"
#include "braidsurf/monodromy.hpp"
#include "braidsurf/smith.hpp"
#include "braidsurf/splittable.hpp"

namespace braidsurf {

struct MalformedProblem : std::runtime_error {
  explicit MalformedProblem(const std::string& what) : std::runtime_error(what) {}
};

struct PeripheralNotSplittable : std::runtime_error {
  explicit PeripheralNotSplittable(const std::string& what) : std::runtime_error(what) {}
};

// Monodromy into the full symmetric group on n strands with fixed peripheral
// targets: abelianized elements for the exact level, braid words for the
// bounded search (words, when present, must abelianize to the targets).
struct LiftProblem {
  SurfaceMonodromy mono;
  int n = 1;
  std::vector<AbBraid> peripheral;
  std::vector<BraidWord> peripheral_words;

  const Permutation& perm_of(int e) const { return mono.group->perm_real[e]; }
};

inline LiftProblem make_lift_problem(SurfaceMonodromy mono, int n, std::vector<AbBraid> peripheral,
                                     std::vector<BraidWord> peripheral_words = {}) {
  LiftProblem p;
  p.mono = std::move(mono);
  p.n = n;
  p.peripheral = std::move(peripheral);
  p.peripheral_words = std::move(peripheral_words);
  long long fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  if (!p.mono.group->has_perm_real() || p.mono.group->perm_real[0].degree() != n ||
      p.mono.group->order != fact)
    throw MalformedProblem("monodromy group is not the symmetric group on n letters");
  if (!validate(p.mono)) throw MalformedProblem("monodromy does not satisfy the relator");
  if (static_cast<int>(p.peripheral.size()) != p.mono.punctures())
    throw MalformedProblem("one peripheral target per puncture required");
  for (int j = 0; j < p.mono.punctures(); ++j) {
    if (p.peripheral[j].n != n) throw MalformedProblem("peripheral target strand mismatch");
    if (!(p.peripheral[j].perm == p.perm_of(p.mono.c[j])))
      throw MalformedProblem("peripheral target does not project to c_j");
  }
  if (!p.peripheral_words.empty()) {
    if (p.peripheral_words.size() != p.peripheral.size())
      throw MalformedProblem("peripheral word count mismatch");
    for (std::size_t j = 0; j < p.peripheral_words.size(); ++j) {
      if (p.peripheral_words[j].n != n) throw MalformedProblem("peripheral word strand mismatch");
      if (!(abelianize(p.peripheral_words[j]) == p.peripheral[j]))
        throw MalformedProblem("peripheral word does not abelianize to its target");
    }
  }
  return p;
}

inline LiftProblem make_lift_problem_words(SurfaceMonodromy mono, int n,
                                           std::vector<BraidWord> peripheral_words) {
  std::vector<AbBraid> ab;
  for (const auto& w : peripheral_words) ab.push_back(abelianize(w));
  return make_lift_problem(std::move(mono), n, std::move(ab), std::move(peripheral_words));
}

namespace detail {

// Affine element of the abelianized level: permutation plus, per strand
// pair, a linear form in the unknown handle vectors (last column constant).
struct SymAb {
  Permutation perm;
  std::vector<std::vector<long long>> vec;

  SymAb(int n, int nu) : perm(n), vec(n * (n - 1) / 2, std::vector<long long>(nu + 1, 0)) {}
};

inline SymAb sym_unknown(const Permutation& s, int nu, int block) {
  SymAb x(s.degree(), nu);
  x.perm = s;
  int P = static_cast<int>(x.vec.size());
  for (int p = 0; p < P; ++p) x.vec[p][block * P + p] = 1;
  return x;
}

inline SymAb sym_const(const AbBraid& a, int nu) {
  SymAb x(a.n, nu);
  x.perm = a.perm;
  for (std::size_t p = 0; p < a.lk.size(); ++p) x.vec[p].back() = a.lk[p];
  return x;
}

inline SymAb sym_mul(const SymAb& x, const SymAb& y) {
  int n = x.perm.degree();
  SymAb r(n, static_cast<int>(x.vec[0].size()) - 1);
  r.perm = x.perm * y.perm;
  auto kap = ab_kappa(x.perm, y.perm);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int p = pair_index(n, a, b);
      int q = pair_index(n, x.perm(a), x.perm(b));
      for (std::size_t k = 0; k < r.vec[p].size(); ++k) r.vec[p][k] = x.vec[p][k] + y.vec[q][k];
      r.vec[p].back() += kap[p];
    }
  return r;
}

inline SymAb sym_inv(const SymAb& x) {
  int n = x.perm.degree();
  Permutation si = x.perm.inverse();
  auto kap = ab_kappa(x.perm, si);
  SymAb w(n, static_cast<int>(x.vec[0].size()) - 1);
  for (std::size_t p = 0; p < x.vec.size(); ++p) {
    for (std::size_t k = 0; k < x.vec[p].size(); ++k) w.vec[p][k] = -x.vec[p][k];
    w.vec[p].back() -= kap[p];
  }
  SymAb r(n, static_cast<int>(x.vec[0].size()) - 1);
  r.perm = si;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      r.vec[pair_index(n, a, b)] = w.vec[pair_index(n, si(a), si(b))];
  return r;
}

inline SymAb sym_relator(const LiftProblem& p, int nu) {
  SymAb acc(p.n, nu);
  for (int i = 0; i < p.mono.g; ++i) {
    SymAb A = sym_unknown(p.perm_of(p.mono.a[i]), nu, 2 * i);
    SymAb B = sym_unknown(p.perm_of(p.mono.b[i]), nu, 2 * i + 1);
    acc = sym_mul(sym_mul(sym_mul(sym_mul(acc, A), B), sym_inv(A)), sym_inv(B));
  }
  for (const auto& t : p.peripheral) acc = sym_mul(acc, sym_const(t, nu));
  return acc;
}

}  // namespace detail

struct Bn1Lift {
  bool solvable = false;
  std::vector<AbBraid> a_lifts, b_lifts;
  std::vector<long long> invariant_factors;
};

// Exact lift to the abelianized level: the relator's vector part is affine
// in the unknown handle vectors (permutation parts are pinned to the section
// lifts), so solvability is one integer linear system.
inline Bn1Lift lift_to_bn1(const LiftProblem& p) {
  int P = p.n * (p.n - 1) / 2;
  int nu = 2 * p.mono.g * P;
  detail::SymAb R = detail::sym_relator(p, nu);
  if (!R.perm.is_identity()) throw std::logic_error("relator permutation part not trivial");
  IntMat M(P, std::vector<long long>(nu, 0));
  std::vector<long long> rhs(P, 0);
  for (int q = 0; q < P; ++q) {
    for (int k = 0; k < nu; ++k) M[q][k] = R.vec[q][k];
    rhs[q] = -R.vec[q].back();
  }
  SmithForm f = smith_form(M);
  Bn1Lift out;
  out.invariant_factors = f.invariant_factors;
  auto x = solve_from(f, rhs);
  if (!x) return out;
  out.solvable = true;
  for (int i = 0; i < p.mono.g; ++i) {
    std::vector<long long> va(x->begin() + (2 * i) * P, x->begin() + (2 * i + 1) * P);
    std::vector<long long> vb(x->begin() + (2 * i + 1) * P, x->begin() + (2 * i + 2) * P);
    out.a_lifts.emplace_back(p.n, p.perm_of(p.mono.a[i]), std::move(va));
    out.b_lifts.emplace_back(p.n, p.perm_of(p.mono.b[i]), std::move(vb));
  }
  return out;
}

// Independent recomputation of the relator product at the abelianized level.
inline AbBraid bn1_relator_value(const LiftProblem& p, const std::vector<AbBraid>& a_lifts,
                                 const std::vector<AbBraid>& b_lifts) {
  AbBraid acc = AbBraid::identity(p.n);
  for (int i = 0; i < p.mono.g; ++i) {
    const AbBraid &A = a_lifts[i], &B = b_lifts[i];
    acc = ab_mul(acc, ab_mul(ab_mul(A, B), ab_mul(ab_inv(A), ab_inv(B))));
  }
  for (const auto& t : p.peripheral) acc = ab_mul(acc, t);
  return acc;
}

// Unsolvable problems must stay unsolvable after a genus stabilization;
// a violation would mean the affine reduction lost solutions.
struct ObstructionReport {
  bool solvable = false;
  std::vector<long long> invariant_factors;
  bool stabilized_solvable = false;
  std::vector<std::string> violations;
};

inline ObstructionReport obstruction_report(const LiftProblem& p) {
  ObstructionReport r;
  Bn1Lift base = lift_to_bn1(p);
  r.solvable = base.solvable;
  r.invariant_factors = base.invariant_factors;
  LiftProblem q = p;
  q.mono = stabilize(p.mono, 1);
  Bn1Lift stab = lift_to_bn1(q);
  r.stabilized_solvable = stab.solvable;
  if (!r.solvable && r.stabilized_solvable)
    r.violations.push_back("unsolvable problem became solvable after stabilization");
  if (r.solvable && !r.stabilized_solvable)
    r.violations.push_back("solvable problem lost its lift after stabilization");
  return r;
}

struct BnLift {
  bool found = false;
  bool swept = false;  // entire bounded space tried
  std::vector<BraidWord> a_words, b_words;
  std::vector<std::string> certificates;
};

namespace detail {

inline bool braid_word_certifies(const LiftProblem& p, const std::vector<BraidWord>& wa,
                                 const std::vector<BraidWord>& wb, std::vector<std::string>& certs) {
  Word rel;
  for (int i = 0; i < p.mono.g; ++i) {
    const Word &u = wa[i].letters, &v = wb[i].letters;
    Word c = fw_mul(fw_mul(Word(u), Word(v)), fw_mul(fw_inv(Word(u)), fw_inv(Word(v))));
    rel = fw_mul(rel, c);
  }
  for (const auto& t : p.peripheral_words) rel = fw_mul(rel, Word(t.letters));
  BraidWord R(p.n, rel);
  certs.clear();
  if (!underlying_permutation(R).is_identity()) return false;
  certs.push_back("sym");
  if (!abelianize(R).is_identity()) return false;
  certs.push_back("bn1");
  if (p.n >= 2) {
    if (!(reduced_burau_symbolic(R) == mat_eye(p.n - 1, Laurent(1)))) return false;
    certs.push_back("burau-reduced");
  }
  return true;
}

}  // namespace detail

// Iterative deepening on total word length; every candidate assignment is
// screened at the symmetric level by construction, then certified through
// the abelianized level and the symbolic reduced Burau matrix. A found lift
// is a lift in those quotients, nothing stronger.
inline BnLift lift_to_bn_bounded(const LiftProblem& p, int len_max, long long budget = 2000000) {
  if (p.mono.punctures() > 0 && p.peripheral_words.empty())
    throw MalformedProblem("bounded search needs peripheral words");
  for (const auto& w : p.peripheral_words)
    if (splittable_check(w).kind == SplitKind::InvariantFail)
      throw PeripheralNotSplittable("peripheral word fails a splittability invariant");

  // candidates per handle slot, grouped by length, letters lex within length
  int slots = 2 * p.mono.g;
  std::vector<Permutation> want;
  for (int i = 0; i < p.mono.g; ++i) {
    want.push_back(p.perm_of(p.mono.a[i]));
    want.push_back(p.perm_of(p.mono.b[i]));
  }
  std::vector<std::vector<BraidWord>> cand(slots);
  {
    std::vector<Word> layer{Word{}};
    for (int len = 0; len <= len_max; ++len) {
      std::vector<Word> next;
      for (const auto& w : layer) {
        Permutation q = underlying_permutation(BraidWord(p.n, w));
        for (int s = 0; s < slots; ++s)
          if (q == want[s]) cand[s].push_back(BraidWord(p.n, w));
        if (len < len_max)
          for (int g = -(p.n - 1); g <= p.n - 1; ++g) {
            if (g == 0 || (!w.empty() && w.back() == -g)) continue;
            Word x = w;
            x.push_back(g);
            next.push_back(std::move(x));
          }
      }
      layer = std::move(next);
    }
  }
  BnLift out;
  for (int s = 0; s < slots; ++s)
    if (cand[s].empty()) {
      out.swept = true;
      return out;  // some image has no word within the bound
    }

  long long nodes = budget;
  std::vector<int> pick(slots, 0);
  std::vector<std::string> certs;
  std::function<bool(int, int)> walk = [&](int s, int remaining) {
    if (--nodes < 0) return false;
    if (s == slots) {
      if (remaining != 0) return false;
      std::vector<BraidWord> wa, wb;
      for (int i = 0; i < p.mono.g; ++i) {
        wa.push_back(cand[2 * i][pick[2 * i]]);
        wb.push_back(cand[2 * i + 1][pick[2 * i + 1]]);
      }
      if (!detail::braid_word_certifies(p, wa, wb, certs)) return false;
      out.found = true;
      out.a_words = std::move(wa);
      out.b_words = std::move(wb);
      out.certificates = certs;
      return true;
    }
    for (int k = 0; k < static_cast<int>(cand[s].size()); ++k) {
      int len = static_cast<int>(cand[s][k].letters.size());
      if (len > remaining) break;  // grouped by length: nothing shorter follows
      pick[s] = k;
      if (walk(s + 1, remaining - len)) return true;
    }
    return false;
  };

  if (slots == 0) {
    // no unknowns: certify the peripheral product itself
    out.swept = true;
    std::vector<BraidWord> none;
    if (detail::braid_word_certifies(p, none, none, certs)) {
      out.found = true;
      out.certificates = certs;
    }
    return out;
  }
  for (int total = 0; total <= slots * len_max; ++total) {
    if (walk(0, total)) {
      out.swept = true;
      return out;
    }
    if (nodes < 0) return out;  // budget hit: not swept
  }
  out.swept = true;
  return out;
}

}  // namespace braidsurf
