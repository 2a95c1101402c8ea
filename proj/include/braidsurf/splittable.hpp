#pragma once

#include <optional>
#include <string>
#include <vector>

#include "braidsurf/alexander.hpp"
#include "braidsurf/bn1.hpp"

namespace braidsurf {

// Verdicts for "is the closure of w a trivial link of split unknots".
// Full unlink recognition is out of scope: the checker is a semi-decision
// built from three necessary-condition filters plus verifiable certificates.

struct IdentityBraid : std::runtime_error {
  IdentityBraid() : std::runtime_error("identity braid carries no branch point") {}
};

struct UnknotMove {
  std::string type;  // cancel | farswap | braid | rotate | destab
  int arg = 0;       // position (cancel/farswap/braid) or shift (rotate)
};

struct SplitBlock {
  int lo = 1, hi = 1;  // 1-based inclusive strand interval
  Word word;           // braid word on hi-lo+1 strands
  std::vector<UnknotMove> witness;
};

struct SplitCertificate {
  Word conjugator;  // ambient braid word
  std::vector<SplitBlock> blocks;
};

enum class SplitKind { CertifiedYes, InvariantFail, Unknown };

struct SplittableVerdict {
  SplitKind kind = SplitKind::Unknown;
  std::string reason;
  std::optional<SplitCertificate> cert;
  std::vector<std::string> checked_quotients;
};

namespace detail {

inline Word free_reduce_braid(const Word& w) { return fw_reduce(w); }

// Sub-braid of the strands with in_comp set, generator indices renumbered to
// the ranks of the surviving strands.
inline BraidWord component_subbraid(const BraidWord& w, const std::vector<char>& in_comp) {
  int n = w.n, k = 0;
  for (char c : in_comp) k += c ? 1 : 0;
  std::vector<int> at(n);
  for (int i = 0; i < n; ++i) at[i] = i;
  Word sub;
  for (int x : w.letters) {
    int i = std::abs(x) - 1;
    if (in_comp[at[i]] && in_comp[at[i + 1]]) {
      int r = 0;
      for (int p = 0; p < i; ++p)
        if (in_comp[at[p]]) ++r;
      sub.push_back(x > 0 ? r + 1 : -(r + 1));
    }
    std::swap(at[i], at[i + 1]);
  }
  return BraidWord(std::max(k, 1), std::move(sub));
}

// Applies one witness move; returns false when it does not apply.
inline bool apply_unknot_move(int& strands, Word& w, const UnknotMove& mv) {
  int len = static_cast<int>(w.size());
  if (mv.type == "cancel") {
    if (mv.arg < 0 || mv.arg + 1 >= len || w[mv.arg] != -w[mv.arg + 1]) return false;
    w.erase(w.begin() + mv.arg, w.begin() + mv.arg + 2);
    return true;
  }
  if (mv.type == "farswap") {
    if (mv.arg < 0 || mv.arg + 1 >= len) return false;
    if (std::abs(std::abs(w[mv.arg]) - std::abs(w[mv.arg + 1])) < 2) return false;
    std::swap(w[mv.arg], w[mv.arg + 1]);
    return true;
  }
  if (mv.type == "braid") {
    if (mv.arg < 0 || mv.arg + 2 >= len) return false;
    int a = w[mv.arg], b = w[mv.arg + 1], c = w[mv.arg + 2];
    if (a != c || (a > 0) != (b > 0) || std::abs(std::abs(a) - std::abs(b)) != 1) return false;
    w[mv.arg] = b;
    w[mv.arg + 1] = a;
    w[mv.arg + 2] = b;
    return true;
  }
  if (mv.type == "rotate") {  // conjugation: closure-preserving cyclic shift
    if (len == 0) return true;
    int k = ((mv.arg % len) + len) % len;
    std::rotate(w.begin(), w.begin() + k, w.end());
    return true;
  }
  if (mv.type == "destab") {  // Markov destabilization at the top strand
    if (strands < 2 || len == 0) return false;
    if (std::abs(w.back()) != strands - 1) return false;
    for (int i = 0; i + 1 < len; ++i)
      if (std::abs(w[i]) == strands - 1) return false;
    w.pop_back();
    strands -= 1;
    return true;
  }
  return false;
}

inline bool verify_unknot_witness(const SplitBlock& b) {
  int strands = b.hi - b.lo + 1;
  Word w = b.word;
  for (const auto& mv : b.witness)
    if (!apply_unknot_move(strands, w, mv)) return false;
  if (strands == 1 && w.empty()) return true;
  if (strands == 2 && w.size() == 1) return true;
  return false;
}

}  // namespace detail

// Checks a certificate: blocks partition the strands into intervals, each
// block closure is one unknotted component, and conjugator * split *
// conjugator^-1 equals w in the decidable quotients (S_n, the abelianized
// braid group, symbolic reduced Burau). Equality in B_n itself is not
// claimed; the verdict records which quotients were checked.
inline bool verify_split_certificate(const BraidWord& w, const SplitCertificate& cert,
                                     std::vector<std::string>* checked = nullptr) {
  int n = w.n;
  std::vector<char> covered(n, 0);
  for (const auto& b : cert.blocks) {
    if (b.lo < 1 || b.hi > n || b.lo > b.hi) return false;
    for (int s = b.lo; s <= b.hi; ++s) {
      if (covered[s - 1]) return false;
      covered[s - 1] = 1;
    }
    int k = b.hi - b.lo + 1;
    for (int x : b.word)
      if (x == 0 || std::abs(x) >= k) return false;
    Permutation p = underlying_permutation(BraidWord(std::max(k, 1), b.word));
    auto cyc = p.cycles();
    bool one_cycle = (k == 1 && cyc.empty()) || (cyc.size() == 1 && (int)cyc[0].size() == k);
    if (!one_cycle) return false;
    if (!detail::verify_unknot_witness(b)) return false;
  }
  for (char c : covered)
    if (!c) return false;

  Word split;
  for (const auto& b : cert.blocks)
    for (int x : b.word) split.push_back(x > 0 ? x + b.lo - 1 : x - (b.lo - 1));
  BraidWord cand = bw_conj(BraidWord(n, cert.conjugator), BraidWord(n, split));

  if (!(underlying_permutation(cand) == underlying_permutation(w))) return false;
  if (checked) checked->push_back("sym");
  if (!(abelianize(cand) == abelianize(w))) return false;
  if (checked) checked->push_back("ab");
  if (!(reduced_burau_symbolic(cand) == reduced_burau_symbolic(w))) return false;
  if (checked) checked->push_back("burau[t]");
  return true;
}

inline SplittableVerdict splittable_check(const BraidWord& w,
                                          const std::optional<SplitCertificate>& cert = {}) {
  Word reduced = detail::free_reduce_braid(w.letters);
  if (reduced.empty()) throw IdentityBraid();
  BraidWord v(w.n, reduced);
  AbBraid ab = abelianize(v);
  if (ab.is_identity() && reduced_burau_symbolic(v) == mat_eye(w.n - 1, Laurent(1)))
    throw IdentityBraid();

  // components of the closure = cycles of the underlying permutation
  CrossingData cd = crossing_data(v);
  int n = v.n;
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    for (int x = s; comp[x] < 0; x = cd.perm(x)) comp[x] = ncomp;
    ++ncomp;
  }

  // filter (a): pairwise linking numbers between distinct components
  std::vector<std::vector<long long>> link(ncomp, std::vector<long long>(ncomp, 0));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (comp[a] != comp[b]) {
        int ci = std::min(comp[a], comp[b]), cj = std::max(comp[a], comp[b]);
        link[ci][cj] += cd.cross[pair_index(n, a, b)];
      }
  for (int i = 0; i < ncomp; ++i)
    for (int j = i + 1; j < ncomp; ++j)
      if (link[i][j] != 0)
        return {SplitKind::InvariantFail, "linking", std::nullopt, {}};

  // filters (b) and (c) per component
  for (int ci = 0; ci < ncomp; ++ci) {
    std::vector<char> in(n, 0);
    int k = 0;
    for (int s = 0; s < n; ++s)
      if (comp[s] == ci) {
        in[s] = 1;
        ++k;
      }
    if (k == 1) continue;
    BraidWord sub = detail::component_subbraid(v, in);
    if (!(alexander_poly(sub) == Laurent(1)))
      return {SplitKind::InvariantFail, "alexander", std::nullopt, {}};
    if (std::abs(writhe(sub)) > k - 1)
      return {SplitKind::InvariantFail, "writhe", std::nullopt, {}};
  }

  if (cert) {
    std::vector<std::string> checked;
    if (verify_split_certificate(v, *cert, &checked))
      return {SplitKind::CertifiedYes, "supplied certificate", *cert, checked};
    return {SplitKind::Unknown, "supplied certificate failed verification", std::nullopt, {}};
  }

  // built-in certificate: a syntactic conjugate of a single generator
  Word core = reduced;
  Word conj;
  while (core.size() >= 3 && core.front() == -core.back()) {
    conj.push_back(core.front());
    core.erase(core.begin());
    core.pop_back();
  }
  if (core.size() == 1) {
    int i = std::abs(core[0]);
    SplitCertificate c;
    c.conjugator = conj;
    for (int s = 1; s <= n; ++s) {
      if (s == i) {
        c.blocks.push_back({i, i + 1, {core[0] > 0 ? 1 : -1}, {}});
        ++s;
      } else
        c.blocks.push_back({s, s, {}, {}});
    }
    std::vector<std::string> checked;
    if (verify_split_certificate(v, c, &checked))
      return {SplitKind::CertifiedYes, "band generator", c, checked};
  }
  return {SplitKind::Unknown, "no certificate", std::nullopt, {}};
}

}  // namespace braidsurf
