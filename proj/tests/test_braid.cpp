#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "braidsurf/alexander.hpp"
#include "braidsurf/bn1.hpp"
#include "braidsurf/braid.hpp"
#include "braidsurf/burau.hpp"
#include "braidsurf/quotients.hpp"
#include "braidsurf/splittable.hpp"

using namespace braidsurf;

namespace {

BraidWord random_word(std::mt19937& rng, int n, int len) {
  std::uniform_int_distribution<int> gen(1, n - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(sgn(rng) ? gen(rng) : -gen(rng));
  return BraidWord(n, w);
}

}  // namespace

TEST_CASE("braid word validation") {
  REQUIRE_NOTHROW(BraidWord(3, {1, -2, 1}));
  REQUIRE_THROWS_AS(BraidWord(3, {0}), std::invalid_argument);
  REQUIRE_THROWS_AS(BraidWord(3, {3}), std::invalid_argument);
  REQUIRE_THROWS_AS(BraidWord(0, {}), std::invalid_argument);
  REQUIRE(BraidWord(1, {}).length() == 0);
}

TEST_CASE("underlying permutation acts left to right") {
  // sigma_1 then sigma_2 sends strand 0 -> 1 -> 2
  BraidWord w(3, {1, 2});
  Permutation p = underlying_permutation(w);
  REQUIRE(p(0) == 2);
  REQUIRE(p(1) == 0);
  REQUIRE(p(2) == 1);
  REQUIRE(underlying_permutation(BraidWord(3, {1})) == Permutation::transposition(3, 0, 1));
  REQUIRE(underlying_permutation(BraidWord(3, {-1})) == Permutation::transposition(3, 0, 1));
}

TEST_CASE("writhe and concatenation") {
  BraidWord a(3, {1, -2}), b(3, {2, 2});
  REQUIRE(writhe(a) == 0);
  REQUIRE(writhe(b) == 2);
  REQUIRE(writhe(bw_concat(a, b)) == 2);
  REQUIRE(writhe(bw_inverse(b)) == -2);
  REQUIRE(writhe(bw_conj(a, b)) == writhe(b));
}

TEST_CASE("abelianized braid group is a crossed product") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 3;
    BraidWord u = random_word(rng, n, 6), v = random_word(rng, n, 6);
    // abelianize is a homomorphism onto the level-one quotient
    REQUIRE(abelianize(bw_concat(u, v)) == ab_mul(abelianize(u), abelianize(v)));
    REQUIRE(abelianize(bw_inverse(u)) == ab_inv(abelianize(u)));
    REQUIRE(ab_mul(abelianize(u), ab_inv(abelianize(u))).is_identity());
    REQUIRE(abelianize(u).perm == underlying_permutation(u));
  }
}

TEST_CASE("abelianized linking numbers") {
  // sigma_1 is itself the positive section braid of its transposition
  AbBraid x = abelianize(BraidWord(3, {1}));
  REQUIRE(x == ab_section(underlying_permutation(BraidWord(3, {1}))));
  // sigma_1^2 is the pure generator for the pair 0,1: one full twist
  AbBraid y = abelianize(BraidWord(3, {1, 1}));
  REQUIRE(y.perm.is_identity());
  REQUIRE(y.lk[pair_index(3, 0, 1)] == 1);
  REQUIRE(y.lk[pair_index(3, 0, 2)] == 0);
  REQUIRE(y.lk[pair_index(3, 1, 2)] == 0);
  // linking adds under powers and negates under inversion
  REQUIRE(abelianize(BraidWord(3, {1, 1, 1, 1})).lk[pair_index(3, 0, 1)] == 2);
  REQUIRE(abelianize(BraidWord(3, {-1, -1})).lk[pair_index(3, 0, 1)] == -1);
}

TEST_CASE("sections of the symmetric group") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 4;
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    Permutation s{std::vector<int>(img)};
    REQUIRE(underlying_permutation(section_word(s)) == s);
    REQUIRE(abelianize(section_word(s)) == ab_section(s));
  }
}

TEST_CASE("reduced Burau satisfies the braid relations") {
  REQUIRE(reduced_burau_symbolic(BraidWord(3, {1, 2, 1})) ==
          reduced_burau_symbolic(BraidWord(3, {2, 1, 2})));
  REQUIRE(reduced_burau_symbolic(BraidWord(4, {2, 3, 2})) ==
          reduced_burau_symbolic(BraidWord(4, {3, 2, 3})));
  REQUIRE(reduced_burau_symbolic(BraidWord(4, {1, 3})) ==
          reduced_burau_symbolic(BraidWord(4, {3, 1})));
  REQUIRE(reduced_burau_symbolic(BraidWord(3, {1, -1})) == mat_eye(2, Laurent(1)));
  REQUIRE(unreduced_burau_symbolic(BraidWord(3, {1, 2, 1})) ==
          unreduced_burau_symbolic(BraidWord(3, {2, 1, 2})));
}

TEST_CASE("unreduced Burau determinant is a signed power of t") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    BraidWord w = random_word(rng, 3, 5);
    Laurent det = mat_det(unreduced_burau_symbolic(w), Laurent(1));
    Laurent expect = Laurent::t_power(writhe(w), writhe(w) % 2 == 0 ? 1 : -1);
    REQUIRE(det == expect);
  }
}

TEST_CASE("Alexander polynomials of small knots") {
  REQUIRE(alexander_poly(BraidWord(2, {1})).str() == "1");
  REQUIRE(alexander_poly(BraidWord(2, {1, 1, 1})).str() == "1-t+t^2");          // trefoil
  REQUIRE(alexander_poly(BraidWord(3, {1, -2, 1, -2})).str() == "1-3t+t^2");    // figure eight
  REQUIRE(alexander_poly(BraidWord(2, {1, 1, 1, 1, 1})).str() == "1-t+t^2-t^3+t^4");
  // mirror image has the same polynomial
  REQUIRE(alexander_poly(BraidWord(2, {-1, -1, -1})) == alexander_poly(BraidWord(2, {1, 1, 1})));
  // invariance under conjugation and stabilization (Markov moves)
  BraidWord tre(2, {1, 1, 1});
  BraidWord stab(3, {1, 1, 1, 2});
  REQUIRE(alexander_poly(stab) == alexander_poly(tre));
  REQUIRE(alexander_poly(bw_conj(BraidWord(3, {2, 1}), stab)) == alexander_poly(tre));
  // closures with several components are rejected
  REQUIRE_THROWS_AS(alexander_poly(BraidWord(3, {1})), std::invalid_argument);
}

TEST_CASE("quotient probes") {
  SECTION("symmetric quotient") {
    auto P = make_probe(3, "sym");
    REQUIRE(P.order == 6);
    REQUIRE(quotient_probe(BraidWord(3, {1, 2, 1}), P) ==
            quotient_probe(BraidWord(3, {2, 1, 2}), P));
    REQUIRE(quotient_probe(BraidWord(3, {}), P) == P.identity_index);
    REQUIRE(quotient_probe(BraidWord(3, {1, 1}), P) == P.identity_index);
  }
  SECTION("abelianized quotient mod N") {
    auto P = make_probe(3, "ab:N=3");
    // (Z/3)^3 crossed with S3
    REQUIRE(P.order == 162);
    REQUIRE(quotient_probe(BraidWord(3, {}), P) == P.identity_index);
    REQUIRE(quotient_probe(BraidWord(3, {1}), P) !=
            quotient_probe(BraidWord(3, {-1}), P));
    // sigma_1^3 becomes pure with zero linking mod 3
    REQUIRE(quotient_probe(BraidWord(3, {1, 1, 1, 1, 1, 1}), P) == P.identity_index);
  }
  SECTION("finite Burau quotient") {
    auto P = make_probe(3, "burau:p=5,k=4");
    REQUIRE(quotient_probe(BraidWord(3, {1, 2, 1}), P) ==
            quotient_probe(BraidWord(3, {2, 1, 2}), P));
    REQUIRE(quotient_probe(BraidWord(3, {}), P) == P.identity_index);
    // k=1 specializes t to 1, leaving the permutation representation
    auto P1 = make_probe(3, "burau:p=5,k=1");
    REQUIRE(quotient_probe(BraidWord(3, {1, 1}), P1) == P1.identity_index);
  }
  SECTION("probes are homomorphisms where the table exists") {
    auto P = make_probe(3, "ab:N=2");
    REQUIRE(P.group != nullptr);
    std::mt19937 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
      BraidWord u = random_word(rng, 3, 5), v = random_word(rng, 3, 5);
      REQUIRE(quotient_probe(bw_concat(u, v), P) ==
              P.group->op(quotient_probe(u, P), quotient_probe(v, P)));
    }
  }
}

TEST_CASE("splittability verdicts") {
  SECTION("band generators certify as split") {
    for (const BraidWord& w : {BraidWord(3, {1}), BraidWord(3, {2}), BraidWord(3, {2, 1, -2})}) {
      SplittableVerdict v = splittable_check(w);
      REQUIRE(v.kind == SplitKind::CertifiedYes);
      REQUIRE(v.cert.has_value());
      std::vector<std::string> checked;
      REQUIRE(verify_split_certificate(w, *v.cert, &checked));
      REQUIRE_FALSE(checked.empty());
    }
  }
  SECTION("nonzero linking between components obstructs") {
    SplittableVerdict v = splittable_check(BraidWord(3, {1, 1}));
    REQUIRE(v.kind == SplitKind::InvariantFail);
    REQUIRE(v.reason == "linking");
  }
  SECTION("a knotted component obstructs") {
    SplittableVerdict v = splittable_check(BraidWord(4, {1, 1, 1}));
    REQUIRE(v.kind == SplitKind::InvariantFail);
    REQUIRE(v.reason == "alexander");
  }
  SECTION("identity words are rejected") {
    REQUIRE_THROWS_AS(splittable_check(BraidWord(3, {})), IdentityBraid);
    REQUIRE_THROWS_AS(splittable_check(BraidWord(3, {1, -1})), IdentityBraid);
  }
  SECTION("undetermined cases stay unknown") {
    SplittableVerdict v = splittable_check(BraidWord(3, {1, 2}));
    REQUIRE(v.kind == SplitKind::Unknown);
  }
  SECTION("certificates are checked, not trusted") {
    SplitCertificate bogus;
    bogus.blocks.push_back({1, 1, {}, {}});
    bogus.blocks.push_back({2, 3, {1}, {}});
    REQUIRE_FALSE(verify_split_certificate(BraidWord(3, {1, 1}), bogus));
  }
}
