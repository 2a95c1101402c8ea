#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "braidsurf/lift.hpp"
#include "braidsurf/smith.hpp"

using namespace braidsurf;

namespace {

long long int_det(const IntMat& m) {
  int n = static_cast<int>(m.size());
  if (n == 1) return m[0][0];
  long long d = 0, sgn = 1;
  for (int j = 0; j < n; ++j) {
    IntMat sub(n - 1, std::vector<long long>(n - 1));
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) sub[r - 1][cc++] = m[r][c];
    d += sgn * m[0][j] * int_det(sub);
    sgn = -sgn;
  }
  return d;
}

void check_smith(const IntMat& A) {
  SmithForm f = smith_form(A);
  REQUIRE(int_mul(int_mul(f.U, A), f.V) == f.D);
  REQUIRE(std::abs(int_det(f.U)) == 1);
  REQUIRE(std::abs(int_det(f.V)) == 1);
  int r = std::min(f.rows, f.cols);
  for (int i = 0; i < f.rows; ++i)
    for (int j = 0; j < f.cols; ++j)
      if (i != j) REQUIRE(f.D[i][j] == 0);
  for (int i = 0; i < r; ++i) REQUIRE(f.D[i][i] >= 0);
  for (int i = 0; i + 1 < r; ++i)
    if (f.D[i + 1][i + 1] != 0) {
      REQUIRE(f.D[i][i] != 0);
      REQUIRE(f.D[i + 1][i + 1] % f.D[i][i] == 0);
    }
  int rank = 0;
  for (int i = 0; i < r; ++i)
    if (f.D[i][i] != 0) ++rank;
  REQUIRE(f.rank == rank);
}

std::vector<long long> diag_factors(const IntMat& A) {
  SmithForm f = smith_form(A);
  std::vector<long long> d;
  for (int i = 0; i < f.rank; ++i) d.push_back(f.D[i][i]);
  return d;
}

}  // namespace

TEST_CASE("Smith normal form on pinned matrices") {
  REQUIRE(diag_factors({{2, 0}, {0, 4}}) == std::vector<long long>{2, 4});
  REQUIRE(diag_factors({{4, 0}, {0, 2}}) == std::vector<long long>{2, 4});
  REQUIRE(diag_factors({{0, 1}, {1, 0}}) == std::vector<long long>{1, 1});
  REQUIRE(diag_factors({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == std::vector<long long>{1, 3});
  REQUIRE(diag_factors({{2, 4}, {4, 8}}) == std::vector<long long>{2});
  REQUIRE(diag_factors({{0, 0}, {0, 0}}).empty());
  // relations of Z/6 x Z/4 presented on mixed generators: factors (2, 12)
  REQUIRE(diag_factors({{6, 0}, {0, 4}}) == std::vector<long long>{2, 12});
}

TEST_CASE("Smith normal form properties on random matrices") {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> dim(1, 5), val(-6, 6);
  for (int trial = 0; trial < 120; ++trial) {
    IntMat A(dim(rng), std::vector<long long>(dim(rng)));
    for (auto& row : A)
      for (auto& x : row) x = val(rng);
    check_smith(A);
  }
}

TEST_CASE("integer linear solving") {
  SECTION("constructed solvable systems") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> dim(1, 5), val(-5, 5);
    for (int trial = 0; trial < 80; ++trial) {
      int rows = dim(rng), cols = dim(rng);
      IntMat A(rows, std::vector<long long>(cols));
      for (auto& row : A)
        for (auto& x : row) x = val(rng);
      std::vector<long long> x0(cols);
      for (auto& v : x0) v = val(rng);
      std::vector<long long> b(rows, 0);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) b[i] += A[i][j] * x0[j];
      auto x = solve_integer(A, b);
      REQUIRE(x.has_value());
      for (int i = 0; i < rows; ++i) {
        long long s = 0;
        for (int j = 0; j < cols; ++j) s += A[i][j] * (*x)[j];
        REQUIRE(s == b[i]);
      }
    }
  }
  SECTION("divisibility obstructions") {
    REQUIRE_FALSE(solve_integer({{2}}, {1}).has_value());
    REQUIRE_FALSE(solve_integer({{0}}, {1}).has_value());
    REQUIRE(solve_integer({{2}}, {4}).has_value());
    REQUIRE_FALSE(solve_integer({{2, 4}, {0, 0}}, {2, 1}).has_value());
  }
}

TEST_CASE("section factor set") {
  // multiplying two section braids costs exactly the recorded factor set
  std::mt19937 rng(61);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 2 + trial % 4;
    std::vector<int> i1(n), i2(n);
    std::iota(i1.begin(), i1.end(), 0);
    std::iota(i2.begin(), i2.end(), 0);
    std::shuffle(i1.begin(), i1.end(), rng);
    std::shuffle(i2.begin(), i2.end(), rng);
    Permutation s{i1}, t{i2};
    REQUIRE(ab_mul(ab_section(s), ab_section(t)) == AbBraid(n, s * t, ab_kappa(s, t)));
  }
}

namespace {

SurfaceMonodromy random_valid(const GroupPtr& G, int g, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, G->order - 1);
  while (true) {
    std::vector<int> a(g), b(g);
    for (int i = 0; i < g; ++i) {
      a[i] = d(rng);
      b[i] = d(rng);
    }
    int rel = G->id;
    for (int i = 0; i < g; ++i) rel = G->op(rel, G->comm(a[i], b[i]));
    if (rel == G->id) return make_monodromy(G, g, a, b, {});
  }
}

}  // namespace

TEST_CASE("lift problem validation") {
  auto s3 = group_from_spec("S3");
  auto v4 = group_from_spec("V4");
  SurfaceMonodromy t = make_monodromy(s3, 1, {0}, {0}, {});
  REQUIRE_NOTHROW(make_lift_problem(t, 3, {}));
  // group must be the symmetric group on n letters
  REQUIRE_THROWS_AS(make_lift_problem(t, 4, {}), MalformedProblem);
  REQUIRE_THROWS_AS(make_lift_problem(make_monodromy(v4, 1, {1}, {2}, {}), 4, {}),
                    MalformedProblem);
  // punctured problems need matching peripheral targets
  int tau = -1;
  for (int x = 0; x < 6; ++x)
    if (s3->perm_real[x] == Permutation::transposition(3, 0, 1)) tau = x;
  SurfaceMonodromy punct = make_monodromy(s3, 0, {}, {}, {tau, tau});
  REQUIRE_THROWS_AS(make_lift_problem(punct, 3, {}), MalformedProblem);
  REQUIRE_NOTHROW(make_lift_problem_words(punct, 3, {BraidWord(3, {1}), BraidWord(3, {1})}));
  // sigma_2 projects to the wrong transposition
  REQUIRE_THROWS_AS(make_lift_problem_words(punct, 3, {BraidWord(3, {1}), BraidWord(3, {2})}),
                    MalformedProblem);
}

TEST_CASE("exact lifts to the abelianized level") {
  SECTION("solutions satisfy the relator on plugging back") {
    std::mt19937 rng(67);
    for (const char* name : {"S2", "S3", "S4"}) {
      auto G = group_from_spec(name);
      int n = G->perm_real[0].degree();
      for (int trial = 0; trial < 15; ++trial) {
        LiftProblem p = make_lift_problem(random_valid(G, 1 + trial % 2, rng), n, {});
        Bn1Lift lift = lift_to_bn1(p);
        REQUIRE(lift.solvable);
        REQUIRE(bn1_relator_value(p, lift.a_lifts, lift.b_lifts).is_identity());
        for (const auto& x : lift.a_lifts) REQUIRE(x.n == n);
      }
    }
  }
  SECTION("punctured problems can obstruct") {
    auto s3 = group_from_spec("S3");
    int tau = -1;
    for (int x = 0; x < 6; ++x)
      if (s3->perm_real[x] == Permutation::transposition(3, 0, 1)) tau = x;
    SurfaceMonodromy punct = make_monodromy(s3, 0, {}, {}, {tau, tau});
    // genus zero leaves no freedom: the peripheral product must vanish exactly
    auto bad = make_lift_problem_words(punct, 3, {BraidWord(3, {1}), BraidWord(3, {1})});
    auto good = make_lift_problem_words(punct, 3, {BraidWord(3, {1}), BraidWord(3, {-1})});
    REQUIRE_FALSE(lift_to_bn1(bad).solvable);
    Bn1Lift ok = lift_to_bn1(good);
    REQUIRE(ok.solvable);
    REQUIRE(ok.invariant_factors.empty());  // genus zero: no unknowns at all
    REQUIRE(bn1_relator_value(good, ok.a_lifts, ok.b_lifts).is_identity());
  }
}

TEST_CASE("obstruction reports stay consistent under stabilization") {
  SECTION("closed samples") {
    std::mt19937 rng(71);
    for (const char* name : {"S2", "S3"}) {
      auto G = group_from_spec(name);
      int n = G->perm_real[0].degree();
      for (int trial = 0; trial < 20; ++trial) {
        LiftProblem p = make_lift_problem(random_valid(G, 1 + trial % 2, rng), n, {});
        ObstructionReport r = obstruction_report(p);
        REQUIRE(r.violations.empty());
        REQUIRE(r.solvable);
        REQUIRE(r.stabilized_solvable);
      }
    }
  }
  SECTION("an obstructed punctured problem stays obstructed") {
    auto s3 = group_from_spec("S3");
    int tau = -1;
    for (int x = 0; x < 6; ++x)
      if (s3->perm_real[x] == Permutation::transposition(3, 0, 1)) tau = x;
    SurfaceMonodromy punct = make_monodromy(s3, 0, {}, {}, {tau, tau});
    auto bad = make_lift_problem_words(punct, 3, {BraidWord(3, {1}), BraidWord(3, {1})});
    ObstructionReport r = obstruction_report(bad);
    REQUIRE_FALSE(r.solvable);
    REQUIRE(r.violations.empty());
  }
}

TEST_CASE("bounded lifts into the braid group") {
  auto s3 = group_from_spec("S3");
  int tau = -1;
  for (int x = 0; x < 6; ++x)
    if (s3->perm_real[x] == Permutation::transposition(3, 0, 1)) tau = x;
  SurfaceMonodromy t = make_monodromy(s3, 1, {tau}, {tau}, {});
  LiftProblem p = make_lift_problem(t, 3, {});
  SECTION("a short lift exists and is certified") {
    BnLift lift = lift_to_bn_bounded(p, 2);
    REQUIRE(lift.found);
    REQUIRE(lift.a_words.size() == 1);
    REQUIRE(underlying_permutation(lift.a_words[0]) == s3->perm_real[tau]);
    REQUIRE(underlying_permutation(lift.b_words[0]) == s3->perm_real[tau]);
    // the free-group relator evaluates trivially in every checked quotient
    REQUIRE(lift.certificates == std::vector<std::string>{"sym", "bn1", "burau-reduced"});
  }
  SECTION("length zero sweeps out without finding the image") {
    BnLift lift = lift_to_bn_bounded(p, 0);
    REQUIRE_FALSE(lift.found);
    REQUIRE(lift.swept);
  }
  SECTION("non-splittable peripheral words are rejected") {
    SurfaceMonodromy punct = make_monodromy(s3, 0, {}, {}, {tau, tau});
    // sigma_1^3 has nonzero self-linking: fails the splittability screen
    auto words = std::vector<BraidWord>{BraidWord(3, {1, 1, 1}), BraidWord(3, {1})};
    auto q = make_lift_problem_words(punct, 3, words);
    REQUIRE_THROWS_AS(lift_to_bn_bounded(q, 2), PeripheralNotSplittable);
  }
}
