#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "braidsurf/neretin.hpp"

using namespace braidsurf;

namespace {

std::vector<int> irrep_dims(const char* name) {
  std::vector<int> dims;
  for (const auto& r : numeric_irreps(group_from_spec(name))) dims.push_back(r.dim);
  return dims;
}

// Independent ground truth for coset separation: componentwise simultaneous
// conjugation.
bool same_orbit(const FiniteGroup& G, const std::vector<int>& x, const std::vector<int>& y) {
  for (int g = 0; g < G.order; ++g) {
    bool all = true;
    for (std::size_t i = 0; i < x.size() && all; ++i) all = (G.conj(x[i], g) == y[i]);
    if (all) return true;
  }
  return false;
}

CMat tensor_image(const std::vector<UnitaryRep>& factors, const std::vector<int>& x) {
  CMat M = factors[0](x[0]);
  for (std::size_t i = 1; i < factors.size(); ++i)
    M = Eigen::kroneckerProduct(M, factors[i](x[i])).eval();
  return M;
}

}  // namespace

TEST_CASE("regular representation splits into the known irreducibles") {
  REQUIRE(irrep_dims("Z/2") == std::vector<int>{1, 1});
  REQUIRE(irrep_dims("Z/4") == std::vector<int>{1, 1, 1, 1});
  REQUIRE(irrep_dims("V4") == std::vector<int>{1, 1, 1, 1});
  REQUIRE(irrep_dims("S3") == std::vector<int>{1, 1, 2});
  REQUIRE(irrep_dims("Q8") == std::vector<int>{1, 1, 1, 1, 2});
  REQUIRE(irrep_dims("S4") == std::vector<int>{1, 1, 2, 3, 3});

  for (const char* name : {"S3", "Q8", "S4"}) {
    auto G = group_from_spec(name);
    auto irr = numeric_irreps(G);
    int dimsq = 0;
    for (const auto& r : irr) {
      REQUIRE(rep_defect(r) < 1e-12);
      REQUIRE(std::abs(r.commutant_dimension() - 1.0) < 1e-9);
      dimsq += r.dim * r.dim;
    }
    REQUIRE(dimsq == G->order);
  }

  // deterministic given the seed
  auto a = numeric_irreps(group_from_spec("S3"));
  auto b = numeric_irreps(group_from_spec("S3"));
  for (std::size_t i = 0; i < a.size(); ++i)
    REQUIRE((a[i].mats[3] - b[i].mats[3]).cwiseAbs().maxCoeff() == 0.0);

  REQUIRE_THROWS_AS(numeric_irreps(group_from_spec("Z/256")), std::invalid_argument);
}

TEST_CASE("diagonal invariant vectors in tensor products") {
  auto s3 = group_from_spec("S3");
  auto irr = numeric_irreps(s3);

  SECTION("pairs pair up duals: multiplicity is Kronecker delta here") {
    for (std::size_t i = 0; i < irr.size(); ++i)
      for (std::size_t j = 0; j < irr.size(); ++j)
        REQUIRE(invariant_vectors({irr[i], irr[j]}).count() == (i == j ? 1 : 0));
  }
  SECTION("cube of the two-dimensional representation has a unique invariant") {
    auto B = invariant_vectors({irr[2], irr[2], irr[2]});
    REQUIRE(B.dim == 8);
    REQUIRE(B.count() == 1);
  }
  SECTION("columns are orthonormal and genuinely fixed") {
    auto B = invariant_vectors({irr[2], irr[2]});
    CMat gram = B.vectors.adjoint() * B.vectors;
    REQUIRE((gram - CMat::Identity(B.count(), B.count())).cwiseAbs().maxCoeff() < 1e-9);
    for (int g = 0; g < s3->order; ++g) {
      CMat M = tensor_image({irr[2], irr[2]}, {g, g});
      REQUIRE((M * B.vectors - B.vectors).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SECTION("factors must share a group") {
    auto other = numeric_irreps(group_from_spec("Z/2"));
    REQUIRE_THROWS_AS(invariant_vectors({irr[0], other[0]}), std::invalid_argument);
    REQUIRE_THROWS_AS(invariant_vectors({}), std::invalid_argument);
  }
}

TEST_CASE("spherical values are bi-invariant") {
  auto s3 = group_from_spec("S3");
  auto irr = numeric_irreps(s3);
  std::vector<UnitaryRep> factors{irr[2], irr[2]};
  auto B = invariant_vectors(factors);
  REQUIRE(B.count() == 1);
  CVec u = B.vectors.col(0);

  std::mt19937 rng(31);
  std::uniform_int_distribution<int> d(0, 5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> x{d(rng), d(rng)};
    int g = d(rng), h = d(rng);
    auto base = spherical_value(factors, u, u, x);
    std::vector<int> left{s3->op(g, x[0]), s3->op(g, x[1])};
    std::vector<int> right{s3->op(x[0], h), s3->op(x[1], h)};
    REQUIRE(std::abs(spherical_value(factors, u, u, left) - base) < 1e-9);
    REQUIRE(std::abs(spherical_value(factors, u, u, right) - base) < 1e-9);
  }
  REQUIRE_THROWS_AS(spherical_value(factors, u, u, {0}), std::invalid_argument);
  REQUIRE_THROWS_AS(spherical_value({irr[0]}, u, u, {0}), std::invalid_argument);
}

TEST_CASE("coset separation agrees with brute-force orbits") {
  auto s3 = group_from_spec("S3");

  SECTION("singletons, exhaustively") {
    for (int x = 0; x < 6; ++x)
      for (int y = 0; y < 6; ++y) {
        Separation s = separate_cosets(s3, {x}, {y});
        REQUIRE(s.separated == !same_orbit(*s3, {x}, {y}));
        if (s.separated) {
          REQUIRE(s.witness_factors.size() == 2);
          REQUIRE(s.u_index >= 0);
          REQUIRE(s.v_index >= 0);
          REQUIRE(std::abs(s.at_x - s.at_y) > 1e-8);
        }
      }
  }
  SECTION("pairs, sampled") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> d(0, 5);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<int> x{d(rng), d(rng)}, y{d(rng), d(rng)};
      REQUIRE(separate_cosets(s3, x, y).separated == !same_orbit(*s3, x, y));
    }
  }
  SECTION("abelian groups separate exactly the distinct tuples") {
    auto v4 = group_from_spec("V4");
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        REQUIRE(separate_cosets(v4, {x}, {y}).separated == (x != y));
  }
  SECTION("input validation") {
    REQUIRE_THROWS_AS(separate_cosets(s3, {}, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(separate_cosets(s3, {1}, {1, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(separate_cosets(s3, {9}, {1}), std::invalid_argument);
  }
}

TEST_CASE("double coset count equals the sum of squared multiplicities") {
  auto check = [](const char* name, int k, long long expect) {
    auto [orbits, msq] = wielandt_check(group_from_spec(name), k);
    REQUIRE(orbits == msq);
    REQUIRE(orbits == expect);
  };
  check("Z/2", 1, 2);
  check("S3", 1, 3);
  check("S3", 2, 11);
  check("V4", 2, 16);
  check("Q8", 1, 5);

  REQUIRE_THROWS_AS(wielandt_check(group_from_spec("S3"), 0), std::invalid_argument);
  REQUIRE_THROWS_AS(wielandt_check(group_from_spec("S3"), 3), std::invalid_argument);
}

TEST_CASE("spin representations of SU(2)") {
  std::mt19937_64 rng(43);
  for (int two_j : {0, 1, 2, 3, 4}) {
    SU2Element g = random_su2(rng), h = random_su2(rng);
    CMat Rg = su2_rep(two_j, g), Rh = su2_rep(two_j, h);
    CMat Rgh = su2_rep(two_j, SU2Element(g.m * h.m));
    REQUIRE(Rg.rows() == two_j + 1);
    REQUIRE((Rg * Rh - Rgh).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE((Rg.adjoint() * Rg - CMat::Identity(two_j + 1, two_j + 1)).cwiseAbs().maxCoeff() <
            1e-10);
    REQUIRE(std::abs(Rg.determinant() - std::complex<double>(1)) < 1e-10);
    REQUIRE((su2_rep(two_j, SU2Element::identity()) - CMat::Identity(two_j + 1, two_j + 1))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
  }
  REQUIRE_THROWS_AS(su2_rep(-1, SU2Element::identity()), std::invalid_argument);
  Eigen::Matrix2cd not_unitary;
  not_unitary << 2, 0, 0, 0.5;
  REQUIRE_THROWS_AS(SU2Element(not_unitary), std::invalid_argument);
}

TEST_CASE("SU(2) tensor invariants") {
  auto count = [](std::vector<double> spins) { return su2_invariant_basis(spins).count(); };
  SECTION("dimension table") {
    REQUIRE(count({0.5}) == 0);  // odd total weight: nothing
    REQUIRE(count({0.5, 0.5}) == 1);
    REQUIRE(count({0, 0}) == 1);
    REQUIRE(count({1, 1, 1}) == 1);
    REQUIRE(count({2, 2}) == 1);
    REQUIRE(count({0.5, 0.5, 0.5, 0.5}) == 2);
    REQUIRE(count({1.5, 1.5, 1, 1}) == 3);
    REQUIRE(count({3, 3, 3, 3}) == 7);
  }
  SECTION("columns are orthonormal and SU(2)-fixed") {
    std::mt19937_64 rng(47);
    for (auto spins : std::vector<std::vector<double>>{{0.5, 0.5}, {1.5, 1.5, 1, 1}}) {
      auto B = su2_invariant_basis(spins);
      CMat gram = B.vectors.adjoint() * B.vectors;
      REQUIRE((gram - CMat::Identity(B.count(), B.count())).cwiseAbs().maxCoeff() < 1e-9);
      for (int trial = 0; trial < 3; ++trial) {
        SU2Element g = random_su2(rng);
        CMat M = su2_rep(static_cast<int>(2 * spins[0] + 0.5), g);
        for (std::size_t i = 1; i < spins.size(); ++i)
          M = Eigen::kroneckerProduct(M, su2_rep(static_cast<int>(2 * spins[i] + 0.5), g)).eval();
        REQUIRE((M * B.vectors - B.vectors).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
  SECTION("input validation") {
    REQUIRE_THROWS_AS(su2_invariant_basis({}), std::invalid_argument);
    REQUIRE_THROWS_AS(su2_invariant_basis({1, 1, 1, 1, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(su2_invariant_basis({3.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(su2_invariant_basis({0.3}), std::invalid_argument);
  }
}

TEST_CASE("invariant Hermitian form for the unitarized band representation") {
  SECTION("positivity window") {
    for (double theta : {0.0, 0.5, -0.5, 1.0, -1.5, 2.0, -2.0})
      REQUIRE(squier_positive(theta));
    for (double theta : {2.1, -2.1, 2.5, -2.5, 3.0, M_PI})
      REQUIRE_FALSE(squier_positive(theta));
  }
  SECTION("the unitarized matrices land in SU(2) and respect braid relations") {
    for (double theta : {0.3, 1.3, -1.9}) {
      for (const Word& w : {Word{1}, Word{2}, Word{1, -2, 1, 1}}) {
        Eigen::Matrix2cd U = burau_su2(BraidWord(3, w), theta);
        REQUIRE((U.adjoint() * U - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-9);
        REQUIRE(std::abs(U.determinant() - std::complex<double>(1)) < 1e-9);
      }
      Eigen::Matrix2cd u1 = burau_su2(BraidWord(3, {1}), theta);
      Eigen::Matrix2cd u2 = burau_su2(BraidWord(3, {2}), theta);
      REQUIRE((u1 * u2 * u1 - u2 * u1 * u2).cwiseAbs().maxCoeff() < 1e-9);
      // homomorphism and inverses
      Eigen::Matrix2cd uw = burau_su2(BraidWord(3, {1, 2, -1}), theta);
      REQUIRE((u1 * u2 * u1.inverse() - uw).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SECTION("outside the window the unitarization refuses") {
    REQUIRE_THROWS_AS(burau_su2(BraidWord(3, {1}), 2.5), SquierFormNotPositive);
    REQUIRE_THROWS_AS(burau_su2(BraidWord(4, {1}), 1.0), std::invalid_argument);
  }
}

TEST_CASE("coupled determinant form") {
  std::mt19937_64 rng(53);
  auto coupling = [](int k, double c) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j) X(i, j) = c;
    return X;
  };

  SECTION("no coupling means value one") {
    std::vector<SU2Element> A{random_su2(rng), random_su2(rng)};
    REQUIRE(std::abs(neretin_phi2(A, coupling(2, 0), coupling(2, 0)) -
                     std::complex<double>(1)) < 1e-12);
    REQUIRE(std::abs(neretin_phi2({A[0]}, coupling(1, 0), coupling(1, 0)) -
                     std::complex<double>(1)) < 1e-12);
  }
  SECTION("two factors reduce to the trace closed form") {
    for (int trial = 0; trial < 10; ++trial) {
      SU2Element a1 = random_su2(rng), a2 = random_su2(rng);
      double t = 0.05 * 0.05;
      std::complex<double> denom =
          1.0 + t * (a1.m * a2.m.inverse()).trace() + t * t;
      auto phi2 = neretin_phi2({a1, a2}, coupling(2, 0.05), coupling(2, 0.05));
      REQUIRE(std::abs(phi2 - 1.0 / (denom * denom)) < 1e-12);
    }
  }
  SECTION("matches the invariant-vector series through spin one") {
    for (double c : {0.02, 0.05}) {
      double tol = c < 0.03 ? 1e-9 : 5e-8;  // truncation error scales like (xy)^3
      for (int trial = 0; trial < 5; ++trial) {
        SU2Element a1 = random_su2(rng), a2 = random_su2(rng);
        auto phi2 = neretin_phi2({a1, a2}, coupling(2, c), coupling(2, c));
        double t = c * c;
        std::complex<double> series = 0;
        for (int a = 0; a <= 2; ++a) {
          auto B = su2_invariant_basis({a / 2.0, a / 2.0});
          CVec u = B.vectors.col(0);
          CMat K = Eigen::kroneckerProduct(su2_rep(a, a1), su2_rep(a, a2)).eval();
          std::complex<double> phi_a = (u.adjoint() * (K * u))(0, 0);
          series += ((a % 2) ? -1.0 : 1.0) * (a + 1) * std::pow(t, a) * phi_a;
        }
        REQUIRE(std::abs(std::sqrt(phi2) - series) < tol);
      }
    }
  }
  SECTION("simultaneous conjugation invariance") {
    SU2Element a1 = random_su2(rng), a2 = random_su2(rng), g = random_su2(rng);
    auto base = neretin_phi2({a1, a2}, coupling(2, 0.05), coupling(2, 0.05));
    std::vector<SU2Element> conj{SU2Element(g.m * a1.m * g.m.adjoint()),
                                 SU2Element(g.m * a2.m * g.m.adjoint())};
    REQUIRE(std::abs(neretin_phi2(conj, coupling(2, 0.05), coupling(2, 0.05)) - base) < 1e-9);
  }
  SECTION("coupling validation and spectral guard") {
    std::vector<SU2Element> A{random_su2(rng), random_su2(rng)};
    Eigen::MatrixXd self = coupling(2, 0.05);
    self(0, 0) = 0.1;  // self-coupling
    REQUIRE_THROWS_AS(neretin_phi2(A, self, coupling(2, 0.05)), std::invalid_argument);
    Eigen::MatrixXd asym = coupling(2, 0.05);
    asym(0, 1) = 0.01;
    REQUIRE_THROWS_AS(neretin_phi2(A, asym, coupling(2, 0.05)), std::invalid_argument);
    REQUIRE_THROWS_AS(neretin_phi2(A, coupling(3, 0.05), coupling(2, 0.05)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(neretin_phi2({}, coupling(2, 0.05), coupling(2, 0.05)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(neretin_phi2(A, coupling(2, 2.0), coupling(2, 2.0)),
                      SpectralRadiusTooLarge);
  }
}

TEST_CASE("determinant form pulled back along the unitarized band representation") {
  Eigen::MatrixXd X(2, 2), Y(2, 2);
  X << 0, 0.05, 0.05, 0;
  Y = X;

  SECTION("pinned values distinguish the parallel and antiparallel pairs") {
    auto par = phi2_burau({BraidWord(3, {1}), BraidWord(3, {2})}, 1.3, X, Y);
    auto anti = phi2_burau({BraidWord(3, {1}), BraidWord(3, {-2})}, 1.3, X, Y);
    REQUIRE(std::abs(par.imag()) < 1e-12);
    REQUIRE(std::abs(anti.imag()) < 1e-12);
    REQUIRE(par.real() == Catch::Approx(0.99766657988028484).epsilon(1e-12));
    REQUIRE(anti.real() == Catch::Approx(0.99500628109394629).epsilon(1e-12));
    REQUIRE(std::abs(par - anti) > 2e-3);
  }
  SECTION("constant on simultaneous conjugation classes of word tuples") {
    Word c{2, 1};
    auto conj = [&](const Word& w) {
      Word out = c;
      out.insert(out.end(), w.begin(), w.end());
      out.push_back(-1);
      out.push_back(-2);
      return out;
    };
    auto base = phi2_burau({BraidWord(3, {1}), BraidWord(3, {2})}, 1.3, X, Y);
    auto moved = phi2_burau({BraidWord(3, conj({1})), BraidWord(3, conj({2}))}, 1.3, X, Y);
    REQUIRE(std::abs(base - moved) < 1e-9);
  }
  SECTION("window and strand-count validation") {
    REQUIRE_THROWS_AS(phi2_burau({BraidWord(3, {1}), BraidWord(3, {2})}, 2.5, X, Y),
                      SquierFormNotPositive);
    REQUIRE_THROWS_AS(phi2_burau({BraidWord(4, {1}), BraidWord(4, {2})}, 1.3, X, Y),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(phi2_burau({}, 1.3, X, Y), std::invalid_argument);
  }
  SECTION("values stay defined across the admissible window") {
    for (int i = 0; i < 20; ++i) {
      double theta = -2.0 + 4.0 * i / 19.0;
      auto v = phi2_burau({BraidWord(3, {1}), BraidWord(3, {2, 2})}, theta, X, Y);
      REQUIRE(std::abs(v) > 0.9);
      REQUIRE(std::abs(v) < 1.1);
    }
  }
}
