// Exact linear algebra over Z and Q[x]: Smith normal form, lattice solving,
// kernels, cokernels, ranks, and monomial-ideal membership, checked against
// the independent oracles in oracles.hpp.

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "wph/matrix.hpp"
#include "wph/module.hpp"
#include "wph/monomial.hpp"
#include "wph/poly.hpp"
#include "wph/random_gen.hpp"
#include "wph/ring.hpp"
#include "wph/snf.hpp"

using namespace wph;

namespace {

template <class R>
void check_snf_contract(const Matrix<R>& M) {
  SNFResult<R> s = smith_normal_form(M);
  REQUIRE(s.U * M * s.V == s.D);
  // Diagonal with a divisibility chain, units normalized away.
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) REQUIRE(ring_traits<R>::is_zero(s.D.at(i, j)));
  for (std::size_t i = 0; i + 1 < std::min(s.D.rows(), s.D.cols()); ++i) {
    if (ring_traits<R>::is_zero(s.D.at(i + 1, i + 1))) continue;
    REQUIRE_FALSE(ring_traits<R>::is_zero(s.D.at(i, i)));
    REQUIRE(ring_traits<R>::divides(s.D.at(i, i), s.D.at(i + 1, i + 1)));
  }
  // Transforms are unimodular: their determinants are units.
  REQUIRE(ring_traits<R>::is_unit(oracle::det_laplace(s.U)));
  REQUIRE(ring_traits<R>::is_unit(oracle::det_laplace(s.V)));
  // Tracked inverses really invert.
  REQUIRE(s.U * s.Uinv == Matrix<R>::identity(s.U.rows()));
  // Diagonal agrees with the determinantal (minor-gcd) description.
  std::vector<R> expect = oracle::minor_gcd_invariants(M);
  std::vector<R> got;
  for (std::size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i)
    if (!ring_traits<R>::is_zero(s.D.at(i, i))) got.push_back(s.D.at(i, i));
  REQUIRE(got == expect);
}

Matrix<Int> triangle_d1() {
  // Weighted edge boundaries of the hollow triangle with unit vertices and
  // weight-4 edges; rows v0,v1,v2, columns e01,e02,e12.
  return Matrix<Int>{{Int(-4), Int(-4), Int(0)},
                     {Int(4), Int(0), Int(-4)},
                     {Int(0), Int(4), Int(4)}};
}

}  // namespace

TEST_CASE("smith normal form on pinned matrices") {
  SECTION("identity") {
    Matrix<Int> I2 = Matrix<Int>::identity(2);
    SNFResult<Int> s = smith_normal_form(I2);
    REQUIRE(s.D == I2);
    REQUIRE(s.rank == 2);
  }
  SECTION("2x2 integer matrix") {
    Matrix<Int> M{{Int(2), Int(4)}, {Int(6), Int(8)}};
    SNFResult<Int> s = smith_normal_form(M);
    REQUIRE(s.D.at(0, 0) == Int(2));
    REQUIRE(s.D.at(1, 1) == Int(4));
    check_snf_contract(M);
  }
  SECTION("already-diagonal polynomial matrix") {
    Matrix<Poly> M(2, 2);
    M.at(0, 0) = Poly::x();
    M.at(1, 1) = Poly::x(2);
    SNFResult<Poly> s = smith_normal_form(M);
    REQUIRE(s.D.at(0, 0) == Poly::x());
    REQUIRE(s.D.at(1, 1) == Poly::x(2));
    check_snf_contract(M);
  }
  SECTION("unit normalization") {
    Matrix<Int> M{{Int(-3)}};
    REQUIRE(smith_normal_form(M).D.at(0, 0) == Int(3));
    Matrix<Poly> P(1, 1);
    P.at(0, 0) = Poly::from_coeffs({Rat(1), Rat(2)});  // 2x + 1
    Poly d = smith_normal_form(P).D.at(0, 0);
    REQUIRE(d == Poly::from_coeffs({Rat(1, 2), Rat(1)}));  // monic x + 1/2
  }
  SECTION("deterministic output") {
    Matrix<Int> M{{Int(6), Int(10), Int(15)}, {Int(10), Int(6), Int(4)}};
    SNFResult<Int> a = smith_normal_form(M);
    SNFResult<Int> b = smith_normal_form(M);
    REQUIRE(a.D == b.D);
    REQUIRE(a.U == b.U);
    REQUIRE(a.V == b.V);
  }
}

TEST_CASE("smith normal form properties on random matrices") {
  Rng rng(101);
  for (int t = 0; t < 20; ++t) {
    std::size_t r = 1 + oracle::detail::subsets, rr = 0;  // placeholder
    (void)r;
    (void)rr;
    break;
  }
  for (int t = 0; t < 20; ++t) {
    std::size_t rows = 1 + (rng() % 8), cols = 1 + (rng() % 8);
    Matrix<Int> M = random_int_matrix(rng, rows, cols, 9);
    check_snf_contract(M);
  }
  for (int t = 0; t < 8; ++t) {
    std::size_t rows = 1 + (rng() % 3), cols = 1 + (rng() % 3);
    Matrix<Poly> M = random_poly_matrix(rng, rows, cols, 2, 3);
    check_snf_contract(M);
  }
}

TEST_CASE("hermite solving and lattice membership") {
  SECTION("diagonal solve") {
    Matrix<Int> M{{Int(2), Int(0)}, {Int(0), Int(3)}};
    auto x = hermite_solve(M, {Int(4), Int(3)});
    REQUIRE(x.has_value());
    REQUIRE(*x == std::vector<Int>{Int(2), Int(1)});
  }
  SECTION("non-membership") {
    Matrix<Int> M{{Int(2)}};
    REQUIRE_FALSE(hermite_solve(M, {Int(1)}).has_value());
  }
  SECTION("membership among weighted boundary image generators") {
    // Columns are two edge boundaries of the weight-4 triangle; the target
    // is the third edge boundary (negated), which lies in their span.
    Matrix<Int> M{{Int(-4), Int(0)}, {Int(4), Int(-4)}, {Int(0), Int(4)}};
    std::vector<Int> b = {Int(4), Int(0), Int(-4)};
    auto x = hermite_solve(M, b);
    REQUIRE(x.has_value());
    REQUIRE(M.apply(*x) == b);
    // The independent brute-force search agrees.
    auto brute = oracle::solve_small(M, b, 6);
    REQUIRE(brute.has_value());
  }
  SECTION("solve succeeds on constructed right-hand sides") {
    Rng rng(102);
    for (int t = 0; t < 30; ++t) {
      std::size_t rows = 1 + (rng() % 6), cols = 1 + (rng() % 6);
      Matrix<Int> M = random_int_matrix(rng, rows, cols, 9);
      std::vector<Int> x = random_int_vector(rng, cols, 7);
      std::vector<Int> b = M.apply(x);
      auto sol = hermite_solve(M, b);
      REQUIRE(sol.has_value());
      REQUIRE(M.apply(*sol) == b);
    }
  }
  SECTION("polynomial membership") {
    Matrix<Poly> M(2, 2);
    M.at(0, 0) = Poly::x();
    M.at(1, 1) = Poly::x(2);
    auto ok = hermite_solve(M, {Poly::x(3), Poly::x(2)});
    REQUIRE(ok.has_value());
    auto bad = hermite_solve(M, {Poly(Rat(1)), Poly()});
    REQUIRE_FALSE(bad.has_value());
  }
}

TEST_CASE("cokernel presentations") {
  SECTION("zero matrix") {
    PresentationModule<Int> c = cokernel(Matrix<Int>(3, 0), 3);
    REQUIRE(c.free_rank == 3);
    REQUIRE(c.invariant_factors.empty());
  }
  SECTION("two-edge path with doubled middle vertex weight") {
    // Columns: the two weighted edge boundaries in the vertex basis x,y,z.
    Matrix<Int> d1{{Int(-2), Int(0)}, {Int(1), Int(-1)}, {Int(0), Int(2)}};
    PresentationModule<Int> c = cokernel(d1, 3);
    REQUIRE(c.free_rank == 1);
    REQUIRE(c.invariant_factors == std::vector<Int>{Int(2)});
  }
  SECTION("weight-4 triangle boundary") {
    PresentationModule<Int> c = cokernel(triangle_d1(), 3);
    REQUIRE(c.free_rank == 1);
    REQUIRE(c.invariant_factors == std::vector<Int>{Int(4), Int(4)});
  }
  SECTION("agrees with coset enumeration on random full-rank matrices") {
    Rng rng(103);
    int done = 0;
    while (done < 15) {
      Matrix<Int> M = random_int_matrix(rng, 3, 3, 3);
      Int det = oracle::det_laplace(M);
      if (det == 0) continue;
      Int bound = det < 0 ? Int(-det) : det;
      if (bound > 40) continue;
      PresentationModule<Int> c = cokernel(M, 3);
      REQUIRE(c.free_rank == 0);
      long m = static_cast<long>(bound.get_si());
      auto stats = oracle::mod_homology_stats(Matrix<Int>(0, 3), M, m);
      auto predicted = oracle::stats_from_orders(c.invariant_factors, m);
      REQUIRE(stats == predicted);
      ++done;
    }
  }
  SECTION("free rank matches rank deficiency") {
    Rng rng(104);
    for (int t = 0; t < 20; ++t) {
      std::size_t rows = 1 + (rng() % 4), cols = rng() % 4;
      Matrix<Int> M = random_int_matrix(rng, rows, cols, 3);
      REQUIRE(cokernel(M, rows).free_rank == rows - oracle::rank_over_q(M));
    }
  }
}

TEST_CASE("kernel bases") {
  SECTION("identity has trivial kernel") {
    REQUIRE(kernel_basis(Matrix<Int>::identity(3)).cols() == 0);
  }
  SECTION("1x2 matrix") {
    Matrix<Int> M{{Int(2), Int(-2)}};
    Matrix<Int> K = kernel_basis(M);
    REQUIRE(K.cols() == 1);
    bool plus = K.at(0, 0) == Int(1) && K.at(1, 0) == Int(1);
    bool minus = K.at(0, 0) == Int(-1) && K.at(1, 0) == Int(-1);
    REQUIRE((plus || minus));
  }
  SECTION("weighted triangle cycle") {
    Matrix<Int> K = kernel_basis(triangle_d1());
    REQUIRE(K.cols() == 1);
    // The generating cycle is e01 - e02 + e12 up to sign.
    std::vector<Int> v = K.col(0);
    if (v[0] < 0)
      for (Int& a : v) a = -a;
    REQUIRE(v == std::vector<Int>{Int(1), Int(-1), Int(1)});
  }
  SECTION("kernel columns are kernel members, count = cols - rank") {
    Rng rng(105);
    for (int t = 0; t < 15; ++t) {
      std::size_t rows = 1 + (rng() % 5), cols = 1 + (rng() % 5);
      Matrix<Int> M = random_int_matrix(rng, rows, cols, 5);
      Matrix<Int> K = kernel_basis(M);
      REQUIRE(K.cols() == cols - oracle::rank_over_q(M));
      for (std::size_t j = 0; j < K.cols(); ++j) {
        std::vector<Int> img = M.apply(K.col(j));
        for (const Int& a : img) REQUIRE(a == 0);
      }
    }
  }
}

TEST_CASE("field ranks") {
  Rng rng(106);
  for (int t = 0; t < 15; ++t) {
    std::size_t rows = 1 + (rng() % 5), cols = 1 + (rng() % 5);
    Matrix<Int> M = random_int_matrix(rng, rows, cols, 9);
    REQUIRE(rank_fraction_field(M) == oracle::rank_over_q(M));
    for (long p : {2L, 3L, 5L})
      REQUIRE(rank_mod_prime(M, Int(p)) == oracle::rank_over_fp(M, p));
  }
  for (int t = 0; t < 6; ++t) {
    Matrix<Poly> M = random_poly_matrix(rng, 3, 3, 2, 3);
    REQUIRE(rank_fraction_field(M) == oracle::rank_over_qx(M));
  }
}

TEST_CASE("p-primary exponents") {
  PresentationModule<Int> m;
  m.free_rank = 1;
  m.invariant_factors = {Int(4), Int(4)};
  REQUIRE(p_primary_exponents(m, Int(2)) == std::vector<unsigned>{2, 2});
  REQUIRE(p_primary_exponents(m, Int(3)).empty());

  PresentationModule<Poly> q;
  q.invariant_factors = {Poly::x(2), Poly::x(2)};
  REQUIRE(p_primary_exponents(q, Poly::x()) == std::vector<unsigned>{2, 2});

  REQUIRE_THROWS_AS(p_primary_exponents(m, Int(6)), SemanticError);
}

TEST_CASE("polynomial division and monomial ideals") {
  SECTION("divmod") {
    Poly a = Poly::from_coeffs({Rat(1), Rat(0), Rat(1)});  // x^2 + 1
    Poly q, r;
    poly_divmod(a, Poly::x(), q, r);
    REQUIRE(q == Poly::x());
    REQUIRE(r == Poly(Rat(1)));
    REQUIRE_THROWS_AS(poly_divmod(a, Poly(), q, r), SemanticError);
  }
  SECTION("pinned memberships") {
    auto mono = [](std::initializer_list<unsigned> es) {
      Monomial m(3);
      std::size_t i = 0;
      for (unsigned e : es) m.e[i++] = e;
      return m;
    };
    std::vector<Monomial> gens = {mono({1, 1, 0}), mono({1, 0, 1}), mono({0, 1, 1})};
    MPoly f = MPoly::monomial(mono({0, 1, 1}), Rat(1));
    REQUIRE(monomial_ideal_contains(gens, f));

    std::vector<Monomial> one = {mono({1, 1, 0})};
    MPoly g = MPoly::monomial(mono({1, 0, 0}), Rat(1)) + MPoly::monomial(mono({0, 1, 0}), Rat(1));
    REQUIRE_FALSE(monomial_ideal_contains(one, g));
  }
  SECTION("agrees with the term-domination oracle") {
    Rng rng(107);
    for (int t = 0; t < 50; ++t) {
      std::size_t nv = 1 + (rng() % 4);
      std::vector<Monomial> gens;
      std::size_t ng = 1 + (rng() % 3);
      for (std::size_t g = 0; g < ng; ++g) {
        Monomial m(nv);
        for (std::size_t v = 0; v < nv; ++v) m.e[v] = rng() % 2;
        bool zero = true;
        for (unsigned e : m.e) zero = zero && e == 0;
        if (zero) m.e[0] = 1;
        gens.push_back(m);
      }
      MPoly f(nv);
      std::size_t terms = 1 + (rng() % 3);
      for (std::size_t k = 0; k < terms; ++k) {
        Monomial m(nv);
        for (std::size_t v = 0; v < nv; ++v) m.e[v] = rng() % 5;
        f = f + MPoly::monomial(m, Rat(1 + static_cast<long>(rng() % 3)));
      }
      if (f.is_zero()) continue;
      REQUIRE(monomial_ideal_contains(gens, f) == oracle::monomial_member(f, gens));
    }
  }
}
