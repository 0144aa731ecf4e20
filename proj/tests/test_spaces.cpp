#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opakit/spaces.hpp"

using namespace opakit;

TEST_CASE("monomial weights") {
  SpaceSpec da2 = SpaceSpec::drury_arveson(2);
  CHECK(da2.weight({1, 1}) == Rational(1, 2));
  CHECK(da2.weight({2, 2}) == Rational(1, 6));
  CHECK(SpaceSpec::dirichlet_bidisk(1, 1).weight({1, 1}) == Rational(4));
  CHECK(SpaceSpec::dirichlet_bidisk(-1, -1).weight({1, 2}) == Rational(1, 6));
  CHECK_THROWS_AS(SpaceSpec::dirichlet_bidisk(0.5, 0).weight({1, 1}), ModeError);
  CHECK(SpaceSpec::dirichlet_bidisk(0.5, 0).weight_f({3, 1}) == Catch::Approx(2.0));
}

TEST_CASE("inner product examples") {
  SpaceSpec hardy = SpaceSpec::dirichlet_bidisk(0, 0);
  MPoly f = parse_mpoly("2-z1-z2", 2);
  CHECK(hardy.inner(f, f) == ExactScalar(6));
  CHECK(hardy.inner(parse_mpoly("z1", 2), parse_mpoly("z2", 2)).is_zero());
  CHECK(hardy.inner(f, parse_mpoly("z1", 2) * f) == ExactScalar(-2));
}

TEST_CASE("weighted inner product for the diagonal weight") {
  SpaceSpec hardy = SpaceSpec::dirichlet_bidisk(0, 0);
  MPoly f = parse_mpoly("1-z1*z2", 2);
  MPoly one = MPoly::constant(2, ExactScalar(1));
  CHECK(hardy.weighted_inner(f, one, one) == ExactScalar(2));
  CHECK(hardy.weighted_inner(f, parse_mpoly("z1", 2), parse_mpoly("z2", 2)).is_zero());
  CHECK(hardy.weighted_inner(f, one, parse_mpoly("z1*z2", 2)) == ExactScalar(-1));
}

TEST_CASE("hermitian symmetry and positivity") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> c(-9, 9);
  SpaceSpec da = SpaceSpec::drury_arveson(2);
  for (int t = 0; t < 50; ++t) {
    MPoly p(2), q(2);
    std::uniform_int_distribution<int> e(0, 3);
    for (int i = 0; i < 4; ++i) {
      p.add_term({e(rng), e(rng)}, ExactScalar(QuadExt(Rational(c(rng), 4)), QuadExt(Rational(c(rng), 4))));
      q.add_term({e(rng), e(rng)}, ExactScalar(QuadExt(Rational(c(rng), 4)), QuadExt(Rational(c(rng), 4))));
    }
    CHECK(da.inner(p, q) == da.inner(q, p).conj());
    ExactScalar n2 = da.inner(p, p);
    CHECK(n2.is_real());
    if (!p.is_zero()) CHECK(n2.re().sign() == 1);
  }
}

TEST_CASE("kernel closed forms") {
  SpaceSpec szego = SpaceSpec::dirichlet_disk(0);
  CHECK(std::abs(szego.kernel({{0, 0}}, {{0.37, 0.11}}) - 1.0) < 1e-15);
  SpaceSpec bergman = SpaceSpec::dirichlet_disk(-1);
  CHECK(std::abs(bergman.kernel({{0.5, 0}}, {{0.5, 0}}) - 16.0 / 9.0) < 1e-14);
  SpaceSpec da = SpaceSpec::drury_arveson(2);
  CHECK(std::abs(da.kernel({{0.5, 0}, {0, 0}}, {{0.5, 0}, {0, 0}}) - 4.0 / 3.0) < 1e-14);
  CHECK_THROWS_AS(szego.kernel({{1.0, 0}}, {{0.5, 0}}), DomainError);
  CHECK_THROWS_AS(SpaceSpec::dirichlet_disk(1).kernel({{0.5, 0}}, {{0.5, 0}}), ModeError);
}

TEST_CASE("bidisk kernel is the product of disk kernels") {
  SpaceSpec prod = SpaceSpec::dirichlet_bidisk(0, -1);
  SpaceSpec f1 = SpaceSpec::dirichlet_disk(0), f2 = SpaceSpec::dirichlet_disk(-1);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> mod(0, 0.95), arg(0, 6.28);
  for (int t = 0; t < 200; ++t) {
    std::complex<double> l1 = std::polar(mod(rng), arg(rng)), l2 = std::polar(mod(rng), arg(rng));
    std::complex<double> z1 = std::polar(mod(rng), arg(rng)), z2 = std::polar(mod(rng), arg(rng));
    auto lhs = prod.kernel({l1, l2}, {z1, z2});
    auto rhs = f1.kernel({l1}, {z1}) * f2.kernel({l2}, {z2});
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("kernel taylor truncations") {
  SpaceSpec szego = SpaceSpec::dirichlet_disk(0);
  CHECK(szego.kernel_taylor({Rational(1, 2)}, 2) == parse_mpoly("1+1/2*z+1/4*z^2", 1));
  SpaceSpec da = SpaceSpec::drury_arveson(2);
  CHECK(da.kernel_taylor({Rational(1, 2), Rational(1, 2)}, 1) ==
        parse_mpoly("1+1/2*z1+1/2*z2", 2));
  CHECK(da.kernel_taylor({Rational(0), Rational(0)}, 5) == MPoly::constant(2, ExactScalar(1)));
}

TEST_CASE("polynomial reproducing property") {
  // <p, T_N K_lambda> = p(lambda) exactly for deg p <= N.
  SpaceSpec berg = SpaceSpec::dirichlet_bidisk(-1, -1);
  std::vector<Rational> lam{Rational(1, 3), Rational(-2, 5)};
  MPoly ker = berg.kernel_taylor(lam, 4);
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> c(-7, 7);
  std::uniform_int_distribution<int> e(0, 2);
  for (int t = 0; t < 40; ++t) {
    MPoly p(2);
    for (int i = 0; i < 4; ++i) p.add_term({e(rng), e(rng)}, ExactScalar(Rational(c(rng), 3)));
    // Exact evaluation at the rational point.
    ExactScalar expect;
    for (const auto& [m, coef] : p.terms())
      expect += coef * ExactScalar(lam[0].pow(m[0]) * lam[1].pow(m[1]));
    CHECK(berg.inner(p, ker) == expect);
  }
}

TEST_CASE("kernel eval agrees with taylor partial sums") {
  SpaceSpec szego = SpaceSpec::dirichlet_disk(0);
  std::vector<Rational> lam{Rational(2, 5)};
  MPoly trunc = szego.kernel_taylor(lam, 40);
  std::complex<double> z{0.3, 0.2};
  double tail = std::pow(0.4 * std::abs(z), 41) / (1 - 0.4 * std::abs(z));
  CHECK(std::abs(szego.kernel({{0.4, 0}}, {z}) - trunc.eval({z})) <= tail + 1e-15);
}

TEST_CASE("space descriptor grammar") {
  CHECK(parse_space("dirichlet:1,1").str() == "dirichlet:1,1");
  CHECK(parse_space("da:3").dim() == 3);
  CHECK(parse_space("omega:[1,3/2,15/8]").weight({2}) == Rational(15, 8));
  CHECK(parse_space("hardy2").weight({4, 2}) == Rational(1));
  CHECK_THROWS(parse_space("banach:1"));
}
