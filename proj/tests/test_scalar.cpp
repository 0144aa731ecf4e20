#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opakit/scalar.hpp"

using namespace opakit;

namespace {

std::mt19937 rng(20240817);

Rational random_rational() {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  return Rational(num(rng), den(rng));
}

ExactScalar random_scalar() {
  return ExactScalar(QuadExt(random_rational(), random_rational()),
                     QuadExt(random_rational(), random_rational()));
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(-4, 6).str() == "-2/3");
  CHECK(Rational(5).str() == "5");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational parse forms") {
  CHECK(Rational::parse("7/15") == Rational(7, 15));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
}

TEST_CASE("quadext defining relation") {
  QuadExt s2 = QuadExt::sqrt2();
  CHECK(s2 * s2 == QuadExt(Rational(2)));
  QuadExt x(Rational(1), Rational(1));  // 1 + sqrt2
  CHECK((x * x.inverse()) == QuadExt(Rational(1)));
  CHECK(x.sign() == 1);
  CHECK(QuadExt(Rational(-3), Rational(2)).sign() < 0);   // -3 + 2 sqrt2 < 0
  CHECK(QuadExt(Rational(-1), Rational(1)).sign() > 0);   // -1 + sqrt2 > 0
}

TEST_CASE("field op examples") {
  ExactScalar one(1);
  ExactScalar s2 = ExactScalar::sqrt2();
  CHECK((one + s2) == ExactScalar(QuadExt(Rational(1), Rational(1))));
  CHECK((s2 * s2) == ExactScalar(2));
  ExactScalar z(QuadExt(Rational(1, 2)), QuadExt(Rational(1, 3)));
  CHECK(z.conj() == ExactScalar(QuadExt(Rational(1, 2)), QuadExt(Rational(-1, 3))));
  CHECK_THROWS_AS(one / ExactScalar(), std::domain_error);
}

TEST_CASE("to_float demotions") {
  CHECK(Rational(7, 15).to_double() == Catch::Approx(0.4666666666666667).epsilon(1e-15));
  CHECK(Rational(39, 23).to_double() == Catch::Approx(1.6956521739130435).epsilon(1e-15));
  CHECK(QuadExt(Rational(1), Rational(1)).to_double() ==
        Catch::Approx(2.414213562373095).epsilon(1e-15));
  // Magnitude beyond double range must error, not return inf.
  mpz_class huge;
  mpz_ui_pow_ui(huge.get_mpz_t(), 10, 400);
  CHECK_THROWS_AS(Rational(huge).to_double(), std::overflow_error);
}

TEST_CASE("field axioms on random triples") {
  for (int i = 0; i < 1000; ++i) {
    ExactScalar x = random_scalar(), y = random_scalar(), z = random_scalar();
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
    CHECK((x * y).conj() == x.conj() * y.conj());
  }
}

TEST_CASE("to_float respects multiplication") {
  for (int i = 0; i < 200; ++i) {
    ExactScalar x = random_scalar(), y = random_scalar();
    auto lhs = (x * y).to_complex();
    auto rhs = x.to_complex() * y.to_complex();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("scalar text round trip") {
  for (int i = 0; i < 200; ++i) {
    ExactScalar x = random_scalar();
    CHECK(parse_scalar(x.str()) == x);
  }
  CHECK(parse_scalar("1/2+2/3*s2").str() == "1/2+2/3*s2");
  CHECK(parse_scalar("(1/2,-1/3)").str() == "(1/2,-1/3)");
  CHECK(parse_scalar("s2") == ExactScalar::sqrt2());
}
