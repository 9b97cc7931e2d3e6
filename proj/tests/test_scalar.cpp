#include <doctest.h>

#include "support.hpp"

using namespace gkmcoh;

TEST_SUITE("scalar") {

TEST_CASE("prime field arithmetic matches modular integers") {
  for (int p : {2, 3, 5, 7}) {
    for (long a = -7; a <= 7; ++a)
      for (long b = -7; b <= 7; ++b) {
        const Number x(Domain::prime_field, p, a), y(Domain::prime_field, p, b);
        auto mod = [p](long v) { return ((v % p) + p) % p; };
        CHECK((x + y).residue() == mod(a + b));
        CHECK((x - y).residue() == mod(a - b));
        CHECK((x * y).residue() == mod(a * b));
        if (mod(b) != 0)
          CHECK(((x * y) * y.inverse()).residue() == mod(a));
      }
    CHECK_THROWS_AS((void)Number(Domain::prime_field, p, p).inverse(), NotInvertible);
  }
}

TEST_CASE("integers: only +-1 are units") {
  CHECK(Number(Domain::integer, 0, -1).is_unit());
  CHECK(Number(Domain::integer, 0, 1).is_unit());
  CHECK_FALSE(Number(Domain::integer, 0, 2).is_unit());
  CHECK_THROWS_AS((void)Number(Domain::integer, 0, 3).inverse(), NotInvertible);
  CHECK_THROWS_AS((void)Number::from_rational(Domain::integer, 0, mpq_class(1, 2)), AlgebraError);
}

TEST_CASE("rationals invert exactly") {
  const Number x = Number::from_rational(Domain::rational, 0, mpq_class(-3, 7));
  CHECK((x * x.inverse()).is_one());
  CHECK(x.str() == "-3/7");
}

TEST_CASE("graded scalars: degrees and periodicity") {
  const Theory k1 = testing::morava(2, 1, 4);
  const Scalar v = k1.periodic(1);
  CHECK(v.degree() == -2);
  CHECK(v.str() == "v1");
  CHECK((v * v).str() == "v1^2");
  CHECK((v * v.inverse()).is_one());
  CHECK(testing::morava(3, 2, 4).periodic(1).degree() == -16);
  CHECK(testing::mult(4).periodic(1).degree() == -2);
  CHECK((-testing::mult(4).periodic(1)).str() == "-beta");
  // v1 + 1 mixes degrees 
  CHECK_THROWS_AS((void)(v + k1.one()), DegreeMismatch);
  // adding zero is always allowed
  CHECK(v + k1.zero() == v);
}

TEST_CASE("every nonzero homogeneous scalar of a graded field is a unit") {
  for (const Theory &t : {testing::morava(2, 1, 2), testing::morava(3, 1, 2), testing::mod_p(5, 2), testing::ordinary_q(2)}) {
    CHECK(t.is_graded_field());
    for (long c = 1; c < 5; ++c) {
      const Scalar s = t.integer(c) * t.periodic(t.ring().periodicity == Periodicity::none ? 0 : 3);
      if (!s.is_zero())
        CHECK(is_unit(s));
    }
  }
  CHECK_FALSE(testing::ordinary_z(2).is_graded_field());
  CHECK_FALSE(testing::mult(2).is_graded_field());
}

TEST_CASE("theory configuration is validated") {
  CHECK_THROWS_AS(make_theory({TheoryKind::morava, 2, std::nullopt, 4}), ConfigError);
  CHECK_THROWS_AS(make_theory({TheoryKind::morava, 4, 1, 4}), ConfigError);
  CHECK_THROWS_AS(make_theory({TheoryKind::morava, 2, 0, 4}), ConfigError);
  CHECK_THROWS_AS(make_theory({TheoryKind::ordinary_mod_p, std::nullopt, std::nullopt, 4}), ConfigError);
  CHECK_THROWS_AS(make_theory({TheoryKind::ordinary_integral, 3, std::nullopt, 4}), ConfigError);
  CHECK_THROWS_AS(make_theory({TheoryKind::ordinary_rational, std::nullopt, 2, 4}), ConfigError);
  CHECK_THROWS_AS(make_theory({TheoryKind::ordinary_integral, std::nullopt, std::nullopt, 0}), ConfigError);
  CHECK(make_theory({TheoryKind::multiplicative, 3, std::nullopt, 4}).ring().domain == Domain::prime_field);
  CHECK(testing::morava(2, 1, 4).name() == "morava(p=2,n=1)");
  CHECK(testing::morava(2, 2, 4).weight_period() == 3);
  CHECK(testing::mult(4).weight_period() == 1);
  CHECK(testing::ordinary_z(4).weight_period() == 0);
}

TEST_CASE("extension of scalars from Z to Q") {
  const Theory z = testing::ordinary_z(3);
  const Scalar two = z.integer(2);
  CHECK_FALSE(two.is_unit());
  const Scalar q = two.with_domain(Domain::rational);
  CHECK(q.is_unit());
  CHECK(q.inverse().base().to_rational() == mpq_class(1, 2));
}

}
