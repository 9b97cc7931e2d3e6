#include <doctest.h>

#include <array>

#include "support.hpp"

using namespace gkmcoh;

namespace {

TruncatedSeries u(const Theory &t, int i, int m) { return TruncatedSeries::variable(t.ring(), i, m, t.truncation()); }

} // namespace

TEST_SUITE("classifying") {

TEST_CASE("character classes") {
  const Theory z = testing::ordinary_z(4);
  const FormalGroupLaw add = build_fgl(z);
  CHECK(character_class(add, {2, -1}) == u(z, 0, 2) * z.integer(2) - u(z, 1, 2));
  CHECK(character_class(add, {0, 0}).is_zero());
  const Theory k = testing::morava(2, 1, 6);
  const FormalGroupLaw honda = build_fgl(k);
  CHECK(character_class(honda, {2, 0}).str() == "v1*u1^2");
}

TEST_CASE("character classes are additive") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<long> d(-3, 3);
  for (const Theory &t : testing::all_theories(6)) {
    const FormalGroupLaw f = build_fgl(t);
    for (int trial = 0; trial < 4; ++trial) {
      const Character a{d(rng), d(rng)}, b{d(rng), d(rng)};
      const Character s{a[0] + b[0], a[1] + b[1]};
      CHECK(formal_sum(f, character_class(f, a), character_class(f, b)) == character_class(f, s));
    }
  }
}

TEST_CASE("cyclic classifying rings of Morava K-theory") {
  const FormalGroupLaw k21 = build_fgl(testing::morava(2, 1, 16));
  const auto two = cyclic_classifying_ring(k21, 2);
  CHECK(two.relation.str() == "v1*u^2");
  CHECK(two.rank == 2);
  CHECK(two.unit_leading);
  const auto six = cyclic_classifying_ring(k21, 6);
  CHECK(six.rank == two.rank);
  CHECK(six.normalized_relation() == two.normalized_relation());
  CHECK(six.p_adic_valuation == 1);
  CHECK(six.prime_to_p == 3);
  CHECK(cyclic_classifying_ring(k21, 4).rank == 4);
  CHECK(cyclic_classifying_ring(k21, 12).rank == 4);
  CHECK(cyclic_classifying_ring(k21, 3).rank == 1);

  const FormalGroupLaw k31 = build_fgl(testing::morava(3, 1, 16));
  CHECK(cyclic_classifying_ring(k31, 3).rank == 3);
  CHECK(cyclic_classifying_ring(k31, 9).rank == 9);
  CHECK(cyclic_classifying_ring(k31, 9).periodic_exponent == 4);

  // normal form: truncation below u^{p^{rn}}
  const auto &t = k21.theory();
  const TruncatedSeries x = u(t, 0, 1);
  const TruncatedSeries f = x + x * x * x * t.periodic(2);
  CHECK(cyclic_classifying_ring(k21, 4).reduce(f) == f);
  CHECK(two.reduce(f) == x);
}

TEST_CASE("cyclic presentation over the integers has no rank") {
  const auto three = cyclic_classifying_ring(build_fgl(testing::ordinary_z(4)), 3);
  CHECK(three.relation.str() == "3*u");
  CHECK_FALSE(three.rank.has_value());
  CHECK_THROWS_AS((void)three.normalized_relation(), AlgebraError);
}

TEST_CASE("kernel ideals: small weights") {
  const Theory z = testing::ordinary_z(5);
  const FormalGroupLaw add = build_fgl(z);
  const RestrictionIdeal i = kernel_ideal(add, {0, 2});
  CHECK(i.multiplicity == 2);
  CHECK(i.basis == IntMatrix::identity(2));
  CHECK(i.generator == u(z, 1, 2) * z.integer(2));

  const FormalGroupLaw k21 = build_fgl(testing::morava(2, 1, 5));
  CHECK(kernel_ideal(k21, {0, 2}).generator.str() == "v1*u2^2");

  for (const Theory &t : testing::all_theories(5)) {
    const FormalGroupLaw f = build_fgl(t);
    const RestrictionIdeal prim = kernel_ideal(f, {2, 3, -1});
    CHECK(prim.generator == u(t, 2, 3));
  }
  CHECK_THROWS((void)kernel_ideal(add, {0, 0}));
}

TEST_CASE("the character becomes the last adapted variable") {
  for (const Theory &t : testing::all_theories(6)) {
    const FormalGroupLaw f = build_fgl(t);
    for (const Character &a : {Character{3, -2}, Character{1, 1, 1}, Character{-5, 2}, Character{2, 3, 5}}) {
      const RestrictionIdeal i = kernel_ideal(f, a);
      CHECK(to_adapted_coordinates(character_class(f, i.primitive), i) == u(t, static_cast<int>(a.size()) - 1,
                                                                            static_cast<int>(a.size())));
    }
  }
}

TEST_CASE("residues: membership examples") {
  const Theory z = testing::ordinary_z(5);
  const FormalGroupLaw add = build_fgl(z);
  const RestrictionIdeal i = kernel_ideal(add, {0, 2});
  const auto u2 = u(z, 1, 2);
  CHECK(ideal_residue(u2, i) == u2);
  CHECK(ideal_residue(u2 * z.integer(2) + u2 * u2 * z.integer(4), i).is_zero());
  CHECK(ideal_residue(u2 * z.integer(3), i) == u2);
  for (const Theory &t : testing::all_theories(6)) {
    const FormalGroupLaw f = build_fgl(t);
    for (const Character &a : {Character{0, 2}, Character{3, -3}, Character{2, 4}, Character{1, 5}}) {
      CAPTURE(t.name());
      CAPTURE(to_string(a));
      CHECK(ideal_residue(character_class(f, a), kernel_ideal(f, a)).is_zero());
    }
  }
}

TEST_CASE("residues are well defined modulo the ideal") {
  std::mt19937 rng(42);
  for (const Theory &t : testing::all_theories(6)) {
    const FormalGroupLaw f = build_fgl(t);
    for (const Character &a : {Character{0, 2}, Character{2, -4}, Character{1, 3}}) {
      const RestrictionIdeal ideal = kernel_ideal(f, a);
      const TruncatedSeries chi = character_class(f, a);
      for (int trial = 0; trial < 3; ++trial) {
        const TruncatedSeries x = testing::random_homogeneous(t, 2, 4, rng);
        const TruncatedSeries k = testing::random_homogeneous(t, 2, 2, rng);
        CAPTURE(t.name());
        CHECK(ideal_residue(x + chi * k, ideal) == ideal_residue(x, ideal));
      }
    }
  }
}

TEST_CASE("residue verdicts do not depend on torus coordinates") {
  std::mt19937 rng(43);
  for (const Theory &t : {testing::ordinary_z(5), testing::morava(2, 1, 5), testing::morava(3, 1, 5)}) {
    const FormalGroupLaw f = build_fgl(t);
    for (int trial = 0; trial < 4; ++trial) {
      const IntMatrix w = testing::random_unimodular(2, rng);
      // u_i -> chi(row_i(W)) transports series along a -> a W
      std::vector<TruncatedSeries> images;
      for (int r = 0; r < 2; ++r)
        images.push_back(character_class(f, {w(r, 0), w(r, 1)}));
      for (const Character &a : {Character{0, 2}, Character{1, 1}, Character{2, 2}}) {
        const RestrictionIdeal before = kernel_ideal(f, a);
        const RestrictionIdeal after = kernel_ideal(f, pull_back(a, w));
        for (int k = 0; k < 4; ++k) {
          const TruncatedSeries x = k % 2 == 0
                                        ? character_class(f, a) * testing::random_homogeneous(t, 2, 2, rng)
                                        : testing::random_homogeneous(t, 2, 4, rng);
          const bool in_before = ideal_residue(x, before).is_zero();
          const bool in_after = ideal_residue(series_substitute(x, images), after).is_zero();
          CHECK(in_before == in_after);
        }
      }
    }
  }
}

TEST_CASE("Kunneth: quotient ranks of a product of cyclic groups") {
  for (auto [p, n] : {std::pair{2, 1}, std::pair{3, 1}}) {
    const Theory t = testing::morava(p, n, 12);
    const FormalGroupLaw f = build_fgl(t);
    for (auto [l1, l2] : {std::pair{2L, 3L}, std::pair{4L, 6L}, std::pair{9L, 3L}, std::pair{2L, 2L}}) {
      const int n1 = cyclic_classifying_ring(f, l1).relation_order;
      const int n2 = cyclic_classifying_ring(f, l2).relation_order;
      const std::vector<TruncatedSeries> gens{character_class(f, {l1, 0}), character_class(f, {0, l2})};
      const int w_max = 6;
      const auto ranks = quotient_weight_ranks(gens, w_max);
      for (int w = 0; w <= w_max; ++w) {
        long expected = 0;
        for (int a = 0; a <= w; ++a)
          if (a < n1 && w - a < n2)
            ++expected;
        CAPTURE(l1);
        CAPTURE(l2);
        CHECK(ranks[w] == expected);
      }
      long total = 0;
      for (long r : quotient_weight_ranks(gens, 12))
        total += r;
      if (n1 + n2 - 2 <= 12) {
        CHECK(total == static_cast<long>(n1) * n2);
      }
    }
  }
}

}
