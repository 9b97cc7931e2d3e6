#include <doctest.h>

#include "support.hpp"
#include <algorithm>
#include <numeric>

#include "gkmcoh/linalg.hpp"

using namespace gkmcoh;

namespace {

FormalGroupLaw fgl_for(const GKMGraph &g, const Theory &t, int qmax) {
  return build_fgl(t.with_truncation(required_truncation(g, build_fgl(t), qmax)));
}

SolutionModule solve(const GKMGraph &g, const Theory &t, int qmax) {
  return solve_equivariant_cohomology(g, fgl_for(g, t, qmax), qmax);
}

GKMGraph cp3() {
  // vertex i carries the coordinate character e_i (e_0 = 0); edge weights e_j - e_i
  GKMGraph g{3, {"P0", "P1", "P2", "P3"}, {}};
  auto e = [](int i) {
    Character c(3, 0);
    if (i > 0)
      c[i - 1] = 1;
    return c;
  };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Character w = e(j);
      const Character ei = e(i);
      for (int k = 0; k < 3; ++k)
        w[k] -= ei[k];
      g.edges.push_back({i, j, w});
    }
  return g;
}

/// Rank of the degree-2w congruence system over Q computed without any
/// formal group law machinery: f_tail - f_head must vanish on the
/// hyperplane <weight, u> = 0, which is tested at random lattice points.
long hyperplane_oracle_rank(const GKMGraph &g, int w, std::mt19937 &rng) {
  const int m = g.torus_rank, k = g.vertex_count();
  const auto &idx = *MonomialIndex::get(m, w);
  const int first = idx.degree_begin(w), count = idx.degree_begin(w + 1) - first;
  std::uniform_int_distribution<long> coef(-7, 7);
  FieldMatrix a(Domain::rational, 0, 0, k * count);
  for (const auto &e : g.edges) {
    IntMatrix row(1, m);
    for (int j = 0; j < m; ++j)
      row(0, j) = e.weight[j];
    const IntMatrix ker = integer_kernel(row);
    for (int sample = 0; sample < count + 4; ++sample) {
      std::vector<long> x(static_cast<std::size_t>(m), 0);
      for (int b = 0; b < ker.rows(); ++b) {
        const long c = coef(rng);
        for (int j = 0; j < m; ++j)
          x[j] += c * ker(b, j);
      }
      a.append_zero_rows(1);
      for (int i = 0; i < count; ++i) {
        mpz_class value = 1;
        const auto ex = idx.exponents(first + i);
        for (int j = 0; j < m; ++j)
          for (int r = 0; r < ex[j]; ++r)
            value *= x[j];
        const Number v = Number::from_rational(Domain::rational, 0, mpq_class(value));
        a.set(a.rows() - 1, e.tail * count + i, a.at(a.rows() - 1, e.tail * count + i) + v);
        a.set(a.rows() - 1, e.head * count + i, a.at(a.rows() - 1, e.head * count + i) - v);
      }
    }
  }
  return static_cast<long>(null_space(a).leading.size());
}

} // namespace

TEST_SUITE("gkm") {

TEST_CASE("validation: golden graphs are valid") {
  CHECK(validate_graph(testing::cp1()).valid());
  CHECK(validate_graph(testing::cp2()).valid());
  CHECK(validate_graph(testing::cp1xcp1()).valid());
  CHECK(validate_graph(cp3()).valid());
  CHECK(validate_graph(testing::cp2(), 2).warnings.empty());
}

TEST_CASE("validation: violations name their location") {
  GKMGraph parallel{2, {"A", "B"}, {{0, 1, {1, 1}}, {0, 1, {2, 2}}}};
  const auto r = validate_graph(parallel);
  REQUIRE_FALSE(r.valid());
  CHECK(r.violations.front().where == "vertex A");
  CHECK(r.violations.front().message.find("dependent weights") != std::string::npos);

  GKMGraph zero{1, {"A", "B"}, {{0, 1, {0}}}};
  CHECK(validate_graph(zero).violations.front().message == "zero weight");
  GKMGraph short_weight{2, {"A", "B"}, {{0, 1, {1}}}};
  CHECK(validate_graph(short_weight).violations.front().where == "edge 1 (A-B)");
  GKMGraph apart{1, {"A", "B", "C", "D"}, {{0, 1, {1}}, {2, 3, {1}}}};
  CHECK(validate_graph(apart).violations.front().message.find("not connected") != std::string::npos);
}

TEST_CASE("validation: warnings for mod-p dependence and unequal valence") {
  GKMGraph g{2, {"A", "B", "C"}, {{0, 1, {1, 0}}, {0, 2, {1, 2}}, {1, 2, {0, 1}}}};
  CHECK(validate_graph(g).valid());
  const auto r = validate_graph(g, 2);
  CHECK(r.valid());
  REQUIRE_FALSE(r.warnings.empty());
  CHECK(r.warnings.front().message.find("dependent mod 2") != std::string::npos);
  const auto z = validate_graph(testing::cp1(2), 2);
  REQUIRE(z.warnings.size() == 1);
  CHECK(z.warnings.front().message == "weight (2) vanishes mod 2");
  GKMGraph path{1, {"A", "B", "C"}, {{0, 1, {1}}, {1, 2, {2}}}};
  const auto pr = validate_graph(path);
  CHECK(pr.valid() == false); // weights 1 and -2 at B are dependent over Q
}

TEST_CASE("congruences on CP1") {
  const Theory z = testing::ordinary_z(4);
  const FormalGroupLaw f = build_fgl(z);
  const auto u = TruncatedSeries::variable(z.ring(), 0, 1, 4);
  const TruncatedSeries zero(z.ring(), 1, 4);
  const auto one = TruncatedSeries::constant(z.one(), 1, 4);
  const GKMGraph g = testing::cp1();
  CHECK(satisfies_congruences(g, f, {{one, one}, 0}));
  CHECK(satisfies_congruences(g, f, {{character_class(f, {1}), zero}, 2}));
  CHECK(satisfies_congruences(g, f, {{u, u * u}, std::nullopt}));
  CHECK_FALSE(satisfies_congruences(g, f, {{zero, one}, 0}));
  const GKMGraph g2 = testing::cp1(2);
  CHECK(satisfies_congruences(g2, f, {{u * z.integer(2), zero}, 2}));
  CHECK_FALSE(satisfies_congruences(g2, f, {{u, zero}, 2}));
  CHECK_THROWS((void)satisfies_congruences(g2, f, {{u}, 2}));
}

TEST_CASE("CP1 in every theory: ranks 1, 2, 2 and the expected basis") {
  for (const Theory &t : testing::all_theories(4)) {
    CAPTURE(t.name());
    const SolutionModule s = solve(testing::cp1(), t, 4);
    CHECK(s.rank(0) == 1);
    CHECK(s.rank(2) == 2);
    CHECK(s.rank(4) == 2);
    const FormalGroupLaw f = fgl_for(testing::cp1(), t, 4);
    // (u, u) and (u, 0) lie in the span of the degree-2 basis
    const auto &b = s.degrees.at(2).basis;
    REQUIRE(b.size() == 2);
    for (const auto &c : b)
      CHECK(satisfies_congruences(testing::cp1(), f, c));
  }
}

TEST_CASE("CP2 over Q: ranks 1, 3, 6") {
  const SolutionModule s = solve(testing::cp2(), testing::ordinary_q(1), 4);
  CHECK(s.rank(0) == 1);
  CHECK(s.rank(2) == 3);
  CHECK(s.rank(4) == 6);
}

TEST_CASE("ranks over Q agree with the hyperplane oracle") {
  std::mt19937 rng(51);
  for (const GKMGraph &g : {testing::cp1(), testing::cp2(), testing::cp1xcp1(), cp3()}) {
    const int qmax = g.torus_rank == 3 ? 6 : 8;
    const SolutionModule s = solve(g, testing::ordinary_q(1), qmax);
    for (int w = 0; 2 * w <= qmax; ++w)
      CHECK(s.rank(2 * w) == hyperplane_oracle_rank(g, w, rng));
  }
}

TEST_CASE("graded-field theories match the free-module prediction") {
  const std::vector<std::pair<GKMGraph, std::map<int, long>>> cases{
      {testing::cp1(), testing::betti_cp1()},
      {testing::cp2(), testing::betti_cp2()},
      {testing::cp1xcp1(), testing::betti_cp1xcp1()},
      {cp3(), {{0, 1}, {2, 1}, {4, 1}, {6, 1}}}};
  for (const auto &[g, betti] : cases)
    for (const Theory &t : {testing::mod_p(2, 1), testing::mod_p(3, 1), testing::morava(2, 1, 1), testing::morava(3, 1, 1),
                            testing::morava(2, 2, 1)}) {
      CAPTURE(t.name());
      const SolutionModule s = solve(g, t, g.torus_rank == 3 ? 6 : 8);
      CHECK(check_formality(g, betti, s).pass());
    }
}

TEST_CASE("Morava K(1) on CP1 with weight 2: free of rank 2, second generator in u-degree 2") {
  for (auto [p, n] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    const Theory t = testing::morava(p, n, 1);
    const GKMGraph g = testing::cp1(2);
    const FormalGroupLaw f = fgl_for(g, t, 8);
    const int order = n_series(f, 2).valuation(); // p^n if p = 2, else 1
    const SolutionModule s = solve_equivariant_cohomology(g, f, 8);
    for (int w = 0; w <= 4; ++w)
      CHECK(s.rank(2 * w) == monomial_count(1, w) + monomial_count(1, w - order));
    // the Thom class of N restricts to [2]u there
    const TruncatedSeries zero(f.ring(), 1, f.truncation());
    CHECK(satisfies_congruences(g, f, {{character_class(f, {2}), zero}, 2}));
  }
}

TEST_CASE("integer coefficients: torsion in the solution lattice is reported") {
  const SolutionModule s = solve(testing::cp1(2), testing::ordinary_z(1), 4);
  CHECK(s.rank(2) == 2);
  CHECK(s.degrees.at(0).divisors.empty());
  CHECK(s.degrees.at(2).divisors == std::vector<std::string>{"2"});
  const SolutionModule prim = solve(testing::cp2(), testing::ordinary_z(1), 4);
  CHECK(prim.rank(4) == 6);
  CHECK(prim.degrees.at(4).divisors.empty());
}

TEST_CASE("solution bases: congruences, independence, subring closure") {
  std::mt19937 rng(52);
  for (const Theory &t : {testing::ordinary_q(1), testing::morava(2, 1, 1), testing::ordinary_z(1), testing::mult(1)}) {
    for (const GKMGraph &g : {testing::cp2(), testing::cp1xcp1()}) {
      CAPTURE(t.name());
      const FormalGroupLaw f = fgl_for(g, t, 6);
      const SolutionModule s = solve_equivariant_cohomology(g, f, 6);
      std::vector<EquivariantClass> all;
      for (const auto &[q, d] : s.degrees)
        for (const auto &c : d.basis) {
          CHECK(satisfies_congruences(g, f, c));
          CHECK(c.degree == q);
          for (const auto &r : c.restrictions)
            CHECK(r.is_homogeneous(q));
          all.push_back(c);
        }
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      for (int trial = 0; trial < 10; ++trial) {
        const auto &a = all[pick(rng)], &b = all[pick(rng)];
        EquivariantClass prod;
        for (int v = 0; v < g.vertex_count(); ++v)
          prod.restrictions.push_back(a.restrictions[v] * b.restrictions[v]);
        CHECK(satisfies_congruences(g, f, prod));
      }
    }
  }
}

TEST_CASE("ranks are invariant under vertex permutations and coordinate changes") {
  std::mt19937 rng(53);
  for (const Theory &t : {testing::ordinary_q(1), testing::morava(2, 1, 1), testing::ordinary_z(1)}) {
    for (const GKMGraph &g : {testing::cp2(), testing::cp1xcp1()}) {
      const SolutionModule base = solve(g, t, 6);
      std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const GKMGraph pg = g.permuted(perm);
      const FormalGroupLaw f = fgl_for(pg, t, 6);
      const SolutionModule ps = solve_equivariant_cohomology(pg, f, 6);
      const GKMGraph tg = g.transformed(testing::random_unimodular(2, rng));
      const SolutionModule ts = solve(tg, t, 6);
      for (int q = 0; q <= 6; q += 2) {
        CHECK(ps.rank(q) == base.rank(q));
        CHECK(ts.rank(q) == base.rank(q));
      }
      // permuting a basis tuple gives a class on the permuted graph
      for (const auto &c : base.degrees.at(4).basis) {
        EquivariantClass moved;
        for (int v : perm)
          moved.restrictions.push_back(c.restrictions[v].with_truncation(f.truncation()));
        CHECK(satisfies_congruences(pg, f, moved));
      }
    }
  }
}

TEST_CASE("check_formality reports the first failing degree") {
  const SolutionModule s = solve(testing::cp1(), testing::ordinary_q(1), 4);
  CHECK(check_formality(testing::cp1(), testing::betti_cp1(), s).pass());
  const FormalityReport bad = check_formality(testing::cp1(), {{0, 2}}, s);
  CHECK_FALSE(bad.pass());
  CHECK(bad.first_failure() == 0);
  const FormalityReport late = check_formality(testing::cp1(), {{0, 1}, {2, 1}, {4, 1}}, s);
  CHECK(late.first_failure() == 4);
}

TEST_CASE("solver rejects insufficient truncation and invalid graphs") {
  const FormalGroupLaw f = build_fgl(testing::ordinary_q(3));
  CHECK_THROWS_AS((void)solve_equivariant_cohomology(testing::cp2(), f, 8), std::invalid_argument);
  CHECK_THROWS_AS((void)solve_equivariant_cohomology(testing::cp2(), f, 3), std::invalid_argument);
  GKMGraph bad{2, {"A", "B"}, {{0, 1, {1, 1}}, {0, 1, {2, 2}}}};
  CHECK_THROWS_AS((void)solve_equivariant_cohomology(bad, f, 2), std::invalid_argument);
  CHECK(monomial_count(2, 3) == 4);
  CHECK(monomial_count(3, 2) == 6);
  CHECK(monomial_count(2, -1) == 0);
}

}
