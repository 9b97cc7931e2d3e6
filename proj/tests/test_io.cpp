#include <doctest.h>

#include "support.hpp"
#include "gkmcoh/io.hpp"

using namespace gkmcoh;

namespace {

const char *cp2_text = R"yaml(torus_rank: 2
vertices: [A, B, C]
edges:
  - {tail: A, head: B, weight: [1, 0]}
  - {tail: A, head: C, weight: [0, 1]}
  - {tail: B, head: C, weight: [-1, 1]}
betti:
  - {degree: 0, rank: 1}
  - {degree: 4, rank: 1}
classes:
  H: {degree: 2, restrictions: ["0", "chi(1,0)", "chi(0,1)"]}
  byvertex:
    restrictions: {A: "u1*u2", B: "0", C: "0"}
  plain: ["1", "1", "1"]
)yaml";

InputError parse_error(const std::string &text) {
  try {
    (void)parse_graph_file(text);
  } catch (const InputError &e) {
    return e;
  }
  FAIL("expected an input error");
  return InputError("");
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("graph files round into the graph structure") {
  const GraphFile f = parse_graph_file(cp2_text);
  CHECK(f.graph.torus_rank == 2);
  CHECK(f.graph.vertices == std::vector<std::string>{"A", "B", "C"});
  REQUIRE(f.graph.edges.size() == 3);
  CHECK(f.graph.edges[2].tail == 1);
  CHECK(f.graph.edges[2].head == 2);
  CHECK(f.graph.edges[2].weight == Character{-1, 1});
  REQUIRE(f.betti);
  CHECK(*f.betti == std::map<int, long>{{0, 1}, {4, 1}});
  REQUIRE(f.classes.size() == 3);
  const ClassSpec *h = f.find_class("H");
  REQUIRE(h);
  CHECK(h->degree == 2);
  CHECK(h->expressions[2] == "chi(0,1)");
  CHECK(f.find_class("byvertex")->expressions[0] == "u1*u2");
  CHECK_FALSE(f.find_class("plain")->degree);
  CHECK_FALSE(f.find_class("missing"));
}

TEST_CASE("malformed files report line and column") {
  const InputError bad_len = parse_error("torus_rank: 2\nvertices: [A, B]\nedges:\n  - {tail: A, head: B, weight: [1]}\n");
  CHECK(bad_len.line() == 4);
  CHECK(std::string(bad_len.what()).find("weight has length 1") != std::string::npos);

  const InputError unknown = parse_error("torus_rank: 1\nvertices: [A, B]\nedges:\n  - {tail: A, head: Q, weight: [1]}\n");
  CHECK(unknown.line() == 4);
  CHECK(std::string(unknown.what()).find("unknown vertex 'Q'") != std::string::npos);

  const InputError missing = parse_error("torus_rank: 1\nvertices: [A]\n");
  CHECK(std::string(missing.what()).find("missing key 'edges'") != std::string::npos);

  const InputError syntax = parse_error("torus_rank: 1\nvertices: [A, B\n");
  CHECK(syntax.line() > 0);

  const InputError count = parse_error("torus_rank: 1\nvertices: [A, B]\nedges: []\nclasses:\n  c: [\"1\"]\n");
  CHECK(count.line() == 5);
  CHECK(std::string(count.what()).find("1 restrictions for 2 vertices") != std::string::npos);

  const InputError word = parse_error("torus_rank: two\nvertices: [A]\nedges: []\n");
  CHECK(word.line() == 1);
  CHECK(word.column() == 13);
}

TEST_CASE("expressions evaluate like the series arithmetic") {
  const FormalGroupLaw f = build_fgl(testing::morava(2, 1, 6));
  const Ring &r = f.ring();
  const auto u1 = TruncatedSeries::variable(r, 0, 2, 6), u2 = TruncatedSeries::variable(r, 1, 2, 6);
  const Scalar v1 = f.theory().periodic(1);
  CHECK(parse_expression("u1*u2 + v1*u1^2", f, 2) == u1 * u2 + u1 * u1 * v1);
  CHECK(parse_expression("chi(1,1)", f, 2) == formal_sum(f, u1, u2));
  CHECK(parse_expression("chi(1,0)*(u_2 - u1)", f, 2) == u1 * (u2 - u1));
  CHECK(parse_expression("3 - 2", f, 2) == TruncatedSeries::constant(f.theory().one(), 2, 6));

  const FormalGroupLaw q = build_fgl(testing::ordinary_q(4));
  const auto u = TruncatedSeries::variable(q.ring(), 0, 1, 4);
  CHECK(parse_expression("u^2/2 + u/3", q, 1) ==
        u * u * Scalar::from_rational(q.ring(), mpq_class(1, 2)) + u * Scalar::from_rational(q.ring(), mpq_class(1, 3)));
  const FormalGroupLaw k = build_fgl(testing::mult(4));
  CHECK(parse_expression("beta*u", k, 1) == TruncatedSeries::variable(k.ring(), 0, 1, 4) * k.theory().periodic(1));
}

TEST_CASE("expression errors carry offsets") {
  const FormalGroupLaw f = build_fgl(testing::ordinary_q(4));
  auto offset = [&](const std::string &s, int m) -> long {
    try {
      (void)parse_expression(s, f, m);
    } catch (const ExpressionError &e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset("u1 + u3", 2) == 5);
  CHECK(offset("u + 1", 2) == 0);
  CHECK(offset("chi(1)", 2) == 0);
  CHECK(offset("u1 +", 2) == 4);
  CHECK(offset("u1 * beta", 2) == 5);
  CHECK(offset("u1 / 0", 2) >= 3);
  CHECK(offset("(u1", 2) == 3);
  CHECK(offset("u1 # 2", 2) == 3);
}

TEST_CASE("tagged classes must be homogeneous of their degree") {
  const FormalGroupLaw f = build_fgl(testing::ordinary_q(4));
  const ClassSpec good{"g", 2, {"0", "u1", "u2"}, {}};
  const EquivariantClass c = build_class(good, f, 2);
  CHECK(c.degree == 2);
  CHECK(c.restrictions.size() == 3);
  const ClassSpec bad{"b", 2, {"0", "u1^2", "u2"}, {}};
  CHECK_THROWS_AS((void)build_class(bad, f, 2), InputError);
  const ClassSpec broken{"x", std::nullopt, {"0", "u1 +", "u2"}, {}};
  CHECK_THROWS_AS((void)build_class(broken, f, 2), InputError);
}

TEST_CASE("shipped graph files load and validate") {
  for (const char *name : {"cp1", "cp1_weight2", "cp2", "cp1xcp1"}) {
    CAPTURE(name);
    const GraphFile f = load_graph_file(std::string(GKMCOH_DATA_DIR) + "/graphs/" + name + ".yaml");
    CHECK(validate_graph(f.graph).valid());
  }
  CHECK_THROWS_AS((void)load_graph_file("/nonexistent/graph.yaml"), InputError);
}

}
