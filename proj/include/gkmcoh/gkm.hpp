#pragma once

// Moment graphs and the edge-congruence description of E^*_T(M).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkmcoh/classifying.hpp"

namespace gkmcoh {

struct GKMEdge {
  int tail = 0;
  int head = 0;
  Character weight;
};

struct GKMGraph {
  int torus_rank = 0;
  std::vector<std::string> vertices;
  std::vector<GKMEdge> edges;

  [[nodiscard]] int vertex_count() const { return static_cast<int>(vertices.size()); }
  /// Weights of the edges at v, oriented away from v.
  [[nodiscard]] std::vector<Character> tangent_weights(int v) const;
  [[nodiscard]] int valence(int v) const;
  /// Common valence of all vertices, if there is one.
  [[nodiscard]] std::optional<int> uniform_valence() const;
  /// Same graph with every weight replaced by a * W (a change of torus
  /// coordinates by the unimodular matrix W).
  [[nodiscard]] GKMGraph transformed(const IntMatrix &w) const;
  /// Vertex i of the result is vertex perm[i] of this graph.
  [[nodiscard]] GKMGraph permuted(const std::vector<int> &perm) const;
};

struct GraphIssue {
  std::string where; // "vertex B", "edge 2 (A-C)", "graph"
  std::string message;
};

struct GraphReport {
  std::vector<GraphIssue> violations;
  std::vector<GraphIssue> warnings;
  [[nodiscard]] bool valid() const { return violations.empty(); }
};

/// Checks the moment-graph invariants. With a prime, also warns when two
/// weights at a vertex become dependent mod p.
GraphReport validate_graph(const GKMGraph &g, std::optional<int> prime = std::nullopt);

/// A tuple of restrictions (f_1, ..., f_k) to the fixed points.
struct EquivariantClass {
  std::vector<TruncatedSeries> restrictions;
  std::optional<int> degree;
};

/// Edge congruences: f_tail - f_head lies in the kernel ideal of every edge.
bool satisfies_congruences(const GKMGraph &g, const FormalGroupLaw &fgl, const EquivariantClass &c);

struct DegreeSolution {
  int degree = 0;
  long rank = 0;
  std::vector<EquivariantClass> basis;
  /// Elementary divisors > 1 of the solution lattice (integer coefficients).
  std::vector<std::string> divisors;
};

struct SolutionModule {
  Theory theory;
  int truncation = 0;
  int max_degree = 0;
  std::map<int, DegreeSolution> degrees;
  std::vector<std::string> provenance;

  [[nodiscard]] long rank(int q) const { return degrees.at(q).rank; }
};

/// Smallest truncation degree that leaves enough room above max_degree / 2
/// for the edge ideals of g.
int required_truncation(const GKMGraph &g, const FormalGroupLaw &fgl, int max_degree);

/// Solves the congruence system degree by degree for even q <= max_degree.
/// Ranks are the dimensions of the u-adic associated graded pieces: r(2w)
/// counts solutions whose lowest u-degree terms sit in total degree w.
SolutionModule solve_equivariant_cohomology(const GKMGraph &g, const FormalGroupLaw &fgl, int max_degree);

struct FormalityLine {
  int degree = 0;
  long expected = 0;
  long actual = 0;
  [[nodiscard]] bool pass() const { return expected == actual; }
};

struct FormalityReport {
  std::vector<FormalityLine> lines;
  [[nodiscard]] bool pass() const;
  /// Degree of the first failing line, if any.
  [[nodiscard]] std::optional<int> first_failure() const;
};

/// Number of monomials of total degree b in m variables.
long monomial_count(int m, int b);

/// betti maps a degree to the rank of E^*(M) there.
FormalityReport check_formality(const GKMGraph &g, const std::map<int, long> &betti, const SolutionModule &s);

} // namespace gkmcoh
