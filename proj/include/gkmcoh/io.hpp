#pragma once

// Moment-graph files (YAML) and class expressions.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkmcoh/gkm.hpp"

namespace gkmcoh {

/// Malformed input; line and column are 1-based, 0 when unknown.
class InputError : public std::runtime_error {
public:
  InputError(const std::string &what, int line = 0, int column = 0);
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

private:
  int line_;
  int column_;
};

struct ClassSpec {
  std::string name;
  std::optional<int> degree;
  std::vector<std::string> expressions; // one per vertex
  std::vector<std::pair<int, int>> positions;
};

struct GraphFile {
  GKMGraph graph;
  std::optional<std::map<int, long>> betti;
  std::vector<ClassSpec> classes;

  [[nodiscard]] const ClassSpec *find_class(const std::string &name) const;
};

GraphFile parse_graph_file(const std::string &text);
GraphFile load_graph_file(const std::string &path);

/// Expression error at a 0-based character offset.
class ExpressionError : public std::runtime_error {
public:
  ExpressionError(const std::string &what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Parses a polynomial in u1..um (or u when m = 1) with integer or
/// fractional coefficients, the periodicity symbol of the theory (beta,
/// v1, ...) and character classes chi(a1, ..., am).
/// Grammar: sums and differences of products, '^' with a non-negative
/// integer exponent, '/' by an integer, parentheses.
TruncatedSeries parse_expression(const std::string &text, const FormalGroupLaw &fgl, int variables);

/// The restrictions of a class spec; checks homogeneity when tagged.
EquivariantClass build_class(const ClassSpec &spec, const FormalGroupLaw &fgl, int variables);

} // namespace gkmcoh
