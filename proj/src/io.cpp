#include "gkmcoh/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace gkmcoh {

InputError::InputError(const std::string &what, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + what : what),
      line_(line), column_(column) {}

const ClassSpec *GraphFile::find_class(const std::string &name) const {
  for (const auto &c : classes)
    if (c.name == name)
      return &c;
  return nullptr;
}

namespace {

[[noreturn]] void fail(const YAML::Node &node, const std::string &what) {
  const YAML::Mark m = node.Mark();
  if (m.is_null())
    throw InputError(what);
  throw InputError(what, m.line + 1, m.column + 1);
}

YAML::Node require(const YAML::Node &parent, const char *key) {
  const YAML::Node n = parent[key];
  if (!n)
    fail(parent, std::string("missing key '") + key + "'");
  return n;
}

template <class T> T scalar_as(const YAML::Node &node, const char *what) {
  if (!node.IsScalar())
    fail(node, std::string("expected ") + what);
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion &) {
    fail(node, std::string("expected ") + what + ", got '" + node.Scalar() + "'");
  }
}

int vertex_ref(const YAML::Node &node, const std::vector<std::string> &names) {
  const std::string s = scalar_as<std::string>(node, "a vertex name");
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == s)
      return static_cast<int>(i);
  fail(node, "unknown vertex '" + s + "'");
}

std::pair<int, int> position(const YAML::Node &node) {
  const YAML::Mark m = node.Mark();
  return m.is_null() ? std::pair{0, 0} : std::pair{m.line + 1, m.column + 1};
}

ClassSpec parse_class(const std::string &name, const YAML::Node &node, const GKMGraph &g) {
  ClassSpec spec;
  spec.name = name;
  YAML::Node values = node;
  if (node.IsMap()) {
    if (node["degree"])
      spec.degree = scalar_as<int>(node["degree"], "an integer degree");
    values = require(node, "restrictions");
  }
  if (values.IsSequence()) {
    if (static_cast<int>(values.size()) != g.vertex_count())
      fail(values, "class '" + name + "' has " + std::to_string(values.size()) + " restrictions for " +
                       std::to_string(g.vertex_count()) + " vertices");
    for (const auto &v : values) {
      spec.expressions.push_back(scalar_as<std::string>(v, "an expression"));
      spec.positions.push_back(position(v));
    }
  } else if (values.IsMap()) {
    spec.expressions.assign(g.vertices.size(), "");
    spec.positions.assign(g.vertices.size(), {0, 0});
    std::vector<bool> seen(g.vertices.size(), false);
    for (const auto &kv : values) {
      const int v = vertex_ref(kv.first, g.vertices);
      if (seen[v])
        fail(kv.first, "vertex listed twice");
      seen[v] = true;
      spec.expressions[v] = scalar_as<std::string>(kv.second, "an expression");
      spec.positions[v] = position(kv.second);
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (!seen[v])
        fail(values, "class '" + name + "' has no restriction at vertex " + g.vertices[v]);
  } else {
    fail(values, "class '" + name + "' must be a list or map of restrictions");
  }
  return spec;
}

GraphFile parse_document(const YAML::Node &root) {
  if (!root.IsMap())
    fail(root, "graph file must be a mapping");
  GraphFile file;
  GKMGraph &g = file.graph;
  g.torus_rank = scalar_as<int>(require(root, "torus_rank"), "an integer torus rank");
  if (g.torus_rank < 1)
    fail(root["torus_rank"], "torus rank must be positive");

  const YAML::Node vertices = require(root, "vertices");
  if (!vertices.IsSequence())
    fail(vertices, "vertices must be a list");
  for (const auto &v : vertices)
    g.vertices.push_back(scalar_as<std::string>(v, "a vertex name"));

  const YAML::Node edges = require(root, "edges");
  if (!edges.IsSequence())
    fail(edges, "edges must be a list");
  for (const auto &e : edges) {
    if (!e.IsMap())
      fail(e, "edge must be a mapping with tail, head and weight");
    GKMEdge edge;
    edge.tail = vertex_ref(require(e, "tail"), g.vertices);
    edge.head = vertex_ref(require(e, "head"), g.vertices);
    const YAML::Node w = require(e, "weight");
    if (!w.IsSequence())
      fail(w, "weight must be a list of integers");
    for (const auto &x : w)
      edge.weight.push_back(scalar_as<long>(x, "an integer weight entry"));
    if (static_cast<int>(edge.weight.size()) != g.torus_rank)
      fail(w, "weight has length " + std::to_string(edge.weight.size()) + ", torus rank is " +
                  std::to_string(g.torus_rank));
    g.edges.push_back(std::move(edge));
  }

  if (const YAML::Node b = root["betti"]) {
    if (!b.IsSequence())
      fail(b, "betti must be a list of {degree, rank}");
    std::map<int, long> betti;
    for (const auto &entry : b) {
      const int d = scalar_as<int>(require(entry, "degree"), "an integer degree");
      const long r = scalar_as<long>(require(entry, "rank"), "an integer rank");
      if (d < 0 || r < 0)
        fail(entry, "betti degree and rank must be non-negative");
      if (!betti.emplace(d, r).second)
        fail(entry, "degree " + std::to_string(d) + " listed twice");
    }
    file.betti = std::move(betti);
  }

  if (const YAML::Node cs = root["classes"]) {
    if (!cs.IsMap())
      fail(cs, "classes must be a mapping from names to restrictions");
    for (const auto &kv : cs)
      file.classes.push_back(parse_class(scalar_as<std::string>(kv.first, "a class name"), kv.second, g));
  }
  return file;
}

} // namespace

GraphFile parse_graph_file(const std::string &text) {
  try {
    return parse_document(YAML::Load(text));
  } catch (const YAML::ParserException &e) {
    throw InputError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
}

GraphFile load_graph_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_file(ss.str());
}

namespace {

class ExpressionParser {
public:
  ExpressionParser(const std::string &text, const FormalGroupLaw &fgl, int m) : s_(text), fgl_(fgl), m_(m) {}

  TruncatedSeries parse() {
    TruncatedSeries r = sum();
    skip();
    if (pos_ != s_.size())
      throw ExpressionError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return r;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ExpressionError(std::string("expected '") + c + "'", pos_);
  }

  TruncatedSeries zero() const { return TruncatedSeries(fgl_.ring(), m_, fgl_.truncation()); }
  TruncatedSeries constant(const Scalar &c) const { return TruncatedSeries::constant(c, m_, fgl_.truncation()); }

  template <class F> TruncatedSeries guarded(std::size_t at, F f) {
    try {
      return f();
    } catch (const AlgebraError &e) {
      throw ExpressionError(e.what(), at);
    }
  }

  TruncatedSeries sum() {
    skip();
    const std::size_t start = pos_;
    TruncatedSeries r = product();
    for (;;) {
      if (accept('+')) {
        TruncatedSeries t = product();
        r = guarded(start, [&] { return r + t; });
      } else if (accept('-')) {
        TruncatedSeries t = product();
        r = guarded(start, [&] { return r - t; });
      } else {
        return r;
      }
    }
  }

  TruncatedSeries product() {
    skip();
    const std::size_t start = pos_;
    TruncatedSeries r = unary();
    for (;;) {
      if (accept('*')) {
        TruncatedSeries t = unary();
        r = r * t;
      } else if (accept('/')) {
        skip();
        const std::size_t at = pos_;
        const long d = integer();
        if (d == 0)
          throw ExpressionError("division by zero", at);
        r = guarded(start, [&] {
          return r * Scalar::from_rational(fgl_.ring(), mpq_class(1, static_cast<unsigned long>(d < 0 ? -d : d)) *
                                                            (d < 0 ? -1 : 1));
        });
      } else {
        return r;
      }
    }
  }

  TruncatedSeries unary() {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  TruncatedSeries power() {
    TruncatedSeries base = atom();
    if (accept('^')) {
      skip();
      const std::size_t at = pos_;
      const long e = integer();
      if (e < 0 || e > 4096)
        throw ExpressionError("exponent must be a small non-negative integer", at);
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      throw ExpressionError("expected an integer", start);
    try {
      return std::stol(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range &) {
      throw ExpressionError("integer out of range", start);
    }
  }

  long signed_integer() {
    if (accept('-'))
      return -integer();
    accept('+');
    return integer();
  }

  TruncatedSeries atom() {
    skip();
    if (pos_ >= s_.size())
      throw ExpressionError("unexpected end of expression", pos_);
    const std::size_t start = pos_;
    if (accept('(')) {
      TruncatedSeries r = sum();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const long v = integer();
      return constant(Scalar::from_int(fgl_.ring(), v));
    }
    if (!std::isalpha(static_cast<unsigned char>(s_[pos_])))
      throw ExpressionError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string id = s_.substr(start, pos_ - start);

    if (id == "chi") {
      expect('(');
      Character a;
      a.push_back(signed_integer());
      while (accept(','))
        a.push_back(signed_integer());
      expect(')');
      if (static_cast<int>(a.size()) != m_)
        throw ExpressionError("chi needs " + std::to_string(m_) + " entries", start);
      return character_class(fgl_, a);
    }
    const std::string sym = fgl_.ring().symbol();
    if (!sym.empty() && id == sym)
      return constant(Scalar::periodic(fgl_.ring(), 1));
    if (id == "u") {
      if (m_ != 1)
        throw ExpressionError("use u1..u" + std::to_string(m_) + " for a torus of rank " + std::to_string(m_), start);
      return TruncatedSeries::variable(fgl_.ring(), 0, m_, fgl_.truncation());
    }
    if (id.size() > 1 && id[0] == 'u') {
      std::string digits = id.substr(id[1] == '_' ? 2 : 1);
      if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
        const int i = std::stoi(digits);
        if (i < 1 || i > m_)
          throw ExpressionError("variable " + id + " out of range 1.." + std::to_string(m_), start);
        return TruncatedSeries::variable(fgl_.ring(), i - 1, m_, fgl_.truncation());
      }
    }
    throw ExpressionError("unknown symbol '" + id + "'", start);
  }

  const std::string &s_;
  const FormalGroupLaw &fgl_;
  int m_;
  std::size_t pos_ = 0;
};

} // namespace

TruncatedSeries parse_expression(const std::string &text, const FormalGroupLaw &fgl, int variables) {
  return ExpressionParser(text, fgl, variables).parse();
}

EquivariantClass build_class(const ClassSpec &spec, const FormalGroupLaw &fgl, int variables) {
  EquivariantClass c;
  c.degree = spec.degree;
  for (std::size_t v = 0; v < spec.expressions.size(); ++v) {
    const auto [line, col] = v < spec.positions.size() ? spec.positions[v] : std::pair{0, 0};
    try {
      c.restrictions.push_back(parse_expression(spec.expressions[v], fgl, variables));
    } catch (const ExpressionError &e) {
      throw InputError("class '" + spec.name + "': " + e.what(), line,
                       line > 0 ? col + static_cast<int>(e.offset()) : 0);
    }
    if (spec.degree && !c.restrictions.back().is_homogeneous(*spec.degree))
      throw InputError("class '" + spec.name + "': restriction " + std::to_string(v + 1) +
                           " is not homogeneous of degree " + std::to_string(*spec.degree),
                       line, col);
  }
  return c;
}

} // namespace gkmcoh
