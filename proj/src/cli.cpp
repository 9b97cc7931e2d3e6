#include "gkmcoh/cli.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "gkmcoh/integrate.hpp"
#include "gkmcoh/io.hpp"

namespace gkmcoh::cli {

namespace {

struct TheoryOptions {
  std::string theory = "ordinary";
  std::optional<int> p;
  std::optional<int> n;
  std::optional<int> trunc;
};

void add_theory_options(CLI::App *cmd, TheoryOptions &t) {
  cmd->add_option("--theory", t.theory, "ordinary | ordinary-q | mod-p | mult | morava")
      ->check(CLI::IsMember({"ordinary", "ordinary-q", "mod-p", "mult", "morava"}))
      ->capture_default_str();
  cmd->add_option("--p", t.p, "prime");
  cmd->add_option("--n", t.n, "height (morava)");
  cmd->add_option("--trunc", t.trunc, "truncation degree D");
}

/// Thrown for bad flag combinations; reported with exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Theory theory_from(const TheoryOptions &t, int default_trunc) {
  TheoryConfig c;
  if (t.theory == "ordinary")
    c.kind = TheoryKind::ordinary_integral;
  else if (t.theory == "ordinary-q")
    c.kind = TheoryKind::ordinary_rational;
  else if (t.theory == "mod-p")
    c.kind = TheoryKind::ordinary_mod_p;
  else if (t.theory == "mult")
    c.kind = TheoryKind::multiplicative;
  else
    c.kind = TheoryKind::morava;
  const bool wants_p = c.kind == TheoryKind::ordinary_mod_p || c.kind == TheoryKind::morava;
  if (wants_p && !t.p)
    throw UsageError("--p is required for --theory " + t.theory);
  if (c.kind == TheoryKind::morava && !t.n)
    throw UsageError("--n is required for --theory morava");
  if (c.kind != TheoryKind::morava && t.n)
    throw UsageError("--n only applies to --theory morava");
  if (t.p && !wants_p && c.kind != TheoryKind::multiplicative)
    throw UsageError("--p does not apply to --theory " + t.theory);
  c.p = t.p;
  c.n = t.n;
  c.truncation = t.trunc.value_or(default_trunc);
  try {
    return make_theory(c);
  } catch (const ConfigError &e) {
    throw UsageError(e.what());
  }
}

std::string tuple_str(const EquivariantClass &c, const std::vector<std::string> &names) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.restrictions.size(); ++i) {
    if (i)
      s += ", ";
    s += c.restrictions[i].str(names);
  }
  return s + ")";
}

void print_header(std::ostream &out, const Theory &theory) {
  out << "theory: " << theory.name() << "\n";
  out << "coefficients: " << theory.describe() << "\n";
}

void print_model_banner(std::ostream &out, const Theory &theory) {
  if (!theory.is_morava())
    out << "model: conjectural\n";
}

/// Loads and validates; fills result and returns nullopt when the command
/// must stop.
std::optional<GraphFile> load_valid_graph(const std::string &path, const Theory &theory, CommandResult &result,
                                          std::ostream &out, std::ostream &err) {
  GraphFile file = load_graph_file(path);
  const std::optional<int> prime =
      theory.ring().domain == Domain::prime_field ? std::optional<int>(theory.ring().p) : std::nullopt;
  const GraphReport report = validate_graph(file.graph, prime);
  for (const auto &w : report.warnings)
    err << "warning: " << w.where << ": " << w.message << "\n";
  if (!report.valid()) {
    for (const auto &v : report.violations)
      out << "violation: " << v.where << ": " << v.message << "\n";
    result.exit_code = invalid_graph;
    return std::nullopt;
  }
  return file;
}

int cmd_fgl(const TheoryOptions &t, std::optional<long> ell, std::ostream &out) {
  const Theory theory = theory_from(t, 8);
  const FormalGroupLaw fgl = build_fgl(theory);
  print_header(out, theory);
  out << "F(x,y) = " << fgl.str() << "\n";
  out << "i(u) = " << fgl.inverse_series().str() << "\n";
  if (ell)
    out << "[" << *ell << "]u = " << n_series(fgl, *ell).str() << "\n";
  return ok;
}

int cmd_solve(const TheoryOptions &t, const std::string &path, int qmax, bool show_basis, CommandResult &result,
              std::ostream &out, std::ostream &err) {
  if (qmax < 0 || qmax % 2 != 0)
    throw UsageError("--qmax must be even and non-negative");
  Theory theory = theory_from(t, 1);
  auto file = load_valid_graph(path, theory, result, out, err);
  if (!file)
    return result.exit_code;
  const int need = required_truncation(file->graph, build_fgl(theory), qmax);
  if (t.trunc && *t.trunc < need)
    throw UsageError("--trunc " + std::to_string(*t.trunc) + " is too small for --qmax " + std::to_string(qmax) +
                     " on this graph (need " + std::to_string(need) + ")");
  if (!t.trunc)
    theory = theory.with_truncation(need);
  const FormalGroupLaw fgl = build_fgl(theory);
  const SolutionModule s = solve_equivariant_cohomology(file->graph, fgl, qmax);
  print_header(out, theory);
  print_model_banner(out, theory);
  out << "# q rank basis-count\n";
  for (const auto &[q, d] : s.degrees)
    out << q << " " << d.rank << " " << d.basis.size() << "\n";
  for (const auto &[q, d] : s.degrees)
    if (!d.divisors.empty()) {
      out << "divisors " << q << ":";
      for (const auto &x : d.divisors)
        out << " " << x;
      out << "\n";
    }
  if (show_basis) {
    const auto names = default_variable_names(file->graph.torus_rank);
    for (const auto &[q, d] : s.degrees) {
      out << "basis " << q << ":\n";
      for (const auto &b : d.basis)
        out << "  " << tuple_str(b, names) << "\n";
    }
  }
  return ok;
}

int cmd_check_formality(const TheoryOptions &t, const std::string &path, int qmax, CommandResult &result,
                        std::ostream &out, std::ostream &err) {
  if (qmax < 0 || qmax % 2 != 0)
    throw UsageError("--qmax must be even and non-negative");
  Theory theory = theory_from(t, 1);
  auto file = load_valid_graph(path, theory, result, out, err);
  if (!file)
    return result.exit_code;
  if (!file->betti)
    throw InputError(path + ": no betti block");
  const int need = required_truncation(file->graph, build_fgl(theory), qmax);
  if (!t.trunc)
    theory = theory.with_truncation(need);
  else if (*t.trunc < need)
    throw UsageError("--trunc " + std::to_string(*t.trunc) + " is too small (need " + std::to_string(need) + ")");
  const FormalGroupLaw fgl = build_fgl(theory);
  const SolutionModule s = solve_equivariant_cohomology(file->graph, fgl, qmax);
  const FormalityReport report = check_formality(file->graph, *file->betti, s);
  print_header(out, theory);
  print_model_banner(out, theory);
  out << "# q expected actual verdict\n";
  for (const auto &l : report.lines)
    out << l.degree << " " << l.expected << " " << l.actual << " " << (l.pass() ? "PASS" : "FAIL") << "\n";
  if (report.pass()) {
    out << "result: PASS\n";
    return ok;
  }
  out << "result: FAIL at degree " << *report.first_failure() << "\n";
  return check_failed;
}

std::vector<long> parse_slope(const std::string &text, int m) {
  std::vector<long> lambda;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      lambda.push_back(std::stol(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::logic_error &) {
      throw UsageError("--slope expects comma-separated integers, got '" + text + "'");
    }
  }
  if (static_cast<int>(lambda.size()) != m)
    throw UsageError("--slope needs " + std::to_string(m) + " entries");
  return lambda;
}

int cmd_integrate(const TheoryOptions &t, const std::string &path, const std::string &class_name,
                  const std::optional<std::string> &slope_text, CommandResult &result, std::ostream &out,
                  std::ostream &err) {
  Theory theory = theory_from(t, 1);
  auto file = load_valid_graph(path, theory, result, out, err);
  if (!file)
    return result.exit_code;
  const GKMGraph &g = file->graph;
  const ClassSpec *spec = file->find_class(class_name);
  if (!spec)
    throw InputError(path + ": no class named '" + class_name + "'");

  GenericSlope slope;
  if (slope_text) {
    slope.lambda = parse_slope(*slope_text, g.torus_rank);
    if (!is_generic(g, theory, slope.lambda))
      throw LocalizationError("slope " + to_string(slope.lambda) + " is not generic for this graph");
    const int p = theory.ring().p;
    slope.mod_p_generic = theory.ring().domain != Domain::prime_field ||
                          std::all_of(g.edges.begin(), g.edges.end(),
                                      [&](const GKMEdge &e) { return pairing(e.weight, slope.lambda) % p != 0; });
  } else {
    slope = find_generic_slope(g, theory);
  }

  // The class degree bounds the precision needed; read it at a small
  // truncation first when it is not tagged.
  int degree = spec->degree.value_or(0);
  if (!spec->degree) {
    const EquivariantClass probe = build_class(*spec, build_fgl(theory.with_truncation(std::max(2, 2 * g.torus_rank))),
                                               g.torus_rank);
    for (const auto &f : probe.restrictions)
      if (auto d = f.degree()) {
        degree = std::max(degree, *d);
        break;
      }
  }
  const int need = integration_truncation(g, build_fgl(theory), slope, std::max(degree, 0));
  if (!t.trunc)
    theory = theory.with_truncation(need);
  const FormalGroupLaw fgl = build_fgl(theory);
  const EquivariantClass c = build_class(*spec, fgl, g.torus_rank);
  const IntegrationResult r = integrate(g, fgl, c, slope);

  print_header(out, theory);
  out << "class: " << class_name;
  if (c.degree)
    out << " (degree " << *c.degree << ")";
  out << "\n";
  out << "slope: " << to_string(slope.lambda);
  if (!slope.mod_p_generic)
    out << " (some pairings divisible by p; v_" << theory.ring().n << " is a unit)";
  out << "\n";
  if (r.rational_extension)
    out << "coefficients extended to Q for the division\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    out << "euler " << g.vertices[v] << ": " << r.euler.euler[v].str({"s"}) << "\n";
  out << "sum: " << r.sum.str() << "\n";
  out << "negative part: " << (r.negative_part_vanishes ? "vanishes" : "NONZERO") << "\n";
  if (r.integral) {
    out << "integral = " << r.integral->str() << "\n";
    if (r.rational_extension)
      out << "integral is " << (r.integral_is_integer ? "an integer" : "not an integer") << "\n";
  } else {
    out << "not of top degree " << 2 * g.uniform_valence().value_or(0) << "; no integral reported\n";
  }
  if (!r.negative_part_vanishes) {
    err << "localization: negative-exponent coefficients do not vanish\n";
    return localization_failed;
  }
  return ok;
}

int cmd_validate(const std::string &path, std::optional<int> p, std::ostream &out) {
  const GraphFile file = load_graph_file(path);
  const GraphReport report = validate_graph(file.graph, p);
  for (const auto &w : report.warnings)
    out << "warning: " << w.where << ": " << w.message << "\n";
  for (const auto &v : report.violations)
    out << "violation: " << v.where << ": " << v.message << "\n";
  out << (report.valid() ? "valid\n" : "invalid\n");
  return report.valid() ? ok : invalid_graph;
}

} // namespace

CommandResult run(const std::vector<std::string> &args) {
  CommandResult result;
  std::ostringstream out, err;

  CLI::App app{"Equivariant complex-oriented cohomology of GKM spaces", "gkmcoh"};
  app.require_subcommand(1);

  TheoryOptions fgl_opts, solve_opts, int_opts, form_opts;
  std::optional<long> ell;
  std::string graph_path, class_name;
  std::optional<std::string> slope_text;
  std::optional<int> validate_p;
  int qmax = 8;
  bool no_basis = false;

  CLI::App *fgl = app.add_subcommand("fgl", "print the formal group law and an n-series");
  add_theory_options(fgl, fgl_opts);
  fgl->add_option("--ell", ell, "print [ell]u");

  CLI::App *solve = app.add_subcommand("solve", "graded ranks and basis of E^*_T(M)");
  solve->add_option("graph", graph_path, "moment-graph file")->required();
  add_theory_options(solve, solve_opts);
  solve->add_option("--qmax", qmax, "largest degree")->capture_default_str();
  solve->add_flag("--no-basis", no_basis, "print ranks only");

  CLI::App *integ = app.add_subcommand("integrate", "Atiyah-Bott integral of a class");
  integ->add_option("graph", graph_path, "moment-graph file")->required();
  integ->add_option("class", class_name, "class name in the graph file")->required();
  add_theory_options(integ, int_opts);
  integ->add_option("--slope", slope_text, "one-parameter subgroup, e.g. 1,2");

  CLI::App *form = app.add_subcommand("check-formality", "compare ranks with the free-module prediction");
  form->add_option("graph", graph_path, "moment-graph file with a betti block")->required();
  add_theory_options(form, form_opts);
  form->add_option("--qmax", qmax, "largest degree")->capture_default_str();

  CLI::App *val = app.add_subcommand("validate", "check the moment-graph conditions");
  val->add_option("graph", graph_path, "moment-graph file")->required();
  val->add_option("--p", validate_p, "also warn about weights dependent mod p");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? ok : input_error;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    if (fgl->parsed())
      result.exit_code = cmd_fgl(fgl_opts, ell, out);
    else if (solve->parsed())
      result.exit_code = cmd_solve(solve_opts, graph_path, qmax, !no_basis, result, out, err);
    else if (integ->parsed())
      result.exit_code = cmd_integrate(int_opts, graph_path, class_name, slope_text, result, out, err);
    else if (form->parsed())
      result.exit_code = cmd_check_formality(form_opts, graph_path, qmax, result, out, err);
    else if (val->parsed())
      result.exit_code = cmd_validate(graph_path, validate_p, out);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = input_error;
  } catch (const InputError &e) {
    err << "error: " << (graph_path.empty() ? "" : graph_path + ":") << e.what() << "\n";
    result.exit_code = input_error;
  } catch (const LocalizationError &e) {
    err << "localization error: " << e.what() << "\n";
    result.exit_code = localization_failed;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = input_error;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

} // namespace gkmcoh::cli
