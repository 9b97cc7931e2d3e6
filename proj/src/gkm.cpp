#include "gkmcoh/gkm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gkmcoh/linalg.hpp"

namespace gkmcoh {

std::vector<Character> GKMGraph::tangent_weights(int v) const {
  std::vector<Character> out;
  for (const auto &e : edges) {
    if (e.tail == v)
      out.push_back(e.weight);
    else if (e.head == v) {
      Character w = e.weight;
      for (long &x : w)
        x = -x;
      out.push_back(std::move(w));
    }
  }
  return out;
}

int GKMGraph::valence(int v) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(),
                                        [v](const GKMEdge &e) { return e.tail == v || e.head == v; }));
}

std::optional<int> GKMGraph::uniform_valence() const {
  if (vertices.empty())
    return std::nullopt;
  const int d = valence(0);
  for (int v = 1; v < vertex_count(); ++v)
    if (valence(v) != d)
      return std::nullopt;
  return d;
}

GKMGraph GKMGraph::transformed(const IntMatrix &w) const {
  GKMGraph g = *this;
  for (auto &e : g.edges)
    e.weight = pull_back(e.weight, w);
  return g;
}

GKMGraph GKMGraph::permuted(const std::vector<int> &perm) const {
  if (static_cast<int>(perm.size()) != vertex_count())
    throw std::invalid_argument("permutation length does not match the vertex count");
  std::vector<int> where(perm.size(), -1);
  GKMGraph g;
  g.torus_rank = torus_rank;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] < 0 || perm[i] >= vertex_count() || where[perm[i]] >= 0)
      throw std::invalid_argument("not a permutation");
    where[perm[i]] = static_cast<int>(i);
    g.vertices.push_back(vertices[perm[i]]);
  }
  for (const auto &e : edges)
    g.edges.push_back({where[e.tail], where[e.head], e.weight});
  return g;
}

namespace {

/// True when every 2x2 minor of (a; b) vanishes (mod p if p > 0).
bool dependent(const Character &a, const Character &b, long p = 0) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      long minor = detail::checked_add(detail::checked_mul(a[i], b[j]), -detail::checked_mul(a[j], b[i]));
      if (p > 0)
        minor %= p;
      if (minor != 0)
        return false;
    }
  return true;
}

std::string edge_label(const GKMGraph &g, std::size_t i) {
  const auto &e = g.edges[i];
  auto name = [&](int v) { return v >= 0 && v < g.vertex_count() ? g.vertices[v] : "?" + std::to_string(v); };
  return "edge " + std::to_string(i + 1) + " (" + name(e.tail) + "-" + name(e.head) + ")";
}

} // namespace

GraphReport validate_graph(const GKMGraph &g, std::optional<int> prime) {
  GraphReport r;
  if (g.torus_rank < 1)
    r.violations.push_back({"graph", "torus rank must be positive"});
  if (g.vertices.empty())
    r.violations.push_back({"graph", "no vertices"});
  std::set<std::string> names;
  for (const auto &v : g.vertices)
    if (!names.insert(v).second)
      r.violations.push_back({"vertex " + v, "duplicate vertex name"});

  bool edges_ok = true;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto &e = g.edges[i];
    const std::string where = edge_label(g, i);
    if (e.tail < 0 || e.tail >= g.vertex_count() || e.head < 0 || e.head >= g.vertex_count()) {
      r.violations.push_back({where, "endpoint is not a vertex"});
      edges_ok = false;
      continue;
    }
    if (e.tail == e.head)
      r.violations.push_back({where, "loop edge"});
    if (static_cast<int>(e.weight.size()) != g.torus_rank) {
      r.violations.push_back({where, "weight " + to_string(e.weight) + " has length " +
                                         std::to_string(e.weight.size()) + ", expected " +
                                         std::to_string(g.torus_rank)});
      edges_ok = false;
    } else if (is_zero(e.weight)) {
      r.violations.push_back({where, "zero weight"});
      edges_ok = false;
    }
  }
  if (!edges_ok || g.vertices.empty())
    return r;

  if (prime)
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      if (std::all_of(g.edges[i].weight.begin(), g.edges[i].weight.end(), [&](long x) { return x % *prime == 0; }))
        r.warnings.push_back({edge_label(g, i),
                              "weight " + to_string(g.edges[i].weight) + " vanishes mod " + std::to_string(*prime)});

  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto w = g.tangent_weights(v);
    const std::string where = "vertex " + g.vertices[v];
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t b = a + 1; b < w.size(); ++b) {
        if (dependent(w[a], w[b]))
          r.violations.push_back({where, "dependent weights " + to_string(w[a]) + " and " + to_string(w[b])});
        else if (prime && dependent(w[a], w[b], *prime))
          r.warnings.push_back({where, "weights " + to_string(w[a]) + " and " + to_string(w[b]) +
                                           " are dependent mod " + std::to_string(*prime)});
      }
  }

  // connectivity
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto &e : g.edges)
    parent[find(e.tail)] = find(e.head);
  for (int v = 1; v < g.vertex_count(); ++v)
    if (find(v) != find(0)) {
      r.violations.push_back({"vertex " + g.vertices[v], "not connected to " + g.vertices[0]});
      break;
    }

  if (!g.uniform_valence())
    r.warnings.push_back({"graph", "vertices have different valences; integration is unavailable"});
  return r;
}

bool satisfies_congruences(const GKMGraph &g, const FormalGroupLaw &fgl, const EquivariantClass &c) {
  if (static_cast<int>(c.restrictions.size()) != g.vertex_count())
    throw std::invalid_argument("class has " + std::to_string(c.restrictions.size()) + " restrictions for " +
                                std::to_string(g.vertex_count()) + " vertices");
  for (const auto &f : c.restrictions)
    if (f.variables() != g.torus_rank)
      throw std::invalid_argument("restriction lives in the wrong number of variables");
  for (const auto &e : g.edges) {
    const RestrictionIdeal ideal = kernel_ideal(fgl, e.weight);
    if (!ideal_residue(c.restrictions[e.tail] - c.restrictions[e.head], ideal).is_zero())
      return false;
  }
  return true;
}

namespace {

int generator_order(const FormalGroupLaw &fgl, const Character &w) {
  const long d = primitive_part(w).multiplicity;
  for (int trunc = fgl.truncation();; trunc *= 2) {
    const FormalGroupLaw f = trunc == fgl.truncation() ? fgl : build_fgl(fgl.theory().with_truncation(trunc));
    const int order = n_series(f, d).valuation();
    if (order <= trunc)
      return order;
    if (trunc >= 64)
      return 0; // [d]u vanishes, e.g. d = p in ordinary mod-p cohomology
  }
}

/// Columns of one congruence system: (vertex, monomial) pairs ordered by
/// total degree, then vertex, then monomial.
struct Unknowns {
  std::vector<std::pair<int, int>> cols;
  std::vector<int> weight;
};

Unknowns unknowns_for(const MonomialIndex &idx, int k, const std::vector<int> &weights) {
  Unknowns u;
  for (int w : weights)
    for (int v = 0; v < k; ++v)
      for (int i = idx.degree_begin(w); i < idx.degree_begin(w + 1); ++i) {
        u.cols.emplace_back(v, i);
        u.weight.push_back(w);
      }
  return u;
}

/// Images of all monomials under the coordinate change of an ideal.
std::vector<TruncatedSeries> transported_monomials(const RestrictionIdeal &ideal, const Ring &ring) {
  const TruncatedSeries &first = ideal.coordinate_images.front();
  const MonomialIndex &idx = first.index();
  std::vector<TruncatedSeries> img;
  img.reserve(static_cast<std::size_t>(idx.size()));
  img.push_back(TruncatedSeries::constant(Scalar::one(ring), idx.variables(), idx.truncation()));
  std::vector<int> e;
  for (int i = 1; i < idx.size(); ++i) {
    const auto ex = idx.exponents(i);
    e.assign(ex.begin(), ex.end());
    int var = 0;
    while (e[var] == 0)
      ++var;
    --e[var];
    img.push_back(img[idx.index_of(e)] * ideal.coordinate_images[var]);
  }
  return img;
}

Scalar periodic_coefficient(const Ring &ring, const Number &c, int weight, int target_weight, int period) {
  const int shift = weight - target_weight;
  if (shift == 0)
    return Scalar(ring, c, 0);
  return Scalar(ring, c, shift / period);
}

std::string field_name(const Ring &ring) {
  return ring.domain == Domain::prime_field ? "F_" + std::to_string(ring.p) : "Q";
}

/// Weight classes solved together: every weight on its own when there is
/// no periodicity, otherwise the residues mod the period.
std::vector<std::vector<int>> weight_classes(int period, int max_w, int trunc) {
  std::vector<std::vector<int>> classes;
  if (period == 0) {
    for (int w = 0; w <= max_w; ++w)
      classes.push_back({w});
    return classes;
  }
  for (int c = 0; c < period && c <= trunc; ++c) {
    std::vector<int> ws;
    for (int w = c; w <= trunc; w += period)
      ws.push_back(w);
    classes.push_back(std::move(ws));
  }
  return classes;
}

EquivariantClass assemble(const Ring &ring, const MonomialIndex &idx, int k, const Unknowns &u, int target_w,
                          int period, const std::vector<Number> &entries) {
  EquivariantClass c;
  c.degree = 2 * target_w;
  for (int v = 0; v < k; ++v)
    c.restrictions.emplace_back(ring, idx.variables(), idx.truncation());
  for (std::size_t j = 0; j < u.cols.size(); ++j) {
    if (entries[j].is_zero())
      continue;
    const auto [v, i] = u.cols[j];
    c.restrictions[v].set(i, periodic_coefficient(ring, entries[j], u.weight[j], target_w, period));
  }
  return c;
}

void solve_over_field(const GKMGraph &g, const FormalGroupLaw &fgl, int max_w, SolutionModule &out) {
  const Ring &ring = fgl.ring();
  const int m = g.torus_rank, k = g.vertex_count(), trunc = fgl.truncation();
  const int period = fgl.theory().weight_period();
  const auto &idx = *MonomialIndex::get(m, trunc);

  struct EdgeData {
    int tail, head, order, last;
    std::vector<TruncatedSeries> img;
  };
  std::vector<EdgeData> edges;
  for (const auto &e : g.edges) {
    const RestrictionIdeal ideal = kernel_ideal(fgl, e.weight);
    edges.push_back({e.tail, e.head, ideal.generator_order, m - 1, transported_monomials(ideal, ring)});
  }

  for (const auto &ws : weight_classes(period, max_w, trunc)) {
    const Unknowns u = unknowns_for(idx, k, ws);
    std::set<int> in_class(ws.begin(), ws.end());
    // rows: (edge, residue monomial) for monomials below u_m'^order
    std::vector<std::vector<int>> row_of(edges.size(), std::vector<int>(static_cast<std::size_t>(idx.size()), -1));
    int rows = 0;
    for (std::size_t e = 0; e < edges.size(); ++e)
      for (int i = 0; i < idx.size(); ++i)
        if (in_class.count(idx.total_degree(i)) && idx.exponents(i)[edges[e].last] < edges[e].order)
          row_of[e][i] = rows++;
    FieldMatrix a(ring.domain, ring.p, rows, static_cast<int>(u.cols.size()));
    for (std::size_t j = 0; j < u.cols.size(); ++j) {
      const auto [v, mono] = u.cols[j];
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const bool at_tail = edges[e].tail == v, at_head = edges[e].head == v;
        if (!at_tail && !at_head)
          continue;
        const TruncatedSeries &t = edges[e].img[mono];
        for (int i = 0; i < idx.size(); ++i) {
          const int r = row_of[e][i];
          if (r < 0 || t.coefficient(i).is_zero())
            continue;
          const Number c = t.coefficient(i).base();
          a.set(r, static_cast<int>(j), at_tail ? a.at(r, static_cast<int>(j)) + c : a.at(r, static_cast<int>(j)) - c);
        }
      }
    }
    const NullSpace ns = null_space(a);
    std::ostringstream prov;
    prov << "weights";
    for (int w : ws)
      prov << ' ' << w;
    prov << ": " << field_name(ring) << " elimination, " << u.cols.size() << " unknowns, " << rows
         << " conditions, nullity " << ns.leading.size();
    out.provenance.push_back(prov.str());

    for (int w : ws) {
      if (w > max_w)
        continue;
      DegreeSolution ds;
      ds.degree = 2 * w;
      for (std::size_t b = 0; b < ns.leading.size(); ++b) {
        if (u.weight[ns.leading[b]] != w)
          continue;
        std::vector<Number> entries;
        for (int j = 0; j < ns.basis.cols(); ++j)
          entries.push_back(ns.basis.at(static_cast<int>(b), j));
        ds.basis.push_back(assemble(ring, idx, k, u, w, period, entries));
      }
      ds.rank = static_cast<long>(ds.basis.size());
      out.degrees[2 * w] = std::move(ds);
    }
  }
}

void solve_over_integers(const GKMGraph &g, const FormalGroupLaw &fgl, int max_w, SolutionModule &out) {
  const Ring &ring = fgl.ring();
  const int m = g.torus_rank, k = g.vertex_count(), trunc = fgl.truncation();
  const int period = fgl.theory().weight_period();
  const auto &idx = *MonomialIndex::get(m, trunc);
  auto to_z = [](const Number &x) { return mpz_class(x.to_rational().get_num()); };

  std::vector<TruncatedSeries> chis;
  for (const auto &e : g.edges)
    chis.push_back(character_class(fgl, e.weight));

  for (const auto &ws : weight_classes(period, max_w, trunc)) {
    const Unknowns u = unknowns_for(idx, k, ws);
    std::set<int> in_class(ws.begin(), ws.end());
    std::vector<int> class_mono;
    std::vector<int> pos(static_cast<std::size_t>(idx.size()), -1);
    for (int i = 0; i < idx.size(); ++i)
      if (in_class.count(idx.total_degree(i))) {
        pos[i] = static_cast<int>(class_mono.size());
        class_mono.push_back(i);
      }
    // ideal generators chi * u^beta whose support lies in this class
    std::vector<std::vector<TruncatedSeries>> gens(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const int val = chis[e].valuation();
      for (int b = 0; b < idx.size() && idx.total_degree(b) + val <= trunc; ++b) {
        const TruncatedSeries prod =
            chis[e] * TruncatedSeries::monomial(Scalar::one(ring), idx.exponents(b), trunc);
        bool hits = false;
        for (int i = 0; i < idx.size() && !hits; ++i)
          hits = pos[i] >= 0 && !prod.coefficient(i).is_zero();
        if (hits)
          gens[e].push_back(prod);
      }
    }
    const int nx = static_cast<int>(u.cols.size());
    int ny = 0;
    for (const auto &ge : gens)
      ny += static_cast<int>(ge.size());
    const int per_edge = static_cast<int>(class_mono.size());
    BigMatrix a(static_cast<int>(g.edges.size()) * per_edge, nx + ny);
    for (int j = 0; j < nx; ++j) {
      const auto [v, mono] = u.cols[j];
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const int r = static_cast<int>(e) * per_edge + pos[mono];
        if (g.edges[e].tail == v)
          a(r, j) += 1;
        if (g.edges[e].head == v)
          a(r, j) -= 1;
      }
    }
    int col = nx;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      for (const auto &gen : gens[e]) {
        for (int i = 0; i < idx.size(); ++i)
          if (pos[i] >= 0 && !gen.coefficient(i).is_zero())
            a(static_cast<int>(e) * per_edge + pos[i], col) = -to_z(gen.coefficient(i).base());
        ++col;
      }
    const BigMatrix ker = integer_kernel(a);
    BigMatrix proj(ker.rows(), nx);
    for (int i = 0; i < ker.rows(); ++i)
      for (int j = 0; j < nx; ++j)
        proj(i, j) = ker(i, j);
    const HermiteForm<mpz_class> hf = hermite_normal_form(proj);

    std::ostringstream prov;
    prov << "weights";
    for (int w : ws)
      prov << ' ' << w;
    prov << ": integer kernel, " << nx << " unknowns, " << ny << " ideal generators, " << a.rows()
         << " conditions, lattice rank " << hf.H.rows();
    out.provenance.push_back(prov.str());

    for (int w : ws) {
      if (w > max_w)
        continue;
      DegreeSolution ds;
      ds.degree = 2 * w;
      std::vector<int> rows;
      for (int r = 0; r < hf.H.rows(); ++r)
        if (u.weight[hf.pivots[r]] == w)
          rows.push_back(r);
      for (int r : rows) {
        std::vector<Number> entries;
        for (int j = 0; j < nx; ++j)
          entries.push_back(Number::from_rational(Domain::integer, 0, mpq_class(hf.H(r, j))));
        ds.basis.push_back(assemble(ring, idx, k, u, w, period, entries));
      }
      ds.rank = static_cast<long>(rows.size());
      // elementary divisors of the leading forms in weight w
      std::vector<int> wcols;
      for (int j = 0; j < nx; ++j)
        if (u.weight[j] == w)
          wcols.push_back(j);
      if (!rows.empty()) {
        BigMatrix lead(static_cast<int>(rows.size()), static_cast<int>(wcols.size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (std::size_t j = 0; j < wcols.size(); ++j)
            lead(static_cast<int>(r), static_cast<int>(j)) = hf.H(rows[r], wcols[j]);
        const SmithForm<mpz_class> snf = smith_normal_form(lead);
        for (const auto &d : snf.diagonal())
          if (d > 1)
            ds.divisors.push_back(d.get_str());
      }
      out.degrees[2 * w] = std::move(ds);
    }
  }
}

} // namespace

int required_truncation(const GKMGraph &g, const FormalGroupLaw &fgl, int max_degree) {
  int order = 1;
  for (const auto &e : g.edges)
    order = std::max(order, generator_order(fgl, e.weight));
  return max_degree / 2 + order;
}

SolutionModule solve_equivariant_cohomology(const GKMGraph &g, const FormalGroupLaw &fgl, int max_degree) {
  if (max_degree < 0 || max_degree % 2 != 0)
    throw std::invalid_argument("maximal degree must be even and non-negative");
  const GraphReport report = validate_graph(g);
  if (!report.valid())
    throw std::invalid_argument("invalid moment graph: " + report.violations.front().where + ": " +
                                report.violations.front().message);
  const int need = required_truncation(g, fgl, max_degree);
  if (need > fgl.truncation())
    throw std::invalid_argument("truncation " + std::to_string(fgl.truncation()) + " too small for degree " +
                                std::to_string(max_degree) + " (need at least " + std::to_string(need) + ")");
  SolutionModule out{fgl.theory(), fgl.truncation(), max_degree, {}, {}};
  if (fgl.ring().domain == Domain::integer)
    solve_over_integers(g, fgl, max_degree / 2, out);
  else
    solve_over_field(g, fgl, max_degree / 2, out);
  return out;
}

long monomial_count(int m, int b) {
  if (b < 0)
    return 0;
  // C(b + m - 1, m - 1)
  long r = 1;
  for (int i = 1; i < m; ++i)
    r = r * (b + i) / i;
  return r;
}

bool FormalityReport::pass() const {
  return std::all_of(lines.begin(), lines.end(), [](const FormalityLine &l) { return l.pass(); });
}

std::optional<int> FormalityReport::first_failure() const {
  for (const auto &l : lines)
    if (!l.pass())
      return l.degree;
  return std::nullopt;
}

FormalityReport check_formality(const GKMGraph &g, const std::map<int, long> &betti, const SolutionModule &s) {
  FormalityReport r;
  for (const auto &[q, ds] : s.degrees) {
    long expected = 0;
    for (const auto &[a, b] : betti)
      if (a <= q && (q - a) % 2 == 0)
        expected += b * monomial_count(g.torus_rank, (q - a) / 2);
    r.lines.push_back({q, expected, ds.rank});
  }
  return r;
}

} // namespace gkmcoh
