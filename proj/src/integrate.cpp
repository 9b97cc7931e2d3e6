#include "gkmcoh/integrate.hpp"

#include <algorithm>

namespace gkmcoh {

namespace {

bool pairings_ok(const GKMGraph &g, const std::vector<long> &lambda, long p) {
  for (const auto &e : g.edges) {
    const long x = pairing(e.weight, lambda);
    if (x == 0 || (p > 0 && x % p == 0))
      return false;
  }
  return true;
}

bool needs_mod_p(const Theory &theory) {
  return theory.ring().domain == Domain::prime_field && !theory.is_morava();
}

/// Calls visit on every lambda in {1..r}^m with max entry r, lexicographic;
/// stops when visit returns true.
template <class F> bool for_each_in_shell(int m, long r, F visit) {
  std::vector<long> lambda(static_cast<std::size_t>(m), 1);
  for (;;) {
    if (*std::max_element(lambda.begin(), lambda.end()) == r && visit(lambda))
      return true;
    int i = m - 1;
    while (i >= 0 && lambda[i] == r) {
      lambda[i] = 1;
      --i;
    }
    if (i < 0)
      return false;
    ++lambda[i];
  }
}

std::vector<GenericSlope> search(const GKMGraph &g, const Theory &theory, int count) {
  const long p = theory.ring().domain == Domain::prime_field ? theory.ring().p : 0;
  // A strict slope exists in {1..p}^m if at all; a plain one in {1..E+1}^m.
  const long strict_bound = std::max<long>(p, static_cast<long>(g.edges.size()) + 1);
  std::vector<GenericSlope> found;
  auto run = [&](long modulus, bool strict, long bound) {
    for (long r = 1; r <= bound && static_cast<int>(found.size()) < count; ++r)
      for_each_in_shell(g.torus_rank, r, [&](const std::vector<long> &lambda) {
        if (pairings_ok(g, lambda, modulus))
          found.push_back({lambda, strict});
        return static_cast<int>(found.size()) >= count;
      });
  };
  if (p > 0) {
    run(p, true, count == 1 ? strict_bound : strict_bound + 4L * count);
    if (!found.empty() || needs_mod_p(theory))
      return found;
  }
  run(0, p == 0, count == 1 ? strict_bound : strict_bound + 4L * count);
  return found;
}

} // namespace

bool is_generic(const GKMGraph &g, const Theory &theory, const std::vector<long> &lambda) {
  if (static_cast<int>(lambda.size()) != g.torus_rank)
    return false;
  return pairings_ok(g, lambda, needs_mod_p(theory) ? theory.ring().p : 0);
}

GenericSlope find_generic_slope(const GKMGraph &g, const Theory &theory) {
  const auto found = search(g, theory, 1);
  if (found.empty())
    throw LocalizationError(needs_mod_p(theory)
                                ? "no slope pairs nonzero mod " + std::to_string(theory.ring().p) +
                                      " with every edge weight"
                                : "no generic slope (zero edge weight?)");
  return found.front();
}

std::vector<GenericSlope> generic_slopes(const GKMGraph &g, const Theory &theory, int count) {
  return search(g, theory, count);
}

EulerClassData euler_classes(const GKMGraph &g, const FormalGroupLaw &fgl, const GenericSlope &slope) {
  EulerClassData data;
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto weights = g.tangent_weights(v);
    TruncatedSeries eu = TruncatedSeries::constant(Scalar::one(fgl.ring()), 1, fgl.truncation());
    for (const auto &a : weights)
      eu = eu * n_series(fgl, pairing(a, slope.lambda));
    data.order.push_back(eu.valuation());
    data.euler.push_back(std::move(eu));
    data.weights.push_back(std::move(weights));
  }
  return data;
}

std::vector<TruncatedSeries> localize_class(const FormalGroupLaw &fgl, const EquivariantClass &c,
                                            const std::vector<long> &lambda) {
  std::vector<TruncatedSeries> line;
  line.reserve(lambda.size());
  for (long l : lambda)
    line.push_back(n_series(fgl, l));
  std::vector<TruncatedSeries> out;
  for (const auto &f : c.restrictions) {
    if (f.variables() != static_cast<int>(lambda.size()))
      throw std::invalid_argument("slope length does not match the number of variables");
    if (f.truncation() != fgl.truncation())
      throw std::invalid_argument("class truncation differs from the formal group law's");
    out.push_back(series_substitute(f, line));
  }
  return out;
}

int integration_truncation(const GKMGraph &g, const FormalGroupLaw &fgl, const GenericSlope &slope,
                           int max_degree) {
  int order = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int o = 0;
    for (const auto &a : g.tangent_weights(v)) {
      const long x = pairing(a, slope.lambda);
      // valuation of [x]s: p^{n * v_p(x)} for Morava K-theory, 1 otherwise
      int ord = 1;
      if (fgl.theory().is_morava()) {
        const int p = fgl.ring().p, n = fgl.ring().n;
        long y = x < 0 ? -x : x;
        while (y % p == 0) {
          y /= p;
          for (int i = 0; i < n; ++i)
            ord *= p;
        }
      }
      o += ord;
    }
    order = std::max(order, o);
  }
  return std::max(max_degree / 2, 0) + order + 2;
}

IntegrationResult integrate(const GKMGraph &g, const FormalGroupLaw &fgl, const EquivariantClass &c,
                            const GenericSlope &slope) {
  if (static_cast<int>(c.restrictions.size()) != g.vertex_count())
    throw std::invalid_argument("class has the wrong number of restrictions");
  const Ring &ring = fgl.ring();
  for (const auto &e : g.edges)
    if (pairing(e.weight, slope.lambda) == 0)
      throw LocalizationError("slope " + to_string(slope.lambda) + " is orthogonal to edge weight " +
                              to_string(e.weight));

  const bool extend = ring.domain == Domain::integer;
  const Domain target = extend ? Domain::rational : ring.domain;
  EulerClassData eu = euler_classes(g, fgl, slope);
  const auto local = localize_class(fgl, c, slope.lambda);

  std::vector<LaurentSeries> terms;
  std::optional<LaurentSeries> sum;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const LaurentSeries num = LaurentSeries::from_series(local[v].with_domain(target));
    const LaurentSeries den = LaurentSeries::from_series(eu.euler[v].with_domain(target));
    if (den.is_zero())
      throw LocalizationError("Euler class at " + g.vertices[v] + " vanishes to the truncation degree");
    try {
      terms.push_back(laurent_divide(num, den));
    } catch (const NotInvertible &) {
      throw LocalizationError("Euler class at " + g.vertices[v] + " has a non-unit leading coefficient for slope " +
                              to_string(slope.lambda));
    }
    sum = sum ? *sum + terms.back() : terms.back();
  }

  IntegrationResult r{slope, std::move(eu), std::move(terms), *sum, false, false, false, std::nullopt, false};
  r.rational_extension = extend;
  r.negative_part_vanishes = true;
  for (int e = r.sum.low(); e < 0 && e <= r.sum.precision(); ++e)
    if (!r.sum.coefficient(e).is_zero())
      r.negative_part_vanishes = false;

  std::optional<int> degree = c.degree;
  if (!degree) {
    for (const auto &f : c.restrictions)
      if (auto d = f.degree()) {
        degree = d;
        break;
      }
  }
  const auto valence = g.uniform_valence();
  r.top_degree = degree && valence && *degree == 2 * *valence;
  if (r.top_degree) {
    if (r.sum.precision() < 0)
      throw LocalizationError("precision exhausted before s^0; raise the truncation degree");
    r.integral = r.sum.coefficient(0);
    r.integral_is_integer = r.integral->base().to_rational().get_den() == 1;
  }
  return r;
}

} // namespace gkmcoh
