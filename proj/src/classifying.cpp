#include "gkmcoh/classifying.hpp"

#include <array>

#include "gkmcoh/linalg.hpp"

namespace gkmcoh {

namespace {

TruncatedSeries in_variable(const TruncatedSeries &one_var, int i, int m) {
  const std::array<TruncatedSeries, 1> args{
      TruncatedSeries::variable(one_var.ring(), i, m, one_var.truncation())};
  return series_substitute(one_var, args);
}

/// Floor division of an integer-domain scalar by a non-unit scalar.
std::pair<Scalar, Scalar> floor_divmod(const Scalar &a, const Scalar &c) {
  const mpz_class num = a.base().to_rational().get_num();
  const mpz_class den = c.base().to_rational().get_num();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const Ring &ring = a.ring();
  Scalar quotient(ring, Number::from_rational(ring.domain, ring.p, mpq_class(q)), a.power() - c.power());
  Scalar remainder = a - quotient * c;
  return {quotient, remainder};
}

} // namespace

TruncatedSeries character_class(const FormalGroupLaw &fgl, const Character &a) {
  const int m = static_cast<int>(a.size());
  if (m == 0)
    throw std::invalid_argument("character of a rank-0 torus");
  TruncatedSeries chi(fgl.ring(), m, fgl.truncation());
  for (int i = 0; i < m; ++i) {
    if (a[i] == 0)
      continue;
    const TruncatedSeries term = in_variable(n_series(fgl, a[i]), i, m);
    chi = chi.is_zero() ? term : formal_sum(fgl, chi, term);
  }
  return chi;
}

TruncatedSeries CyclicRingPresentation::normalized_relation() const {
  if (!unit_leading)
    throw AlgebraError("relation [" + std::to_string(order) + "]u has no unit leading coefficient");
  std::array<int, 1> e{relation_order};
  return TruncatedSeries::monomial(Scalar::one(relation.ring()), e, relation.truncation());
}

TruncatedSeries CyclicRingPresentation::reduce(const TruncatedSeries &f) const {
  if (!unit_leading)
    throw AlgebraError("no monomial normal form for [" + std::to_string(order) + "]u");
  if (f.variables() != 1)
    throw std::invalid_argument("normal form of a series in more than one variable");
  return f.truncated(relation_order - 1);
}

CyclicRingPresentation cyclic_classifying_ring(const FormalGroupLaw &fgl, long ell) {
  if (ell < 1)
    throw std::invalid_argument("cyclic group order must be positive");
  CyclicRingPresentation pres;
  pres.order = ell;
  pres.relation = n_series(fgl, ell);
  pres.relation_order = pres.relation.valuation();
  if (pres.relation_order <= pres.relation.truncation()) {
    const Scalar lead = pres.relation.coefficient(pres.relation_order);
    pres.unit_leading = lead.is_unit();
    pres.periodic_exponent = lead.power();
    if (pres.unit_leading)
      pres.rank = pres.relation_order;
  }
  const Ring &ring = fgl.ring();
  if (ring.domain == Domain::prime_field) {
    int r = 0;
    long s = ell;
    while (s % ring.p == 0) {
      s /= ring.p;
      ++r;
    }
    pres.p_adic_valuation = r;
    pres.prime_to_p = s;
  }
  return pres;
}

RestrictionIdeal kernel_ideal(const FormalGroupLaw &fgl, const Character &theta) {
  if (is_zero(theta))
    throw std::invalid_argument("kernel ideal of the trivial character");
  const int m = static_cast<int>(theta.size());
  RestrictionIdeal ideal;
  ideal.weight = theta;
  const PrimitivePart pp = primitive_part(theta);
  ideal.multiplicity = pp.multiplicity;
  ideal.primitive = pp.primitive;
  ideal.basis = adapted_basis(pp.primitive);
  for (int i = 0; i < m; ++i) {
    Character row(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
      row[j] = ideal.basis(i, j);
    ideal.coordinate_images.push_back(character_class(fgl, row));
  }
  const TruncatedSeries d_series = n_series(fgl, pp.multiplicity);
  ideal.generator_order = d_series.valuation();
  ideal.generator = in_variable(d_series, m - 1, m);
  return ideal;
}

TruncatedSeries to_adapted_coordinates(const TruncatedSeries &f, const RestrictionIdeal &ideal) {
  if (f.variables() != static_cast<int>(ideal.weight.size()))
    throw std::invalid_argument("series and ideal live over tori of different rank");
  return series_substitute(f, ideal.coordinate_images);
}

TruncatedSeries ideal_residue(const TruncatedSeries &f, const RestrictionIdeal &ideal) {
  TruncatedSeries t = to_adapted_coordinates(f, ideal);
  const int n = ideal.generator_order;
  const int d = t.truncation();
  if (n > d)
    return t;
  const MonomialIndex &idx = t.index();
  const int last = t.variables() - 1;
  std::vector<int> lead_exp(static_cast<std::size_t>(t.variables()), 0);
  lead_exp[last] = n;
  const Scalar lead = ideal.generator.coefficient(lead_exp);

  if (lead.is_unit()) {
    // (g) = (u_m'^n): keep the terms below u_m'^n
    for (int i = 0; i < idx.size(); ++i)
      if (idx.exponents(i)[last] >= n)
        t.set(i, Scalar::zero(t.ring()));
    return t;
  }

  // Non-unit leading coefficient (integer coefficients, d > 1): divide level
  // by level in u_m', keeping floor-division remainders.
  for (int k = n; k <= d; ++k) {
    TruncatedSeries quotient(t.ring(), t.variables(), d);
    bool any = false;
    for (int i = 0; i < idx.size(); ++i) {
      const auto e = idx.exponents(i);
      if (e[last] != k || t.coefficient(i).is_zero())
        continue;
      auto [q, r] = floor_divmod(t.coefficient(i), lead);
      if (q.is_zero())
        continue;
      std::vector<int> shifted(e.begin(), e.end());
      shifted[last] -= n;
      quotient.set(shifted, q);
      any = true;
    }
    if (any)
      t -= quotient * ideal.generator;
  }
  return t;
}

std::vector<long> quotient_weight_ranks(const std::vector<TruncatedSeries> &generators, int max_weight) {
  if (generators.empty())
    throw std::invalid_argument("quotient by an empty generator list");
  const TruncatedSeries &g0 = generators.front();
  const Ring &ring = g0.ring();
  if (ring.domain == Domain::integer)
    throw std::invalid_argument("quotient ranks need a graded field");
  const MonomialIndex &idx = g0.index();
  if (max_weight > idx.truncation())
    throw std::invalid_argument("weight range exceeds the truncation degree");

  FieldMatrix span(ring.domain, ring.p, 0, idx.size());
  for (const auto &g : generators) {
    if (g.is_zero())
      continue;
    if (!g.degree())
      throw AlgebraError("quotient generators must be homogeneous");
    for (int b = 0; b < idx.size() && idx.total_degree(b) + g.valuation() <= idx.truncation(); ++b) {
      const TruncatedSeries elem = g * TruncatedSeries::monomial(Scalar::one(ring), idx.exponents(b), idx.truncation());
      span.append_zero_rows(1);
      for (int i = 0; i < idx.size(); ++i)
        if (!elem.coefficient(i).is_zero())
          span.set(span.rows() - 1, i, elem.coefficient(i).base());
    }
  }
  const RowEchelon e = reduced_row_echelon(span);
  std::vector<long> ranks;
  for (int w = 0; w <= max_weight; ++w) {
    long r = idx.degree_begin(w + 1) - idx.degree_begin(w);
    for (int pc : e.pivots)
      if (idx.total_degree(pc) == w)
        --r;
    ranks.push_back(r);
  }
  return ranks;
}

} // namespace gkmcoh
