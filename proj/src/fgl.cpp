#include "gkmcoh/fgl.hpp"

#include <array>

namespace gkmcoh {

namespace {

constexpr Ring kRationalRing{Domain::rational, Periodicity::none, 0, 0};

TruncatedSeries inverse_by_degree(const TruncatedSeries &law) {
  // Solve F(u, i(u)) = 0 one degree at a time. F(u, y) = u + y + O(uy), so
  // the u^k coefficient of F(u, i) is i_k plus terms in lower coefficients.
  const Ring &ring = law.ring();
  const int d = law.truncation();
  const TruncatedSeries u = TruncatedSeries::variable(ring, 0, 1, d);
  TruncatedSeries inv = -u;
  for (int k = 2; k <= d; ++k) {
    const std::array<TruncatedSeries, 2> args{u, inv};
    const TruncatedSeries sum = series_substitute(law, args);
    inv.add_to(k, -sum.coefficient(k));
  }
  return inv;
}

TruncatedSeries honda_law(const Theory &theory) {
  const int p = *theory.prime();
  const int n = *theory.height();
  const int d = theory.truncation();
  const Ring &ring = theory.ring();

  // logarithm l(x) = sum_{i>=0} x^{p^{ni}} / p^i over Q
  TruncatedSeries log(kRationalRing, 1, d);
  long q = 1;
  mpz_class denom = 1;
  long step = 1;
  for (int i = 0; i < n; ++i)
    step *= p;
  while (q <= d) {
    log.add_to(static_cast<int>(q), Scalar::from_rational(kRationalRing, mpq_class(1, denom)));
    q *= step;
    denom *= p;
  }

  // exponential e = l^{-1}, solved degree by degree
  const TruncatedSeries x = TruncatedSeries::variable(kRationalRing, 0, 1, d);
  TruncatedSeries exp = x;
  for (int k = 2; k <= d; ++k) {
    const std::array<TruncatedSeries, 1> args{exp};
    const TruncatedSeries composed = series_substitute(log, args);
    exp.add_to(k, -composed.coefficient(k));
  }

  // F_0(x, y) = e(l(x) + l(y))
  const std::array<TruncatedSeries, 1> lx{TruncatedSeries::variable(kRationalRing, 0, 2, d)};
  const std::array<TruncatedSeries, 1> ly{TruncatedSeries::variable(kRationalRing, 1, 2, d)};
  const std::array<TruncatedSeries, 1> sum{series_substitute(log, lx) + series_substitute(log, ly)};
  const TruncatedSeries f0 = series_substitute(exp, sum);

  const long period = step - 1;
  TruncatedSeries law(ring, 2, d);
  const MonomialIndex &idx = f0.index();
  for (int i = 0; i < idx.size(); ++i) {
    const Scalar &c = f0.coefficient(i);
    if (c.is_zero())
      continue;
    const mpq_class value = c.base().to_rational();
    if (value.get_den() % p == 0)
      throw FglConstructionError("Honda law coefficient " + value.get_str() + " is not " +
                                 std::to_string(p) + "-integral");
    const Number reduced = Number::from_rational(Domain::prime_field, p, value);
    if (reduced.is_zero())
      continue;
    const long shift = idx.total_degree(i) - 1;
    if (shift % period != 0)
      throw FglConstructionError("nonzero Honda coefficient in total degree " +
                                 std::to_string(idx.total_degree(i)) + " not congruent to 1 mod p^n - 1");
    law.set(i, Scalar(ring, reduced, static_cast<int>(shift / period)));
  }
  return law;
}

} // namespace

FormalGroupLaw::FormalGroupLaw(Theory theory, TruncatedSeries law)
    : theory_(std::move(theory)), law_(std::move(law)), inverse_(inverse_by_degree(law_)) {
  if (law_.variables() != 2 || law_.truncation() != theory_.truncation())
    throw std::invalid_argument("formal group law must be a two-variable series at the theory's truncation");
}

FormalGroupLaw build_fgl(const Theory &theory) {
  const Ring &ring = theory.ring();
  const int d = theory.truncation();
  const TruncatedSeries x = TruncatedSeries::variable(ring, 0, 2, d);
  const TruncatedSeries y = TruncatedSeries::variable(ring, 1, 2, d);
  switch (theory.kind()) {
  case TheoryKind::ordinary_integral:
  case TheoryKind::ordinary_rational:
  case TheoryKind::ordinary_mod_p:
    return {theory, x + y};
  case TheoryKind::multiplicative:
    return {theory, x + y - x * y * theory.periodic(1)};
  case TheoryKind::morava:
    return {theory, honda_law(theory)};
  }
  throw std::logic_error("unknown theory kind");
}

TruncatedSeries formal_sum(const FormalGroupLaw &fgl, const TruncatedSeries &a, const TruncatedSeries &b) {
  if (a.truncation() > fgl.truncation())
    throw AlgebraError("ambient truncation exceeds the formal group law's truncation");
  const std::array<TruncatedSeries, 2> args{a, b};
  return series_substitute(fgl.law(), args);
}

TruncatedSeries formal_inverse(const FormalGroupLaw &fgl, const TruncatedSeries &a) {
  if (a.truncation() > fgl.truncation())
    throw AlgebraError("ambient truncation exceeds the formal group law's truncation");
  const std::array<TruncatedSeries, 1> args{a};
  return series_substitute(fgl.inverse_series(), args);
}

TruncatedSeries n_series(const FormalGroupLaw &fgl, long ell) {
  const Ring &ring = fgl.ring();
  const int d = fgl.truncation();
  if (ell < 0)
    return formal_inverse(fgl, n_series(fgl, -ell));
  if (ell == 0)
    return TruncatedSeries(ring, 1, d);
  const TruncatedSeries u = TruncatedSeries::variable(ring, 0, 1, d);
  if (ell == 1)
    return u;
  // [2q + r]u = [q]u +_F [q]u (+_F u)
  const TruncatedSeries half = n_series(fgl, ell / 2);
  TruncatedSeries r = formal_sum(fgl, half, half);
  if (ell % 2 == 1)
    r = formal_sum(fgl, r, u);
  return r;
}

} // namespace gkmcoh
