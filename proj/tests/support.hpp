#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "gkmcoh/gkm.hpp"
#include "gkmcoh/integrate.hpp"

namespace testing {

using namespace gkmcoh;

inline Theory theory(TheoryKind kind, int trunc, std::optional<int> p = std::nullopt,
                     std::optional<int> n = std::nullopt) {
  return make_theory({kind, p, n, trunc});
}

inline Theory morava(int p, int n, int trunc) { return theory(TheoryKind::morava, trunc, p, n); }
inline Theory ordinary_z(int trunc) { return theory(TheoryKind::ordinary_integral, trunc); }
inline Theory ordinary_q(int trunc) { return theory(TheoryKind::ordinary_rational, trunc); }
inline Theory mod_p(int p, int trunc) { return theory(TheoryKind::ordinary_mod_p, trunc, p); }
inline Theory mult(int trunc) { return theory(TheoryKind::multiplicative, trunc); }

/// One representative of each kind of coefficient ring.
inline std::vector<Theory> all_theories(int trunc) {
  return {ordinary_z(trunc), ordinary_q(trunc), mod_p(3, trunc), mult(trunc),
          morava(2, 1, trunc), morava(3, 1, trunc), morava(2, 2, trunc)};
}

inline GKMGraph cp1(long w = 1) { return {1, {"N", "S"}, {{0, 1, {w}}}}; }

inline GKMGraph cp2() {
  return {2, {"A", "B", "C"}, {{0, 1, {1, 0}}, {0, 2, {0, 1}}, {1, 2, {-1, 1}}}};
}

inline GKMGraph cp1xcp1() {
  return {2, {"NN", "SN", "NS", "SS"}, {{0, 1, {1, 0}}, {2, 3, {1, 0}}, {0, 2, {0, 1}}, {1, 3, {0, 1}}}};
}

inline std::map<int, long> betti_cp1() { return {{0, 1}, {2, 1}}; }
inline std::map<int, long> betti_cp2() { return {{0, 1}, {2, 1}, {4, 1}}; }
inline std::map<int, long> betti_cp1xcp1() { return {{0, 1}, {2, 2}, {4, 1}}; }

/// Random element of the coefficient ring of theory in cohomological degree q
/// (for periodic theories) or degree 0.
inline Scalar random_scalar(const Ring &ring, std::mt19937 &rng, int power = 0) {
  std::uniform_int_distribution<long> d(-4, 4);
  return Scalar(ring, Number(ring.domain, ring.p, d(rng)), power);
}

/// Random homogeneous series of degree q (|c| + 2|a| = q).
inline TruncatedSeries random_homogeneous(const Theory &t, int m, int q, std::mt19937 &rng, double density = 0.6) {
  const Ring &ring = t.ring();
  TruncatedSeries f(ring, m, t.truncation());
  const auto &idx = f.index();
  std::bernoulli_distribution keep(density);
  const int period = t.weight_period();
  for (int i = 0; i < idx.size(); ++i) {
    const int w = idx.total_degree(i);
    if (period == 0) {
      if (2 * w != q)
        continue;
      if (keep(rng))
        f.set(i, random_scalar(ring, rng));
    } else {
      // |t^k| = -2 k period, so k = (2w - q) / (2 period)
      if ((2 * w - q) % (2 * period) != 0)
        continue;
      if (keep(rng))
        f.set(i, random_scalar(ring, rng, (2 * w - q) / (2 * period)));
    }
  }
  return f;
}

/// Random series without constant term, mixing degrees only when the
/// theory is not graded (ordinary theories).
inline TruncatedSeries random_series(const Theory &t, int m, std::mt19937 &rng, bool constant = false) {
  const Ring &ring = t.ring();
  TruncatedSeries f(ring, m, t.truncation());
  const auto &idx = f.index();
  std::bernoulli_distribution keep(0.5);
  const int period = t.weight_period();
  for (int i = constant ? 0 : 1; i < idx.size(); ++i)
    if (keep(rng)) {
      // keep a single total degree 2 for periodic theories: power = w - 1
      // scaled so that every term has degree 2
      if (period == 0)
        f.set(i, random_scalar(ring, rng));
      else if ((idx.total_degree(i) - 1) % period == 0)
        f.set(i, random_scalar(ring, rng, (idx.total_degree(i) - 1) / period));
    }
  return f;
}

/// A random unimodular m x m matrix as a product of elementary moves.
inline IntMatrix random_unimodular(int m, std::mt19937 &rng) {
  IntMatrix w = IntMatrix::identity(m);
  if (m == 1) {
    if (std::bernoulli_distribution(0.5)(rng))
      w(0, 0) = -1;
    return w;
  }
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int step = 0; step < 4 * m; ++step) {
    const int a = pick(rng);
    int b = pick(rng);
    if (a == b)
      b = (a + 1) % m;
    const long c = coef(rng);
    for (int i = 0; i < m; ++i)
      w(i, a) += c * w(i, b);
    if (std::bernoulli_distribution(0.2)(rng))
      w.swap_cols(a, b);
  }
  return w;
}

/// Dense polynomial oracle: exponent vector -> rational coefficient.
using Poly = std::map<std::vector<int>, mpq_class>;

inline Poly poly_mul(const Poly &a, const Poly &b, int trunc) {
  Poly r;
  for (const auto &[ea, ca] : a)
    for (const auto &[eb, cb] : b) {
      std::vector<int> e(ea.size());
      int deg = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        deg += e[i];
      }
      if (deg > trunc)
        continue;
      r[e] += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();)
    it = sgn(it->second) == 0 ? r.erase(it) : std::next(it);
  return r;
}

/// Base coefficients of an ordinary (non-periodic) series as a Poly.
inline Poly to_poly(const TruncatedSeries &f) {
  Poly p;
  const auto &idx = f.index();
  for (int i = 0; i < idx.size(); ++i)
    if (!f.coefficient(i).is_zero()) {
      const auto e = idx.exponents(i);
      p[std::vector<int>(e.begin(), e.end())] = f.coefficient(i).base().to_rational();
    }
  return p;
}

} // namespace testing
