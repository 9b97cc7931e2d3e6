#pragma once

// Classifying-space rings: E^*(BT), E^*(BZ/l), character classes, and the
// kernel of restriction E^*(BT) -> E^*(B ker Theta).

#include <optional>
#include <vector>

#include "gkmcoh/fgl.hpp"
#include "gkmcoh/lattice.hpp"

namespace gkmcoh {

/// chi_a = [a_1]u_1 +_F ... +_F [a_m]u_m in E^*(BT), m = a.size().
TruncatedSeries character_class(const FormalGroupLaw &fgl, const Character &a);

/// E^*(BZ/l) = E_*[[u]] / ([l]_F u).
struct CyclicRingPresentation {
  long order = 0;
  TruncatedSeries relation; // [l]_F u
  /// Lowest u-degree of the relation; truncation + 1 if it vanishes to D.
  int relation_order = 0;
  /// True when the lowest coefficient of the relation is a unit, so that
  /// the ideal is (u^relation_order) and u^0..u^{order-1} is a free basis.
  bool unit_leading = false;
  /// Free rank over E_*, when unit_leading.
  std::optional<long> rank;
  /// l = p^r * s with gcd(s, p) = 1 (graded-field theories of characteristic p).
  std::optional<int> p_adic_valuation;
  std::optional<long> prime_to_p;
  /// Exponent of the periodicity element in the leading coefficient.
  std::optional<int> periodic_exponent;

  /// The relation divided by its unit part: exactly u^relation_order.
  [[nodiscard]] TruncatedSeries normalized_relation() const;
  /// Normal form of f: the terms below u^relation_order.
  [[nodiscard]] TruncatedSeries reduce(const TruncatedSeries &f) const;
};

CyclicRingPresentation cyclic_classifying_ring(const FormalGroupLaw &fgl, long ell);

/// Principal ideal ([d]_F chi_theta) modelling the kernel of restriction to
/// ker(Theta) for Theta = d * theta, described in coordinates where theta is
/// the last coordinate character.
struct RestrictionIdeal {
  Character weight;
  long multiplicity = 0;
  Character primitive;
  IntMatrix basis; // theta * basis = (0, ..., 0, 1)
  /// [d]_F u_m' as an m-variable series in adapted coordinates.
  TruncatedSeries generator;
  /// Images of u_1..u_m in adapted coordinates: chi of the rows of basis.
  std::vector<TruncatedSeries> coordinate_images;
  /// Lowest u_m'-degree of the generator (truncation + 1 if it vanishes).
  int generator_order = 0;
};

RestrictionIdeal kernel_ideal(const FormalGroupLaw &fgl, const Character &theta);

/// f(u) rewritten in the adapted coordinates u' of the ideal.
TruncatedSeries to_adapted_coordinates(const TruncatedSeries &f, const RestrictionIdeal &ideal);

/// Canonical residue of f modulo the ideal, in adapted coordinates. Zero
/// exactly when f lies in the ideal (up to truncation).
TruncatedSeries ideal_residue(const TruncatedSeries &f, const RestrictionIdeal &ideal);

/// Dimensions over E_* of the u-adic associated graded pieces of
/// E^*(BT) / (generators) in u-degrees 0..max_weight. Graded-field theories
/// only; generators must be homogeneous.
std::vector<long> quotient_weight_ranks(const std::vector<TruncatedSeries> &generators, int max_weight);

} // namespace gkmcoh
