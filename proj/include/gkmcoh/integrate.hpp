#pragma once

// Atiyah-Bott localization along a generic one-parameter subgroup.

#include <optional>
#include <vector>

#include "gkmcoh/gkm.hpp"

namespace gkmcoh {

class LocalizationError : public AlgebraError {
public:
  using AlgebraError::AlgebraError;
};

struct GenericSlope {
  std::vector<long> lambda;
  /// All pairings are also nonzero mod p. Morava theories accept slopes
  /// without this (v_n is a unit, so [kp]s still has a unit leading
  /// coefficient); ordinary mod-p cohomology does not.
  bool mod_p_generic = true;
};

/// Pairings <a, lambda> are nonzero for every edge weight, and nonzero
/// mod p when the theory requires it.
bool is_generic(const GKMGraph &g, const Theory &theory, const std::vector<long> &lambda);

/// First valid slope in the search order: boxes {1..r}^m for growing r,
/// lexicographic within the new shell of each box.
GenericSlope find_generic_slope(const GKMGraph &g, const Theory &theory);

/// The first count valid slopes in the same order.
std::vector<GenericSlope> generic_slopes(const GKMGraph &g, const Theory &theory, int count);

struct EulerClassData {
  std::vector<std::vector<Character>> weights; // per vertex, outgoing
  std::vector<TruncatedSeries> euler;           // prod_alpha [<alpha, lambda>] s
  std::vector<int> order;                       // valuation of euler[i]
};

EulerClassData euler_classes(const GKMGraph &g, const FormalGroupLaw &fgl, const GenericSlope &slope);

/// f(u_1, ..., u_m) with u_i = [lambda_i] s, for each restriction.
std::vector<TruncatedSeries> localize_class(const FormalGroupLaw &fgl, const EquivariantClass &c,
                                            const std::vector<long> &lambda);

/// Truncation degree needed to integrate classes of degree up to max_degree.
int integration_truncation(const GKMGraph &g, const FormalGroupLaw &fgl, const GenericSlope &slope,
                           int max_degree);

struct IntegrationResult {
  GenericSlope slope;
  EulerClassData euler;
  std::vector<LaurentSeries> terms; // f_i / eu_i
  LaurentSeries sum;
  /// Coefficients were extended from Z to Q for the division.
  bool rational_extension = false;
  /// Every coefficient of s^e, e < 0, within precision is zero.
  bool negative_part_vanishes = false;
  /// The class is homogeneous of degree 2 * valence.
  bool top_degree = false;
  /// Coefficient of s^0 when top_degree.
  std::optional<Scalar> integral;
  /// The integral has an integral base value (meaningful with rational_extension).
  bool integral_is_integer = false;
};

IntegrationResult integrate(const GKMGraph &g, const FormalGroupLaw &fgl, const EquivariantClass &c,
                            const GenericSlope &slope);

} // namespace gkmcoh
