#pragma once

#include "gkmcoh/scalar.hpp"
#include "gkmcoh/series.hpp"

namespace gkmcoh {

class FglConstructionError : public AlgebraError {
public:
  using AlgebraError::AlgebraError;
};

/// Formal group law F(x, y) of a theory, truncated at the theory's D.
/// The coefficient of x^i y^j has degree 2 - 2(i + j).
class FormalGroupLaw {
public:
  FormalGroupLaw(Theory theory, TruncatedSeries law);

  [[nodiscard]] const Theory &theory() const { return theory_; }
  [[nodiscard]] const Ring &ring() const { return theory_.ring(); }
  [[nodiscard]] int truncation() const { return theory_.truncation(); }
  /// F as a series in two variables.
  [[nodiscard]] const TruncatedSeries &law() const { return law_; }
  /// The formal inverse i(u) in one variable.
  [[nodiscard]] const TruncatedSeries &inverse_series() const { return inverse_; }

  [[nodiscard]] std::string str() const { return law_.str({"x", "y"}); }

private:
  Theory theory_;
  TruncatedSeries law_;
  TruncatedSeries inverse_;
};

/// Additive law x + y for the ordinary theories, x + y - beta*x*y for the
/// multiplicative theory, and the Honda law of height n for Morava
/// K-theory, obtained from the logarithm sum_i x^{p^{ni}} / p^i over Q,
/// reduced mod p, with v_n^{(i+j-1)/(p^n-1)} reinserted on x^i y^j.
FormalGroupLaw build_fgl(const Theory &theory);

/// F(a, b); a and b must share an ambient ring and have zero constant term.
TruncatedSeries formal_sum(const FormalGroupLaw &fgl, const TruncatedSeries &a, const TruncatedSeries &b);

/// i(a) with F(a, i(a)) = 0.
TruncatedSeries formal_inverse(const FormalGroupLaw &fgl, const TruncatedSeries &a);

/// [ell]_F(u) as a one-variable series, via a binary addition chain.
TruncatedSeries n_series(const FormalGroupLaw &fgl, long ell);

} // namespace gkmcoh
