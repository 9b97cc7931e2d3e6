#pragma once

// Truncated multivariate power series over graded scalars, and one-variable
// Laurent series with explicit precision for localization.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gkmcoh/scalar.hpp"

namespace gkmcoh {

/// Dense enumeration of the exponent vectors of m variables with total
/// degree <= D. Order: total degree ascending, then lexicographically
/// descending (u1^2, u1*u2, u2^2, ...). Instances are shared and immutable.
class MonomialIndex {
public:
  static std::shared_ptr<const MonomialIndex> get(int variables, int truncation);

  [[nodiscard]] int variables() const { return m_; }
  [[nodiscard]] int truncation() const { return d_; }
  [[nodiscard]] int size() const { return static_cast<int>(degree_.size()); }

  [[nodiscard]] std::span<const int> exponents(int index) const {
    return {exps_.data() + static_cast<std::size_t>(index) * m_, static_cast<std::size_t>(m_)};
  }
  [[nodiscard]] int total_degree(int index) const { return degree_[index]; }
  /// First index of the block of total degree k (k may be D + 1).
  [[nodiscard]] int degree_begin(int k) const { return degree_start_[k]; }

  /// -1 if the total degree exceeds D.
  [[nodiscard]] int index_of(std::span<const int> exponents) const;
  /// Index of the product monomial, -1 if truncated away.
  [[nodiscard]] int product(int a, int b) const {
    if (degree_[a] + degree_[b] > d_)
      return -1;
    return lookup_[code_[a] + code_[b]];
  }

  MonomialIndex(int variables, int truncation);

private:
  int m_;
  int d_;
  std::vector<int> exps_;
  std::vector<int> degree_;
  std::vector<int> code_;
  std::vector<int> lookup_;
  std::vector<int> degree_start_;
};

/// Element of E_*[[u_1..u_m]] / (monomials of total degree > D).
class TruncatedSeries {
public:
  TruncatedSeries() = default;
  TruncatedSeries(const Ring &ring, int variables, int truncation);

  static TruncatedSeries constant(const Scalar &c, int variables, int truncation);
  /// The variable u_{i+1} (0-based i).
  static TruncatedSeries variable(const Ring &ring, int i, int variables, int truncation);
  static TruncatedSeries monomial(const Scalar &c, std::span<const int> exponents, int truncation);

  [[nodiscard]] const Ring &ring() const { return ring_; }
  [[nodiscard]] int variables() const { return index_->variables(); }
  [[nodiscard]] int truncation() const { return index_->truncation(); }
  [[nodiscard]] const MonomialIndex &index() const { return *index_; }

  [[nodiscard]] const Scalar &coefficient(int index) const { return coeffs_[index]; }
  [[nodiscard]] Scalar coefficient(std::span<const int> exponents) const;
  [[nodiscard]] Scalar constant_term() const { return coeffs_[0]; }
  void set(int index, const Scalar &c);
  void set(std::span<const int> exponents, const Scalar &c);
  void add_to(int index, const Scalar &c);

  [[nodiscard]] bool is_zero() const;
  /// Lowest total degree of a nonzero term, D + 1 for zero.
  [[nodiscard]] int valuation() const;
  /// Cohomological degree if every term c*u^a has |c| + 2|a| equal; zero
  /// series report nullopt.
  [[nodiscard]] std::optional<int> degree() const;
  [[nodiscard]] bool is_homogeneous(int q) const;
  [[nodiscard]] int term_count() const;

  TruncatedSeries operator-() const;
  TruncatedSeries &operator+=(const TruncatedSeries &o);
  TruncatedSeries &operator-=(const TruncatedSeries &o);
  TruncatedSeries &operator*=(const Scalar &c);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Scalar &c) { return a *= c; }
  friend TruncatedSeries operator*(const Scalar &c, TruncatedSeries a) { return a *= c; }
  bool operator==(const TruncatedSeries &o) const;

  /// Drop every term of total degree > d (d <= D).
  [[nodiscard]] TruncatedSeries truncated(int d) const;
  /// Same terms in a ring with a larger or smaller truncation degree.
  [[nodiscard]] TruncatedSeries with_truncation(int d) const;
  /// Same terms over another base domain (Z -> Q).
  [[nodiscard]] TruncatedSeries with_domain(Domain d) const;
  [[nodiscard]] TruncatedSeries pow(int e) const;

  /// Canonical text: terms by total degree then descending lex order.
  /// Default names are u (m = 1) or u1..um.
  [[nodiscard]] std::string str(const std::vector<std::string> &names = {}) const;

private:
  void check_same_ring(const TruncatedSeries &o) const;

  Ring ring_{};
  std::shared_ptr<const MonomialIndex> index_;
  std::vector<Scalar> coeffs_;
};

TruncatedSeries series_add(const TruncatedSeries &f, const TruncatedSeries &g);
TruncatedSeries series_mul(const TruncatedSeries &f, const TruncatedSeries &g);

/// f(g_1, ..., g_m), truncated at the truncation degree of the g_i.
/// Every g_i must have zero constant term.
TruncatedSeries series_substitute(const TruncatedSeries &f, std::span<const TruncatedSeries> gs);

/// Multiplicative inverse; the constant term must be a unit.
TruncatedSeries series_invert(const TruncatedSeries &f);

std::vector<std::string> default_variable_names(int m);

/// One-variable Laurent series sum_{e=low}^{precision} c_e s^e + O(s^{precision+1}).
class LaurentSeries {
public:
  LaurentSeries(const Ring &ring, int low, int precision);
  /// A one-variable truncated series viewed as a Laurent series with
  /// precision equal to its truncation degree.
  static LaurentSeries from_series(const TruncatedSeries &f);
  static LaurentSeries monomial(const Scalar &c, int exponent, int precision);

  [[nodiscard]] const Ring &ring() const { return ring_; }
  [[nodiscard]] int low() const { return low_; }
  /// Highest exponent whose coefficient is known.
  [[nodiscard]] int precision() const { return precision_; }
  /// Zero for exponents below low(); throws above precision().
  [[nodiscard]] Scalar coefficient(int e) const;
  void set(int e, const Scalar &c);
  /// Lowest exponent with nonzero coefficient, precision() + 1 if none.
  [[nodiscard]] int valuation() const;
  [[nodiscard]] bool is_zero() const { return valuation() > precision_; }

  LaurentSeries &operator+=(const LaurentSeries &o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries &b) { return a += b; }
  friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b);
  [[nodiscard]] LaurentSeries with_domain(Domain d) const;

  [[nodiscard]] std::string str(const std::string &var = "s") const;

private:
  Ring ring_;
  int low_;
  int precision_;
  std::vector<Scalar> coeffs_;
};

/// Exact quotient f / g to the surviving precision. The leading coefficient
/// of g must be a unit.
LaurentSeries laurent_divide(const LaurentSeries &f, const LaurentSeries &g);

} // namespace gkmcoh
