#pragma once

// Graded coefficient rings E_* for the supported complex-oriented theories.
//
// Every scalar is homogeneous: a base number c (an integer, a rational or a
// residue mod p) times a power t^k of the periodicity element t (beta for the
// multiplicative theory, v_n for Morava K-theory). Degrees are cohomological,
// so |beta| = -2 and |v_n| = -2(p^n - 1).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace gkmcoh {

class AlgebraError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public AlgebraError {
public:
  using AlgebraError::AlgebraError;
};

class NotInvertible : public AlgebraError {
public:
  using AlgebraError::AlgebraError;
};

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Domain : std::uint8_t { integer, rational, prime_field };

enum class Periodicity : std::uint8_t { none, beta, vn };

/// Identifies a graded coefficient ring. Two scalars can only be combined
/// when their rings compare equal.
struct Ring {
  Domain domain = Domain::integer;
  Periodicity periodicity = Periodicity::none;
  int p = 0; // characteristic for prime_field, the prime of v_n
  int n = 0; // height of v_n

  /// Cohomological degree of the periodicity element, 0 if there is none.
  [[nodiscard]] int period_degree() const;
  /// Printable name of the periodicity element ("beta", "v2", or "").
  [[nodiscard]] std::string symbol() const;
  [[nodiscard]] Ring with_domain(Domain d) const;

  bool operator==(const Ring &) const = default;
};

bool is_prime(long p);

/// An element of Z, Q or F_p, without any grading.
class Number {
public:
  Number() : domain_(Domain::integer), value_(mpq_class(0)) {}
  Number(Domain domain, int p, long value);
  static Number from_rational(Domain domain, int p, const mpq_class &q);

  [[nodiscard]] Domain domain() const { return domain_; }
  [[nodiscard]] int prime() const { return p_; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] bool is_unit() const;
  [[nodiscard]] int sign() const;

  [[nodiscard]] Number inverse() const;
  /// Residue for prime_field, throws otherwise.
  [[nodiscard]] std::int64_t residue() const;
  [[nodiscard]] mpq_class to_rational() const;

  Number operator-() const;
  Number &operator+=(const Number &o);
  Number &operator-=(const Number &o);
  Number &operator*=(const Number &o);
  friend Number operator+(Number a, const Number &b) { return a += b; }
  friend Number operator-(Number a, const Number &b) { return a -= b; }
  friend Number operator*(Number a, const Number &b) { return a *= b; }
  bool operator==(const Number &o) const;

  [[nodiscard]] std::string str() const;

private:
  void check_compatible(const Number &o) const;

  Domain domain_;
  int p_ = 0;
  std::variant<std::int64_t, mpq_class> value_;
};

/// Homogeneous element c * t^k of a graded coefficient ring.
class Scalar {
public:
  Scalar() = default;
  Scalar(const Ring &ring, Number c, int power = 0);

  static Scalar zero(const Ring &ring);
  static Scalar one(const Ring &ring);
  static Scalar from_int(const Ring &ring, long value);
  static Scalar from_rational(const Ring &ring, const mpq_class &q);
  /// t^k for the ring's periodicity element.
  static Scalar periodic(const Ring &ring, int k);

  [[nodiscard]] const Ring &ring() const { return ring_; }
  [[nodiscard]] const Number &base() const { return c_; }
  [[nodiscard]] int power() const { return power_; }
  /// Cohomological degree; zero is reported as degree 0 but is compatible
  /// with every degree under addition.
  [[nodiscard]] int degree() const;

  [[nodiscard]] bool is_zero() const { return c_.is_zero(); }
  [[nodiscard]] bool is_one() const { return power_ == 0 && c_.is_one(); }
  [[nodiscard]] bool is_unit() const { return c_.is_unit(); }
  [[nodiscard]] Scalar inverse() const;

  Scalar operator-() const;
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  bool operator==(const Scalar &o) const;

  /// Same scalar over another base domain (e.g. Z -> Q).
  [[nodiscard]] Scalar with_domain(Domain d) const;

  [[nodiscard]] std::string str() const;

private:
  void check_ring(const Scalar &o) const;

  Ring ring_{};
  Number c_{};
  int power_ = 0;
};

Scalar add(const Scalar &a, const Scalar &b);
Scalar mul(const Scalar &a, const Scalar &b);
Scalar neg(const Scalar &a);
bool is_unit(const Scalar &a);
Scalar inverse(const Scalar &a);

enum class TheoryKind {
  ordinary_integral,
  ordinary_rational,
  ordinary_mod_p,
  multiplicative,
  morava,
};

struct TheoryConfig {
  TheoryKind kind = TheoryKind::ordinary_integral;
  std::optional<int> p;
  std::optional<int> n;
  int truncation = 8;
};

/// A cohomology theory E^*: coefficient ring plus truncation degree. The
/// formal group law is built from it by build_fgl().
class Theory {
public:
  [[nodiscard]] const TheoryConfig &config() const { return config_; }
  [[nodiscard]] TheoryKind kind() const { return config_.kind; }
  [[nodiscard]] const Ring &ring() const { return ring_; }
  [[nodiscard]] int truncation() const { return config_.truncation; }
  [[nodiscard]] std::optional<int> prime() const { return config_.p; }
  [[nodiscard]] std::optional<int> height() const { return config_.n; }

  /// Every nonzero homogeneous scalar is a unit.
  [[nodiscard]] bool is_graded_field() const;
  [[nodiscard]] bool is_morava() const { return config_.kind == TheoryKind::morava; }
  /// Number of u-degrees spanned by one period: p^n - 1 for Morava, 1 for
  /// the multiplicative theory, 0 for theories concentrated in degree 0.
  [[nodiscard]] int weight_period() const;

  [[nodiscard]] Scalar zero() const { return Scalar::zero(ring_); }
  [[nodiscard]] Scalar one() const { return Scalar::one(ring_); }
  [[nodiscard]] Scalar integer(long v) const { return Scalar::from_int(ring_, v); }
  [[nodiscard]] Scalar periodic(int k) const { return Scalar::periodic(ring_, k); }

  /// Short name, e.g. "morava(p=2,n=1)".
  [[nodiscard]] std::string name() const;
  /// One-line description of E_*.
  [[nodiscard]] std::string describe() const;

  /// Same theory at another truncation degree.
  [[nodiscard]] Theory with_truncation(int d) const;

private:
  friend Theory make_theory(const TheoryConfig &config);
  Theory(TheoryConfig config, Ring ring) : config_(config), ring_(ring) {}

  TheoryConfig config_;
  Ring ring_;
};

Theory make_theory(const TheoryConfig &config);

std::string to_string(TheoryKind kind);

} // namespace gkmcoh
