#include "gkmcoh/scalar.hpp"

#include <sstream>

namespace gkmcoh {

namespace {

std::int64_t mod(std::int64_t a, int p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, int p) {
  std::int64_t r = 1;
  b = mod(b, p);
  while (e > 0) {
    if (e & 1)
      r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i)
    r *= b;
  return r;
}

} // namespace

bool is_prime(long p) {
  if (p < 2)
    return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

// ---------------------------------------------------------------- Ring

int Ring::period_degree() const {
  switch (periodicity) {
  case Periodicity::none:
    return 0;
  case Periodicity::beta:
    return -2;
  case Periodicity::vn:
    return -2 * static_cast<int>(ipow(p, n) - 1);
  }
  return 0;
}

std::string Ring::symbol() const {
  switch (periodicity) {
  case Periodicity::none:
    return "";
  case Periodicity::beta:
    return "beta";
  case Periodicity::vn:
    return "v" + std::to_string(n);
  }
  return "";
}

Ring Ring::with_domain(Domain d) const {
  Ring r = *this;
  r.domain = d;
  if (d != Domain::prime_field && periodicity != Periodicity::vn)
    r.p = 0;
  return r;
}

// ---------------------------------------------------------------- Number

Number::Number(Domain domain, int p, long value) : domain_(domain), p_(p) {
  if (domain == Domain::prime_field) {
    if (!is_prime(p))
      throw ConfigError("prime field needs a prime characteristic, got " + std::to_string(p));
    value_ = mod(value, p);
  } else {
    p_ = 0;
    value_ = mpq_class(value);
  }
}

Number Number::from_rational(Domain domain, int p, const mpq_class &q) {
  Number r(domain, p, 0);
  switch (domain) {
  case Domain::integer:
    if (q.get_den() != 1)
      throw AlgebraError("non-integral value " + q.get_str() + " in an integer ring");
    r.value_ = q;
    break;
  case Domain::rational:
    r.value_ = q;
    break;
  case Domain::prime_field: {
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (den == 0)
      throw AlgebraError("value " + q.get_str() + " is not " + std::to_string(p) + "-integral");
    std::int64_t n = mod(num.get_si(), p);
    std::int64_t d = mod(den.get_si(), p);
    r.value_ = n * pow_mod(d, p - 2, p) % p;
    break;
  }
  }
  return r;
}

bool Number::is_zero() const {
  if (domain_ == Domain::prime_field)
    return std::get<std::int64_t>(value_) == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Number::is_one() const {
  if (domain_ == Domain::prime_field)
    return std::get<std::int64_t>(value_) == 1;
  return std::get<mpq_class>(value_) == 1;
}

bool Number::is_unit() const {
  if (domain_ == Domain::integer) {
    const auto &q = std::get<mpq_class>(value_);
    return q == 1 || q == -1;
  }
  return !is_zero();
}

int Number::sign() const {
  if (domain_ == Domain::prime_field)
    return is_zero() ? 0 : 1;
  return sgn(std::get<mpq_class>(value_));
}

Number Number::inverse() const {
  if (!is_unit())
    throw NotInvertible("inverse of non-unit " + str());
  Number r = *this;
  if (domain_ == Domain::prime_field)
    r.value_ = pow_mod(std::get<std::int64_t>(value_), p_ - 2, p_);
  else
    r.value_ = mpq_class(1) / std::get<mpq_class>(value_);
  return r;
}

std::int64_t Number::residue() const {
  if (domain_ != Domain::prime_field)
    throw AlgebraError("residue() on a characteristic-zero number");
  return std::get<std::int64_t>(value_);
}

mpq_class Number::to_rational() const {
  if (domain_ == Domain::prime_field)
    return mpq_class(static_cast<long>(std::get<std::int64_t>(value_)));
  return std::get<mpq_class>(value_);
}

void Number::check_compatible(const Number &o) const {
  if (domain_ != o.domain_ || p_ != o.p_)
    throw AlgebraError("arithmetic between numbers of different rings");
}

Number Number::operator-() const {
  Number r = *this;
  if (domain_ == Domain::prime_field)
    r.value_ = mod(-std::get<std::int64_t>(value_), p_);
  else
    r.value_ = -std::get<mpq_class>(value_);
  return r;
}

Number &Number::operator+=(const Number &o) {
  check_compatible(o);
  if (domain_ == Domain::prime_field) {
    auto &v = std::get<std::int64_t>(value_);
    v += std::get<std::int64_t>(o.value_);
    if (v >= p_)
      v -= p_;
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Number &Number::operator-=(const Number &o) {
  check_compatible(o);
  if (domain_ == Domain::prime_field) {
    auto &v = std::get<std::int64_t>(value_);
    v -= std::get<std::int64_t>(o.value_);
    if (v < 0)
      v += p_;
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Number &Number::operator*=(const Number &o) {
  check_compatible(o);
  if (domain_ == Domain::prime_field) {
    auto &v = std::get<std::int64_t>(value_);
    v = v * std::get<std::int64_t>(o.value_) % p_;
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

bool Number::operator==(const Number &o) const {
  return domain_ == o.domain_ && p_ == o.p_ && value_ == o.value_;
}

std::string Number::str() const {
  if (domain_ == Domain::prime_field)
    return std::to_string(std::get<std::int64_t>(value_));
  return std::get<mpq_class>(value_).get_str();
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Ring &ring, Number c, int power) : ring_(ring), c_(std::move(c)), power_(power) {
  if (c_.domain() != ring.domain)
    throw AlgebraError("scalar base number does not belong to the ring");
  if (ring.periodicity == Periodicity::none && power != 0)
    throw AlgebraError("periodicity power in a ring without periodicity element");
  if (c_.is_zero())
    power_ = 0;
}

Scalar Scalar::zero(const Ring &ring) { return Scalar(ring, Number(ring.domain, ring.p, 0)); }

Scalar Scalar::one(const Ring &ring) { return Scalar(ring, Number(ring.domain, ring.p, 1)); }

Scalar Scalar::from_int(const Ring &ring, long value) {
  return Scalar(ring, Number(ring.domain, ring.p, value));
}

Scalar Scalar::from_rational(const Ring &ring, const mpq_class &q) {
  return Scalar(ring, Number::from_rational(ring.domain, ring.p, q));
}

Scalar Scalar::periodic(const Ring &ring, int k) {
  return Scalar(ring, Number(ring.domain, ring.p, 1), k);
}

int Scalar::degree() const { return power_ * ring_.period_degree(); }

void Scalar::check_ring(const Scalar &o) const {
  if (!(ring_ == o.ring_))
    throw AlgebraError("arithmetic between scalars of different rings");
}

Scalar Scalar::inverse() const {
  if (!is_unit())
    throw NotInvertible("inverse of non-unit scalar " + str());
  return Scalar(ring_, c_.inverse(), -power_);
}

Scalar Scalar::operator-() const { return Scalar(ring_, -c_, power_); }

Scalar &Scalar::operator+=(const Scalar &o) {
  check_ring(o);
  if (o.is_zero())
    return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (power_ != o.power_)
    throw DegreeMismatch("sum of scalars of degrees " + std::to_string(degree()) + " and " +
                         std::to_string(o.degree()));
  c_ += o.c_;
  if (c_.is_zero())
    power_ = 0;
  return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) { return *this += -o; }

Scalar &Scalar::operator*=(const Scalar &o) {
  check_ring(o);
  c_ *= o.c_;
  power_ = c_.is_zero() ? 0 : power_ + o.power_;
  return *this;
}

bool Scalar::operator==(const Scalar &o) const {
  return ring_ == o.ring_ && c_ == o.c_ && power_ == o.power_;
}

Scalar Scalar::with_domain(Domain d) const {
  Ring r = ring_.with_domain(d);
  return Scalar(r, Number::from_rational(d, r.p, c_.to_rational()), power_);
}

std::string Scalar::str() const {
  std::string sym = ring_.symbol();
  if (power_ == 0 || sym.empty())
    return c_.str();
  std::string t = sym;
  if (power_ != 1)
    t += "^" + std::to_string(power_);
  if (c_.is_one())
    return t;
  if ((-c_).is_one() && c_.domain() != Domain::prime_field)
    return "-" + t;
  return c_.str() + "*" + t;
}

Scalar add(const Scalar &a, const Scalar &b) { return a + b; }
Scalar mul(const Scalar &a, const Scalar &b) { return a * b; }
Scalar neg(const Scalar &a) { return -a; }
bool is_unit(const Scalar &a) { return a.is_unit(); }
Scalar inverse(const Scalar &a) { return a.inverse(); }

// ---------------------------------------------------------------- Theory

std::string to_string(TheoryKind kind) {
  switch (kind) {
  case TheoryKind::ordinary_integral:
    return "ordinary-integral";
  case TheoryKind::ordinary_rational:
    return "ordinary-rational";
  case TheoryKind::ordinary_mod_p:
    return "ordinary-mod-p";
  case TheoryKind::multiplicative:
    return "multiplicative";
  case TheoryKind::morava:
    return "morava";
  }
  return "?";
}

Theory make_theory(const TheoryConfig &config) {
  if (config.truncation < 1)
    throw ConfigError("truncation degree must be at least 1, got " + std::to_string(config.truncation));
  const std::string kind = to_string(config.kind);
  const bool needs_p = config.kind == TheoryKind::ordinary_mod_p || config.kind == TheoryKind::morava;
  const bool allows_p = needs_p || config.kind == TheoryKind::multiplicative;
  const bool needs_n = config.kind == TheoryKind::morava;
  if (needs_p && !config.p)
    throw ConfigError("theory " + kind + " requires the prime p");
  if (!allows_p && config.p)
    throw ConfigError("theory " + kind + " does not take a prime p");
  if (needs_n && !config.n)
    throw ConfigError("theory " + kind + " requires the height n");
  if (!needs_n && config.n)
    throw ConfigError("theory " + kind + " does not take a height n");
  if (config.p && !is_prime(*config.p))
    throw ConfigError("p must be prime, got " + std::to_string(*config.p));
  if (config.n && *config.n < 1)
    throw ConfigError("height n must be at least 1, got " + std::to_string(*config.n));
  if (config.n && ipow(*config.p, *config.n) > (1L << 30))
    throw ConfigError("p^n is too large");

  Ring ring;
  switch (config.kind) {
  case TheoryKind::ordinary_integral:
    ring = {Domain::integer, Periodicity::none, 0, 0};
    break;
  case TheoryKind::ordinary_rational:
    ring = {Domain::rational, Periodicity::none, 0, 0};
    break;
  case TheoryKind::ordinary_mod_p:
    ring = {Domain::prime_field, Periodicity::none, *config.p, 0};
    break;
  case TheoryKind::multiplicative:
    if (config.p)
      ring = {Domain::prime_field, Periodicity::beta, *config.p, 0};
    else
      ring = {Domain::integer, Periodicity::beta, 0, 0};
    break;
  case TheoryKind::morava:
    ring = {Domain::prime_field, Periodicity::vn, *config.p, *config.n};
    break;
  }
  return Theory(config, ring);
}

bool Theory::is_graded_field() const { return ring_.domain != Domain::integer; }

int Theory::weight_period() const {
  switch (ring_.periodicity) {
  case Periodicity::none:
    return 0;
  case Periodicity::beta:
    return 1;
  case Periodicity::vn:
    return static_cast<int>(ipow(ring_.p, ring_.n) - 1);
  }
  return 0;
}

std::string Theory::name() const {
  std::ostringstream os;
  os << to_string(config_.kind);
  if (config_.p || config_.n) {
    os << "(";
    if (config_.p)
      os << "p=" << *config_.p;
    if (config_.n)
      os << ",n=" << *config_.n;
    os << ")";
  }
  return os.str();
}

std::string Theory::describe() const {
  std::ostringstream os;
  std::string base;
  switch (ring_.domain) {
  case Domain::integer:
    base = "Z";
    break;
  case Domain::rational:
    base = "Q";
    break;
  case Domain::prime_field:
    base = "F_" + std::to_string(ring_.p);
    break;
  }
  if (ring_.periodicity == Periodicity::none) {
    os << "E_* = " << base << " in degree 0";
  } else {
    const std::string t = ring_.symbol();
    os << "E_* = " << base << "[" << t << "^{+-1}], |" << t << "| = " << ring_.period_degree();
  }
  os << ", truncation D = " << config_.truncation;
  return os.str();
}

Theory Theory::with_truncation(int d) const {
  TheoryConfig c = config_;
  c.truncation = d;
  return make_theory(c);
}

} // namespace gkmcoh
