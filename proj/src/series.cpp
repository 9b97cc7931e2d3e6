#include "gkmcoh/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace gkmcoh {

// ---------------------------------------------------------------- MonomialIndex

namespace {

void enumerate(int m, int total, std::vector<int> &prefix, std::vector<int> &out) {
  if (static_cast<int>(prefix.size()) == m - 1) {
    prefix.push_back(total);
    out.insert(out.end(), prefix.begin(), prefix.end());
    prefix.pop_back();
    return;
  }
  for (int e = total; e >= 0; --e) {
    prefix.push_back(e);
    enumerate(m, total - e, prefix, out);
    prefix.pop_back();
  }
}

} // namespace

MonomialIndex::MonomialIndex(int variables, int truncation) : m_(variables), d_(truncation) {
  if (m_ < 1 || m_ > 6)
    throw std::invalid_argument("variable count must be between 1 and 6");
  if (d_ < 0)
    throw std::invalid_argument("negative truncation degree");
  std::vector<int> prefix;
  for (int k = 0; k <= d_; ++k) {
    degree_start_.push_back(static_cast<int>(exps_.size()) / m_);
    enumerate(m_, k, prefix, exps_);
  }
  const int count = static_cast<int>(exps_.size()) / m_;
  degree_start_.push_back(count);
  degree_.resize(count);
  code_.resize(count);
  std::size_t span = 1;
  for (int i = 0; i < m_; ++i)
    span *= static_cast<std::size_t>(d_ + 1);
  lookup_.assign(span, -1);
  for (int idx = 0; idx < count; ++idx) {
    int total = 0;
    int code = 0;
    int radix = 1;
    for (int i = 0; i < m_; ++i) {
      const int e = exps_[static_cast<std::size_t>(idx) * m_ + i];
      total += e;
      code += e * radix;
      radix *= d_ + 1;
    }
    degree_[idx] = total;
    code_[idx] = code;
    lookup_[code] = idx;
  }
}

std::shared_ptr<const MonomialIndex> MonomialIndex::get(int variables, int truncation) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialIndex>> cache;
  std::lock_guard lock(mutex);
  auto &slot = cache[{variables, truncation}];
  if (!slot)
    slot = std::make_shared<const MonomialIndex>(variables, truncation);
  return slot;
}

int MonomialIndex::index_of(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != m_)
    throw std::invalid_argument("exponent vector has the wrong length");
  int total = 0;
  int code = 0;
  int radix = 1;
  for (int i = 0; i < m_; ++i) {
    if (exponents[i] < 0)
      throw std::invalid_argument("negative exponent");
    total += exponents[i];
    if (total > d_)
      return -1;
    code += exponents[i] * radix;
    radix *= d_ + 1;
  }
  return lookup_[code];
}

// ---------------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(const Ring &ring, int variables, int truncation)
    : ring_(ring), index_(MonomialIndex::get(variables, truncation)),
      coeffs_(static_cast<std::size_t>(index_->size()), Scalar::zero(ring)) {}

TruncatedSeries TruncatedSeries::constant(const Scalar &c, int variables, int truncation) {
  TruncatedSeries f(c.ring(), variables, truncation);
  f.coeffs_[0] = c;
  return f;
}

TruncatedSeries TruncatedSeries::variable(const Ring &ring, int i, int variables, int truncation) {
  if (i < 0 || i >= variables)
    throw std::out_of_range("variable index out of range");
  TruncatedSeries f(ring, variables, truncation);
  if (truncation >= 1) {
    std::vector<int> e(static_cast<std::size_t>(variables), 0);
    e[i] = 1;
    f.set(e, Scalar::one(ring));
  }
  return f;
}

TruncatedSeries TruncatedSeries::monomial(const Scalar &c, std::span<const int> exponents, int truncation) {
  TruncatedSeries f(c.ring(), static_cast<int>(exponents.size()), truncation);
  const int idx = f.index_->index_of(exponents);
  if (idx >= 0)
    f.coeffs_[idx] = c;
  return f;
}

Scalar TruncatedSeries::coefficient(std::span<const int> exponents) const {
  const int idx = index_->index_of(exponents);
  return idx < 0 ? Scalar::zero(ring_) : coeffs_[idx];
}

void TruncatedSeries::set(int index, const Scalar &c) {
  if (!(c.ring() == ring_))
    throw AlgebraError("coefficient from a different ring");
  coeffs_[index] = c;
}

void TruncatedSeries::set(std::span<const int> exponents, const Scalar &c) {
  const int idx = index_->index_of(exponents);
  if (idx < 0)
    throw std::out_of_range("monomial beyond the truncation degree");
  set(idx, c);
}

void TruncatedSeries::add_to(int index, const Scalar &c) { coeffs_[index] += c; }

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar &c) { return c.is_zero(); });
}

int TruncatedSeries::valuation() const {
  for (int i = 0; i < index_->size(); ++i)
    if (!coeffs_[i].is_zero())
      return index_->total_degree(i);
  return truncation() + 1;
}

std::optional<int> TruncatedSeries::degree() const {
  std::optional<int> q;
  for (int i = 0; i < index_->size(); ++i) {
    if (coeffs_[i].is_zero())
      continue;
    const int d = coeffs_[i].degree() + 2 * index_->total_degree(i);
    if (q && *q != d)
      return std::nullopt;
    q = d;
  }
  return q;
}

bool TruncatedSeries::is_homogeneous(int q) const {
  for (int i = 0; i < index_->size(); ++i)
    if (!coeffs_[i].is_zero() && coeffs_[i].degree() + 2 * index_->total_degree(i) != q)
      return false;
  return true;
}

int TruncatedSeries::term_count() const {
  return static_cast<int>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Scalar &c) { return !c.is_zero(); }));
}

void TruncatedSeries::check_same_ring(const TruncatedSeries &o) const {
  if (!(ring_ == o.ring_))
    throw AlgebraError("series over different coefficient rings");
  if (index_ != o.index_)
    throw AlgebraError("series with mismatched variable count or truncation (" +
                       std::to_string(variables()) + "," + std::to_string(truncation()) + ") vs (" +
                       std::to_string(o.variables()) + "," + std::to_string(o.truncation()) + ")");
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto &c : r.coeffs_)
    c = -c;
  return r;
}

TruncatedSeries &TruncatedSeries::operator+=(const TruncatedSeries &o) {
  check_same_ring(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!o.coeffs_[i].is_zero())
      coeffs_[i] += o.coeffs_[i];
  return *this;
}

TruncatedSeries &TruncatedSeries::operator-=(const TruncatedSeries &o) {
  check_same_ring(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!o.coeffs_[i].is_zero())
      coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TruncatedSeries &TruncatedSeries::operator*=(const Scalar &c) {
  for (auto &x : coeffs_)
    if (!x.is_zero())
      x *= c;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b) {
  a.check_same_ring(b);
  TruncatedSeries r(a.ring_, a.variables(), a.truncation());
  const MonomialIndex &idx = *a.index_;
  const int d = idx.truncation();
  std::vector<int> nonzero_b;
  for (int j = 0; j < idx.size(); ++j)
    if (!b.coeffs_[j].is_zero())
      nonzero_b.push_back(j);
  for (int i = 0; i < idx.size(); ++i) {
    const Scalar &ca = a.coeffs_[i];
    if (ca.is_zero())
      continue;
    const int limit = idx.degree_begin(d - idx.total_degree(i) + 1);
    for (int j : nonzero_b) {
      if (j >= limit)
        break;
      r.coeffs_[idx.product(i, j)] += ca * b.coeffs_[j];
    }
  }
  return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries &o) const {
  return ring_ == o.ring_ && index_ == o.index_ && coeffs_ == o.coeffs_;
}

TruncatedSeries TruncatedSeries::truncated(int d) const {
  TruncatedSeries r = *this;
  for (int i = index_->degree_begin(std::min(d + 1, truncation() + 1)); i < index_->size(); ++i)
    r.coeffs_[i] = Scalar::zero(ring_);
  return r;
}

TruncatedSeries TruncatedSeries::with_truncation(int d) const {
  TruncatedSeries r(ring_, variables(), d);
  const int limit = std::min(d, truncation());
  for (int i = 0; i < index_->degree_begin(limit + 1); ++i)
    r.coeffs_[r.index_->index_of(index_->exponents(i))] = coeffs_[i];
  return r;
}

TruncatedSeries TruncatedSeries::with_domain(Domain d) const {
  TruncatedSeries r(ring_.with_domain(d), variables(), truncation());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = coeffs_[i].with_domain(d);
  return r;
}

TruncatedSeries TruncatedSeries::pow(int e) const {
  if (e < 0)
    throw std::invalid_argument("negative power of a series");
  TruncatedSeries r = constant(Scalar::one(ring_), variables(), truncation());
  TruncatedSeries b = *this;
  while (e > 0) {
    if (e & 1)
      r = r * b;
    e >>= 1;
    if (e > 0)
      b = b * b;
  }
  return r;
}

std::vector<std::string> default_variable_names(int m) {
  if (m == 1)
    return {"u"};
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i)
    names.push_back("u" + std::to_string(i));
  return names;
}

namespace {

// Returns the term text without sign, and whether the term is negative.
std::pair<std::string, bool> format_term(const Scalar &c, std::span<const int> exps,
                                         const std::vector<std::string> &names) {
  std::vector<std::string> parts;
  Number base = c.base();
  bool negative = base.sign() < 0;
  if (negative)
    base = -base;
  bool has_rest = c.power() != 0;
  for (int e : exps)
    has_rest = has_rest || e != 0;
  if (!base.is_one() || !has_rest)
    parts.push_back(base.str());
  if (c.power() != 0) {
    std::string t = c.ring().symbol();
    if (c.power() != 1)
      t += "^" + std::to_string(c.power());
    parts.push_back(t);
  }
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0)
      continue;
    std::string v = names[i];
    if (exps[i] != 1)
      v += "^" + std::to_string(exps[i]);
    parts.push_back(v);
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += "*";
    out += parts[i];
  }
  return {out, negative};
}

std::string join_terms(const std::vector<std::pair<std::string, bool>> &terms) {
  if (terms.empty())
    return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto &[text, negative] = terms[i];
    if (i == 0)
      out += negative ? "-" + text : text;
    else
      out += (negative ? " - " : " + ") + text;
  }
  return out;
}

} // namespace

std::string TruncatedSeries::str(const std::vector<std::string> &names) const {
  const auto n = names.empty() ? default_variable_names(variables()) : names;
  if (static_cast<int>(n.size()) != variables())
    throw std::invalid_argument("wrong number of variable names");
  std::vector<std::pair<std::string, bool>> terms;
  for (int i = 0; i < index_->size(); ++i)
    if (!coeffs_[i].is_zero())
      terms.push_back(format_term(coeffs_[i], index_->exponents(i), n));
  return join_terms(terms);
}

TruncatedSeries series_add(const TruncatedSeries &f, const TruncatedSeries &g) { return f + g; }

TruncatedSeries series_mul(const TruncatedSeries &f, const TruncatedSeries &g) { return f * g; }

namespace {

struct Substituter {
  const TruncatedSeries &f;
  // powers[i][a] = g_i^a; shorter when the powers vanish under truncation
  std::vector<std::vector<TruncatedSeries>> powers;
  std::vector<int> exps;
  const TruncatedSeries &zero;

  TruncatedSeries eval(int level, int remaining) {
    const int m = f.variables();
    TruncatedSeries acc = zero;
    const auto &pw = powers[level];
    const int top = std::min<int>(remaining, static_cast<int>(pw.size()) - 1);
    for (int a = 0; a <= top; ++a) {
      exps[level] = a;
      if (level == m - 1) {
        const int idx = f.index().index_of(exps);
        if (idx >= 0 && !f.coefficient(idx).is_zero())
          acc += pw[a] * f.coefficient(idx);
      } else {
        TruncatedSeries inner = eval(level + 1, remaining - a);
        if (!inner.is_zero())
          acc += a == 0 ? inner : pw[a] * inner;
      }
    }
    exps[level] = 0;
    return acc;
  }
};

} // namespace

TruncatedSeries series_substitute(const TruncatedSeries &f, std::span<const TruncatedSeries> gs) {
  if (static_cast<int>(gs.size()) != f.variables())
    throw std::invalid_argument("substitution needs one series per variable");
  if (gs.empty())
    throw std::invalid_argument("empty substitution");
  const TruncatedSeries &g0 = gs.front();
  for (const auto &g : gs) {
    if (!(g.ring() == f.ring()) || g.variables() != g0.variables() || g.truncation() != g0.truncation())
      throw AlgebraError("substituted series must share one ambient ring");
    if (!g.constant_term().is_zero())
      throw AlgebraError("substituted series must have zero constant term");
  }
  const int d = g0.truncation();
  const TruncatedSeries zero(f.ring(), g0.variables(), d);
  const TruncatedSeries one = TruncatedSeries::constant(Scalar::one(f.ring()), g0.variables(), d);
  std::vector<std::vector<TruncatedSeries>> powers;
  for (const auto &g : gs) {
    std::vector<TruncatedSeries> pw{one};
    const int limit = std::min(f.truncation(), d);
    for (int a = 1; a <= limit; ++a) {
      TruncatedSeries next = pw.back() * g;
      if (next.is_zero())
        break;
      pw.push_back(std::move(next));
    }
    powers.push_back(std::move(pw));
  }
  Substituter s{f, std::move(powers), std::vector<int>(static_cast<std::size_t>(f.variables()), 0), zero};
  return s.eval(0, f.truncation());
}

TruncatedSeries series_invert(const TruncatedSeries &f) {
  const Scalar c0 = f.constant_term();
  if (!c0.is_unit())
    throw NotInvertible("series with non-unit constant term " + c0.str() + " is not invertible");
  const Scalar inv0 = c0.inverse();
  const TruncatedSeries one = TruncatedSeries::constant(Scalar::one(f.ring()), f.variables(), f.truncation());
  // f = c0 (1 - h), 1/f = c0^{-1} (1 + h + ... + h^D)
  const TruncatedSeries h = one - f * inv0;
  TruncatedSeries s = one;
  for (int k = 0; k < f.truncation(); ++k)
    s = one + h * s;
  return s * inv0;
}

// ---------------------------------------------------------------- LaurentSeries

LaurentSeries::LaurentSeries(const Ring &ring, int low, int precision)
    : ring_(ring), low_(low), precision_(precision),
      coeffs_(static_cast<std::size_t>(std::max(0, precision - low + 1)), Scalar::zero(ring)) {}

LaurentSeries LaurentSeries::from_series(const TruncatedSeries &f) {
  if (f.variables() != 1)
    throw std::invalid_argument("Laurent series need a one-variable series");
  LaurentSeries r(f.ring(), 0, f.truncation());
  for (int i = 0; i <= f.truncation(); ++i)
    r.coeffs_[i] = f.coefficient(i);
  return r;
}

LaurentSeries LaurentSeries::monomial(const Scalar &c, int exponent, int precision) {
  LaurentSeries r(c.ring(), std::min(exponent, precision + 1), precision);
  if (exponent <= precision)
    r.set(exponent, c);
  return r;
}

Scalar LaurentSeries::coefficient(int e) const {
  if (e > precision_)
    throw std::out_of_range("coefficient of s^" + std::to_string(e) + " is beyond the known precision s^" +
                            std::to_string(precision_));
  if (e < low_)
    return Scalar::zero(ring_);
  return coeffs_[e - low_];
}

void LaurentSeries::set(int e, const Scalar &c) {
  if (e > precision_)
    throw std::out_of_range("exponent beyond precision");
  if (e < low_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - e), Scalar::zero(ring_));
    low_ = e;
  }
  coeffs_[e - low_] = c;
}

int LaurentSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero())
      return low_ + static_cast<int>(i);
  return precision_ + 1;
}

LaurentSeries &LaurentSeries::operator+=(const LaurentSeries &o) {
  if (!(ring_ == o.ring_))
    throw AlgebraError("Laurent series over different rings");
  const int lo = std::min(low_, o.low_);
  const int prec = std::min(precision_, o.precision_);
  LaurentSeries r(ring_, lo, prec);
  for (int e = lo; e <= prec; ++e)
    r.coeffs_[e - lo] = coefficient(e) + o.coefficient(e);
  *this = std::move(r);
  return *this;
}

LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b) {
  if (!(a.ring_ == b.ring_))
    throw AlgebraError("Laurent series over different rings");
  const int va = a.valuation();
  const int vb = b.valuation();
  const int prec = std::min(a.precision_ + vb, b.precision_ + va);
  const int lo = std::min(va + vb, prec + 1);
  LaurentSeries r(a.ring_, lo, prec);
  for (int i = va; i <= a.precision_; ++i)
    for (int j = vb; j <= b.precision_ && i + j <= prec; ++j)
      r.coeffs_[i + j - lo] += a.coefficient(i) * b.coefficient(j);
  return r;
}

LaurentSeries LaurentSeries::with_domain(Domain d) const {
  LaurentSeries r(ring_.with_domain(d), low_, precision_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = coeffs_[i].with_domain(d);
  return r;
}

std::string LaurentSeries::str(const std::string &var) const {
  std::vector<std::pair<std::string, bool>> terms;
  for (int e = low_; e <= precision_; ++e) {
    const Scalar c = coefficient(e);
    if (c.is_zero())
      continue;
    std::vector<std::string> names{var};
    if (e >= 0) {
      const int exps[1] = {e};
      terms.push_back(format_term(c, exps, names));
    } else {
      const int none[1] = {0};
      auto [text, negative] = format_term(c, none, names);
      const std::string power = var + "^" + std::to_string(e);
      text = (text == "1") ? power : text + "*" + power;
      terms.emplace_back(text, negative);
    }
  }
  std::string out = join_terms(terms);
  return out + " + O(" + var + "^" + std::to_string(precision_ + 1) + ")";
}

LaurentSeries laurent_divide(const LaurentSeries &f, const LaurentSeries &g) {
  if (!(f.ring() == g.ring()))
    throw AlgebraError("Laurent division over different rings");
  const int vg = g.valuation();
  if (vg > g.precision())
    throw NotInvertible("division by a Laurent series that is zero to its precision");
  const Scalar lead = g.coefficient(vg);
  if (!lead.is_unit())
    throw NotInvertible("leading coefficient " + lead.str() + " of the divisor is not a unit");
  const Scalar lead_inv = lead.inverse();
  const int vf = f.valuation();
  const int prec = std::min(f.precision() - vg, vf + g.precision() - 2 * vg);
  const int lo = std::min(vf - vg, prec + 1);
  LaurentSeries q(f.ring(), lo, prec);
  // q_j = (f_{vf+j} - sum_{i>=1} g_{vg+i} q_{j-i}) / g_{vg}
  for (int j = 0; vf - vg + j <= prec; ++j) {
    Scalar t = f.coefficient(vf + j);
    for (int i = 1; i <= j; ++i) {
      const Scalar gi = g.coefficient(vg + i);
      if (!gi.is_zero())
        t -= gi * q.coefficient(vf - vg + j - i);
    }
    q.set(vf - vg + j, t * lead_inv);
  }
  return q;
}

} // namespace gkmcoh
