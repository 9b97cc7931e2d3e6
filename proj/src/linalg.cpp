#include "gkmcoh/linalg.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace gkmcoh {

FieldMatrix::FieldMatrix(Domain domain, int p, int rows, int cols)
    : domain_(domain), p_(domain == Domain::prime_field ? p : 0), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, Number(domain, p, 0)) {
  if (domain == Domain::integer)
    throw std::invalid_argument("field linear algebra over the integers");
}

void FieldMatrix::set(int i, int j, const Number &x) {
  if (x.domain() != domain_)
    throw AlgebraError("matrix entry from a different field");
  data_[static_cast<std::size_t>(i) * cols_ + j] = x;
}

void FieldMatrix::append_zero_rows(int count) {
  data_.resize(data_.size() + static_cast<std::size_t>(count) * cols_, Number(domain_, p_, 0));
  rows_ += count;
}

namespace {

// Elimination kernels on plain element types; F_p uses int64 residues.
struct ModP {
  using Elem = std::int64_t;
  std::int64_t p;
  Elem from(const Number &x) const { return x.residue(); }
  Number to(Elem x) const { return Number(Domain::prime_field, static_cast<int>(p), static_cast<long>(x)); }
  bool zero(Elem x) const { return x == 0; }
  Elem inv(Elem x) const {
    Elem r = 1, b = x, e = p - 2;
    while (e > 0) {
      if (e & 1)
        r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  Elem mul(Elem a, Elem b) const { return a * b % p; }
  Elem sub(Elem a, Elem b) const {
    Elem r = a - b;
    return r < 0 ? r + p : r;
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
};

struct Rational {
  using Elem = mpq_class;
  Elem from(const Number &x) const { return x.to_rational(); }
  Number to(const Elem &x) const { return Number::from_rational(Domain::rational, 0, x); }
  bool zero(const Elem &x) const { return sgn(x) == 0; }
  Elem inv(const Elem &x) const { return 1 / x; }
  Elem mul(const Elem &a, const Elem &b) const { return a * b; }
  Elem sub(const Elem &a, const Elem &b) const { return a - b; }
  Elem neg(const Elem &a) const { return -a; }
};

template <class F>
std::pair<std::vector<std::vector<typename F::Elem>>, std::vector<int>> rref(const F &f,
                                                                             std::vector<std::vector<typename F::Elem>> a,
                                                                             int cols) {
  std::vector<int> pivots;
  int r = 0;
  const int rows = static_cast<int>(a.size());
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!f.zero(a[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0)
      continue;
    std::swap(a[r], a[piv]);
    const auto inv = f.inv(a[r][c]);
    for (int j = c; j < cols; ++j)
      a[r][j] = f.mul(a[r][j], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || f.zero(a[i][c]))
        continue;
      const auto factor = a[i][c];
      for (int j = c; j < cols; ++j)
        if (!f.zero(a[r][j]))
          a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(static_cast<std::size_t>(r));
  return {std::move(a), std::move(pivots)};
}

template <class F> RowEchelon rref_matrix(const F &f, const FieldMatrix &m, bool reverse) {
  const int n = m.cols();
  std::vector<std::vector<typename F::Elem>> a(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    a[i].reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      a[i].push_back(f.from(m.at(i, reverse ? n - 1 - j : j)));
  }
  auto [rows, pivots] = rref(f, std::move(a), n);
  FieldMatrix out(m.domain(), m.prime(), static_cast<int>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < n; ++j)
      if (!f.zero(rows[i][j]))
        out.set(static_cast<int>(i), reverse ? n - 1 - j : j, f.to(rows[i][j]));
  if (reverse)
    for (int &pc : pivots)
      pc = n - 1 - pc;
  return {std::move(out), std::move(pivots)};
}

template <class F> NullSpace null_space_impl(const F &f, const FieldMatrix &m) {
  // RREF with the column order reversed: each free column then yields a
  // kernel vector whose first nonzero entry (in the original order) sits at
  // that free column.
  const int n = m.cols();
  const RowEchelon e = rref_matrix(f, m, true);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int pc : e.pivots)
    is_pivot[pc] = true;
  std::vector<int> leading;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j])
      leading.push_back(j);
  FieldMatrix basis(m.domain(), m.prime(), static_cast<int>(leading.size()), n);
  const Number one(m.domain(), m.prime(), 1);
  for (std::size_t k = 0; k < leading.size(); ++k) {
    const int j = leading[k];
    basis.set(static_cast<int>(k), j, one);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      const Number &x = e.reduced.at(static_cast<int>(i), j);
      if (!x.is_zero())
        basis.set(static_cast<int>(k), e.pivots[i], -x);
    }
  }
  return {std::move(basis), std::move(leading)};
}

} // namespace

RowEchelon reduced_row_echelon(const FieldMatrix &m) {
  if (m.domain() == Domain::prime_field)
    return rref_matrix(ModP{m.prime()}, m, false);
  return rref_matrix(Rational{}, m, false);
}

NullSpace null_space(const FieldMatrix &m) {
  if (m.domain() == Domain::prime_field)
    return null_space_impl(ModP{m.prime()}, m);
  return null_space_impl(Rational{}, m);
}

} // namespace gkmcoh
