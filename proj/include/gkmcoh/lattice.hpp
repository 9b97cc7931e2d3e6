#pragma once

// Exact integer linear algebra for torus characters: Smith and Hermite
// normal forms, integer kernels, primitive parts and adapted coordinates.
// Templated over long (overflow-checked) and mpz_class.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gkmcoh {

namespace detail {

inline long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}
inline long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}
inline mpz_class checked_add(const mpz_class &a, const mpz_class &b) { return a + b; }
inline mpz_class checked_mul(const mpz_class &a, const mpz_class &b) { return a * b; }

inline long abs_value(long a) { return a < 0 ? -a : a; }
inline mpz_class abs_value(const mpz_class &a) { return abs(a); }

inline bool is_zero(long a) { return a == 0; }
inline bool is_zero(const mpz_class &a) { return sgn(a) == 0; }

/// Floor division.
template <class Int> Int floor_div(const Int &a, const Int &b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    q -= 1;
  return q;
}

/// g = x*a + y*b with g = gcd(a, b) >= 0.
template <class Int> struct Bezout {
  Int g, x, y;
};

template <class Int> Bezout<Int> extended_gcd(const Int &a, const Int &b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (!is_zero(r)) {
    const Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0)
    return {Int(-old_r), Int(-old_s), Int(-old_t)};
  return {old_r, old_s, old_t};
}

} // namespace detail

template <class Int> class BasicMatrix {
public:
  BasicMatrix() = default;
  BasicMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), Int(0)) {}
  BasicMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (const auto &r : rows) {
      if (static_cast<int>(r.size()) != cols_)
        throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static BasicMatrix identity(int n) {
    BasicMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  Int &operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Int &operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  [[nodiscard]] std::vector<Int> row(int i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
            data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_};
  }
  void append_row(const std::vector<Int> &r) {
    if (rows_ == 0 && cols_ == 0)
      cols_ = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols_)
      throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(int a, int b) {
    if (a == b)
      return;
    for (int j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b)
      return;
    for (int i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  /// (row a, row b) <- (x*a + y*b, z*a + w*b)
  void combine_rows(int a, int b, const Int &x, const Int &y, const Int &z, const Int &w) {
    using detail::checked_add;
    using detail::checked_mul;
    for (int j = 0; j < cols_; ++j) {
      const Int ra = (*this)(a, j), rb = (*this)(b, j);
      (*this)(a, j) = checked_add(checked_mul(x, ra), checked_mul(y, rb));
      (*this)(b, j) = checked_add(checked_mul(z, ra), checked_mul(w, rb));
    }
  }
  void combine_cols(int a, int b, const Int &x, const Int &y, const Int &z, const Int &w) {
    using detail::checked_add;
    using detail::checked_mul;
    for (int i = 0; i < rows_; ++i) {
      const Int ca = (*this)(i, a), cb = (*this)(i, b);
      (*this)(i, a) = checked_add(checked_mul(x, ca), checked_mul(y, cb));
      (*this)(i, b) = checked_add(checked_mul(z, ca), checked_mul(w, cb));
    }
  }

  [[nodiscard]] BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  friend BasicMatrix operator*(const BasicMatrix &a, const BasicMatrix &b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix dimension mismatch");
    BasicMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (detail::is_zero(a(i, k)))
          continue;
        for (int j = 0; j < b.cols_; ++j)
          r(i, j) = detail::checked_add(r(i, j), detail::checked_mul(a(i, k), b(k, j)));
      }
    return r;
  }

  bool operator==(const BasicMatrix &o) const = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

using IntMatrix = BasicMatrix<long>;
using BigMatrix = BasicMatrix<mpz_class>;

template <class Int> struct SmithForm {
  BasicMatrix<Int> U, S, V; // S = U * M * V
  [[nodiscard]] std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (int i = 0; i < std::min(S.rows(), S.cols()); ++i)
      d.push_back(S(i, i));
    return d;
  }
  [[nodiscard]] int rank() const {
    int r = 0;
    for (const auto &x : diagonal())
      r += detail::is_zero(x) ? 0 : 1;
    return r;
  }
};

/// U, V unimodular, S = U*M*V diagonal with nonnegative d_1 | d_2 | ... .
/// Pivots are chosen as the smallest nonzero entry (first in row-major
/// order), which makes the output deterministic.
template <class Int> SmithForm<Int> smith_normal_form(const BasicMatrix<Int> &m) {
  using detail::abs_value;
  using detail::is_zero;
  BasicMatrix<Int> a = m;
  BasicMatrix<Int> u = BasicMatrix<Int>::identity(m.rows());
  BasicMatrix<Int> v = BasicMatrix<Int>::identity(m.cols());
  const int n = std::min(m.rows(), m.cols());
  for (int t = 0; t < n; ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < a.rows(); ++i)
      for (int j = t; j < a.cols(); ++j)
        if (!is_zero(a(i, j)) && (pi < 0 || abs_value(a(i, j)) < abs_value(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0)
      break;
    a.swap_rows(t, pi);
    u.swap_rows(t, pi);
    a.swap_cols(t, pj);
    v.swap_cols(t, pj);
    for (;;) {
      for (int i = t + 1; i < a.rows(); ++i) {
        if (is_zero(a(i, t)))
          continue;
        if (is_zero(a(i, t) % a(t, t))) {
          const Int f = a(i, t) / a(t, t);
          a.combine_rows(t, i, Int(1), Int(0), Int(-f), Int(1));
          u.combine_rows(t, i, Int(1), Int(0), Int(-f), Int(1));
          continue;
        }
        const auto [g, x, y] = detail::extended_gcd(a(t, t), a(i, t));
        const Int p = a(t, t) / g, q = a(i, t) / g;
        a.combine_rows(t, i, x, y, Int(-q), p);
        u.combine_rows(t, i, x, y, Int(-q), p);
      }
      for (int j = t + 1; j < a.cols(); ++j) {
        if (is_zero(a(t, j)))
          continue;
        if (is_zero(a(t, j) % a(t, t))) {
          const Int f = a(t, j) / a(t, t);
          a.combine_cols(t, j, Int(1), Int(0), Int(-f), Int(1));
          v.combine_cols(t, j, Int(1), Int(0), Int(-f), Int(1));
          continue;
        }
        const auto [g, x, y] = detail::extended_gcd(a(t, t), a(t, j));
        const Int p = a(t, t) / g, q = a(t, j) / g;
        a.combine_cols(t, j, x, y, Int(-q), p);
        v.combine_cols(t, j, x, y, Int(-q), p);
      }
      bool column_clear = true;
      for (int i = t + 1; i < a.rows(); ++i)
        column_clear = column_clear && is_zero(a(i, t));
      if (!column_clear)
        continue;
      // divisibility of the remaining block by the pivot
      int bad = -1;
      for (int i = t + 1; i < a.rows() && bad < 0; ++i)
        for (int j = t + 1; j < a.cols(); ++j)
          if (!is_zero(a(i, j) % a(t, t))) {
            bad = i;
            break;
          }
      if (bad < 0)
        break;
      a.combine_rows(t, bad, Int(1), Int(1), Int(0), Int(1));
      u.combine_rows(t, bad, Int(1), Int(1), Int(0), Int(1));
    }
    if (a(t, t) < 0) {
      a.combine_rows(t, t, Int(-1), Int(0), Int(-1), Int(0));
      u.combine_rows(t, t, Int(-1), Int(0), Int(-1), Int(0));
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

template <class Int> struct HermiteForm {
  BasicMatrix<Int> H;       // nonzero rows only
  std::vector<int> pivots;  // pivot column of each row, increasing
};

/// Row-style Hermite normal form of the row lattice of m: positive pivots,
/// entries above a pivot reduced into [0, pivot). Zero rows are dropped.
template <class Int> HermiteForm<Int> hermite_normal_form(const BasicMatrix<Int> &m) {
  using detail::is_zero;
  BasicMatrix<Int> a = m;
  std::vector<int> pivots;
  int pr = 0;
  for (int j = 0; j < a.cols() && pr < a.rows(); ++j) {
    for (int i = pr + 1; i < a.rows(); ++i) {
      if (is_zero(a(i, j)))
        continue;
      if (is_zero(a(pr, j))) {
        a.swap_rows(pr, i);
        continue;
      }
      if (is_zero(a(i, j) % a(pr, j))) {
        const Int f = a(i, j) / a(pr, j);
        a.combine_rows(pr, i, Int(1), Int(0), Int(-f), Int(1));
        continue;
      }
      const auto [g, x, y] = detail::extended_gcd(a(pr, j), a(i, j));
      const Int p = a(pr, j) / g, q = a(i, j) / g;
      a.combine_rows(pr, i, x, y, Int(-q), p);
    }
    if (is_zero(a(pr, j)))
      continue;
    if (a(pr, j) < 0)
      a.combine_rows(pr, pr, Int(-1), Int(0), Int(-1), Int(0));
    for (int i = 0; i < pr; ++i) {
      const Int f = detail::floor_div(a(i, j), a(pr, j));
      if (!is_zero(f))
        a.combine_rows(i, pr, Int(1), Int(-f), Int(0), Int(1));
    }
    pivots.push_back(j);
    ++pr;
  }
  BasicMatrix<Int> h(0, a.cols());
  for (int i = 0; i < pr; ++i)
    h.append_row(a.row(i));
  return {std::move(h), std::move(pivots)};
}

/// Rows form a Z-basis of {x : m * x = 0}.
template <class Int> BasicMatrix<Int> integer_kernel(const BasicMatrix<Int> &m) {
  const int r = m.rows(), c = m.cols();
  BasicMatrix<Int> aug(c, r + c);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < r; ++j)
      aug(i, j) = m(j, i);
    aug(i, r + i) = 1;
  }
  const HermiteForm<Int> hf = hermite_normal_form(aug);
  BasicMatrix<Int> k(0, c);
  for (int i = 0; i < hf.H.rows(); ++i) {
    if (hf.pivots[i] < r)
      continue;
    std::vector<Int> row(static_cast<std::size_t>(c));
    for (int j = 0; j < c; ++j)
      row[j] = hf.H(i, r + j);
    k.append_row(row);
  }
  return k;
}

/// Exact determinant by fraction-free elimination.
template <class Int> Int determinant(const BasicMatrix<Int> &m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant of a non-square matrix");
  BasicMatrix<mpz_class> a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      a(i, j) = mpz_class(m(i, j));
  const int n = m.rows();
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (p < n && a(p, k) == 0)
      ++p;
    if (p == n)
      return Int(0);
    if (p != k) {
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  const mpz_class det = n == 0 ? mpz_class(1) : a(n - 1, n - 1) * sign;
  if constexpr (std::is_same_v<Int, long>)
    return det.get_si();
  else
    return det;
}

// ---------------------------------------------------------------- characters

/// Homomorphism (S^1)^m -> S^1, t |-> prod t_i^{a_i}.
using Character = std::vector<long>;

struct PrimitivePart {
  long multiplicity; // gcd of the entries, > 0
  Character primitive;
};

PrimitivePart primitive_part(const Character &a);

/// Unimodular B with theta * B = (0, ..., 0, 1).
IntMatrix adapted_basis(const Character &theta);

/// Row vector times matrix: the character a in coordinates t = B t'.
Character pull_back(const Character &a, const IntMatrix &b);

long pairing(const Character &a, const std::vector<long> &lambda);
bool is_zero(const Character &a);
std::string to_string(const Character &a);

} // namespace gkmcoh
