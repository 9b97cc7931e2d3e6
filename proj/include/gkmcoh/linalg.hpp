#pragma once

// Dense linear algebra over Q or F_p on Number entries.

#include <vector>

#include "gkmcoh/scalar.hpp"

namespace gkmcoh {

class FieldMatrix {
public:
  FieldMatrix(Domain domain, int p, int rows, int cols);

  [[nodiscard]] Domain domain() const { return domain_; }
  [[nodiscard]] int prime() const { return p_; }
  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] const Number &at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, const Number &x);
  void append_zero_rows(int count);

private:
  Domain domain_;
  int p_;
  int rows_;
  int cols_;
  std::vector<Number> data_;
};

struct RowEchelon {
  FieldMatrix reduced; // nonzero rows of the reduced row echelon form
  std::vector<int> pivots;
};

RowEchelon reduced_row_echelon(const FieldMatrix &m);

/// Basis of {x : m x = 0} as rows, in reduced echelon form with respect to
/// the leading (first nonzero) column; leading entries are 1 and rows are
/// sorted by leading column.
struct NullSpace {
  FieldMatrix basis;
  std::vector<int> leading;
};

NullSpace null_space(const FieldMatrix &m);

} // namespace gkmcoh
