#include "gkmcoh/lattice.hpp"

#include <numeric>

namespace gkmcoh {

PrimitivePart primitive_part(const Character &a) {
  long g = 0;
  for (long x : a)
    g = std::gcd(g, x);
  if (g == 0)
    throw std::invalid_argument("primitive part of the zero character");
  Character theta(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    theta[i] = a[i] / g;
  return {g, std::move(theta)};
}

IntMatrix adapted_basis(const Character &theta) {
  const int m = static_cast<int>(theta.size());
  if (m == 0)
    throw std::invalid_argument("adapted basis of an empty character");
  IntMatrix row(1, m);
  for (int j = 0; j < m; ++j)
    row(0, j) = theta[j];
  const SmithForm<long> snf = smith_normal_form(row);
  if (snf.S(0, 0) != 1)
    throw std::invalid_argument("adapted basis needs a primitive character, got " + to_string(theta));
  // theta * V = U^{-1} * (1, 0, ..., 0) with U = (+-1); move the first
  // column of V to the end and fix its sign.
  const long sign = snf.U(0, 0);
  IntMatrix b(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 1; j < m; ++j)
      b(i, j - 1) = snf.V(i, j);
    b(i, m - 1) = sign * snf.V(i, 0);
  }
  return b;
}

Character pull_back(const Character &a, const IntMatrix &b) {
  if (static_cast<int>(a.size()) != b.rows())
    throw std::invalid_argument("character length does not match the coordinate change");
  Character r(static_cast<std::size_t>(b.cols()), 0);
  for (int j = 0; j < b.cols(); ++j)
    for (int i = 0; i < b.rows(); ++i)
      r[j] = detail::checked_add(r[j], detail::checked_mul(a[i], b(i, j)));
  return r;
}

long pairing(const Character &a, const std::vector<long> &lambda) {
  if (a.size() != lambda.size())
    throw std::invalid_argument("pairing of vectors of different lengths");
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s = detail::checked_add(s, detail::checked_mul(a[i], lambda[i]));
  return s;
}

bool is_zero(const Character &a) {
  return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

std::string to_string(const Character &a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

} // namespace gkmcoh
