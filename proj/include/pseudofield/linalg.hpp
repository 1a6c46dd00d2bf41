#pragma once

// Dense Gaussian elimination over double or exact rationals. Matrices are
// row lists; a Tuple of n carrier points of dimension n is read row-wise.

#include "pseudofield/element.hpp"
#include "pseudofield/partial.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace pseudofield {

namespace linalg {

template <typename S>
using Matrix = std::vector<std::vector<S>>;

template <typename S>
Matrix<S> rows_of(const Tuple<S>& xs)
{
  Matrix<S> m;
  m.reserve(xs.size());
  for (const auto& x : xs)
    m.emplace_back(x.begin(), x.end());
  return m;
}

template <typename S>
Tuple<S> tuple_of(const Matrix<S>& m)
{
  Tuple<S> out;
  out.reserve(m.size());
  for (const auto& row : m)
    out.emplace_back(row);
  return out;
}

// Row-echelon pivot choice: largest magnitude for doubles, first nonzero for rationals.
template <typename S>
std::optional<std::size_t> pick_pivot(const Matrix<S>& a, std::size_t col)
{
  std::optional<std::size_t> best;
  for (std::size_t r = col; r < a.size(); ++r) {
    if constexpr (ScalarTraits<S>::exact) {
      if (a[r][col] != 0)
        return r;
    } else {
      if (!best || std::abs(a[r][col]) > std::abs(a[*best][col]))
        best = r;
    }
  }
  if (best && ScalarTraits<S>::is_pole(a[*best][col]))
    return std::nullopt;
  return best;
}

/// Solves A Z = B for square A by Gaussian elimination; undefined when A is
/// singular (a pivot below the singularity guard in float mode).
template <typename S>
Partial<Matrix<S>> solve(Matrix<S> a, Matrix<S> b)
{
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    auto p = pick_pivot(a, col);
    if (!p)
      return Undefined::NotInvertible;
    std::swap(a[col], a[*p]);
    std::swap(b[col], b[*p]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (ScalarTraits<S>::is_zero(a[r][col]))
        continue;
      S f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c)
        a[r][c] -= f * a[col][c];
      for (std::size_t c = 0; c < b[r].size(); ++c)
        b[r][c] -= f * b[col][c];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t c = 0; c < b[r].size(); ++c) {
      S acc = b[r][c];
      for (std::size_t k = r + 1; k < n; ++k)
        acc -= a[r][k] * b[k][c];
      b[r][c] = acc / a[r][r];
    }
  }
  return b;
}

template <typename S>
S determinant(Matrix<S> a)
{
  const std::size_t n = a.size();
  S det = ScalarTraits<S>::from_int(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    for (std::size_t r = col; r < n; ++r) {
      if constexpr (ScalarTraits<S>::exact) {
        if (a[r][col] != 0) {
          p = r;
          break;
        }
      } else if (std::abs(a[r][col]) > std::abs(a[p][col])) {
        p = r;
      }
    }
    if (ScalarTraits<S>::is_zero(a[p][col]))
      return ScalarTraits<S>::from_int(0);
    if (p != col) {
      std::swap(a[p], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      S f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c)
        a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

} // namespace linalg

} // namespace pseudofield
