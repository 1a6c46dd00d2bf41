#pragma once

#include "pseudofield/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pseudofield {

/// A point of the carrier set: a fixed-length coordinate vector.
template <typename S>
class Element {
public:
  using scalar_type = S;

  Element() = default;
  explicit Element(std::vector<S> coords) : coords_(std::move(coords)) {}
  Element(std::initializer_list<S> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const S& operator[](std::size_t k) const { return coords_[k]; }
  S& operator[](std::size_t k) { return coords_[k]; }

  std::span<const S> coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  friend bool operator==(const Element&, const Element&) = default;

private:
  std::vector<S> coords_;
};

/// An ordered n-tuple of carrier points: an element of G^n.
template <typename S>
using Tuple = std::vector<Element<S>>;

template <typename S>
Element<S> scalar_element(const S& v)
{
  return Element<S>{v};
}

template <typename S>
std::string to_string(const Element<S>& x)
{
  std::string out;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    if (k)
      out += ',';
    out += ScalarTraits<S>::to_string(x[k]);
  }
  return out;
}

template <typename S>
std::string to_string(const Tuple<S>& xs)
{
  std::string out;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j)
      out += ',';
    out += to_string(xs[j]);
  }
  return out;
}

/// Row-major flattening used by the CLI and the Newton solver.
template <typename S>
std::vector<S> flatten(const Tuple<S>& xs)
{
  std::vector<S> out;
  for (const auto& x : xs)
    out.insert(out.end(), x.begin(), x.end());
  return out;
}

template <typename S>
Tuple<S> unflatten(std::span<const S> flat, std::size_t dim)
{
  Tuple<S> out;
  for (std::size_t off = 0; off + dim <= flat.size(); off += dim)
    out.emplace_back(std::vector<S>(flat.begin() + static_cast<std::ptrdiff_t>(off),
                                    flat.begin() + static_cast<std::ptrdiff_t>(off + dim)));
  return out;
}

/// Relative difference with floor, scaled by the element's max-norm:
/// max_k |a_k - b_k| / max(|a|_inf, |b|_inf, kAbsFloor / kRelTolerance).
/// Exactly 0 iff the elements are equal in rational mode.
template <typename S>
double residual(const Element<S>& a, const Element<S>& b)
{
  constexpr double floor_scale = kAbsFloor / kRelTolerance;
  if (a.dim() != b.dim())
    return HUGE_VAL;
  if constexpr (ScalarTraits<S>::exact) {
    if (a == b)
      return 0.0;
    Rational diff = 0;
    Rational scale = floor_scale;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      diff = std::max(diff, Rational(abs(Rational(a[k] - b[k]))));
      scale = std::max({scale, Rational(abs(a[k])), Rational(abs(b[k]))});
    }
    double r = Rational(diff / scale).get_d();
    // A nonzero exact difference must never read as zero.
    return r > 0.0 ? r : 1e-300;
  } else {
    double diff = 0.0;
    double scale = floor_scale;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const double d = std::abs(a[k] - b[k]);
      if (std::isnan(d))
        return HUGE_VAL;
      diff = std::max(diff, d);
      scale = std::max({scale, std::abs(a[k]), std::abs(b[k])});
    }
    return diff / scale;
  }
}

/// Normwise over all coordinates of the tuple, as for a matrix.
template <typename S>
double residual(const Tuple<S>& a, const Tuple<S>& b)
{
  if (a.size() != b.size())
    return HUGE_VAL;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j].dim() != b[j].dim())
      return HUGE_VAL;
  return residual(Element<S>(flatten(a)), Element<S>(flatten(b)));
}

/// Equality used for structural tests such as "y_n equals e_n": exact for
/// rationals, relative tolerance kRelTolerance for doubles.
template <typename S>
bool same_point(const Element<S>& a, const Element<S>& b)
{
  if constexpr (ScalarTraits<S>::exact)
    return a == b;
  else
    return residual(a, b) <= kRelTolerance;
}

} // namespace pseudofield
