#pragma once

// Shipped local n-pseudofields: the affine line, the Moebius-type line
// (n = 3), the semidirect product R* x| R^{n-1} matching GL_n, and the
// Mikhailichenko variant with a different phi_n.

#include "pseudofield/core_algebra.hpp"
#include "pseudofield/linalg.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pseudofield {

enum class InstanceKind { Affine2, Moebius3, Semidirect, Mikhailichenko };

inline std::string_view to_string(InstanceKind kind)
{
  switch (kind) {
  case InstanceKind::Affine2:
    return "affine2";
  case InstanceKind::Moebius3:
    return "moebius3";
  case InstanceKind::Semidirect:
    return "semidirect";
  case InstanceKind::Mikhailichenko:
    return "mikhailichenko";
  }
  return "unknown";
}

inline std::optional<InstanceKind> parse_instance_name(std::string_view name)
{
  for (auto kind : {InstanceKind::Affine2, InstanceKind::Moebius3, InstanceKind::Semidirect,
                    InstanceKind::Mikhailichenko})
    if (to_string(kind) == name)
      return kind;
  return std::nullopt;
}

/// Semidirect and Mikhailichenko take n as a parameter; the other two have a fixed degree.
inline bool parameterized(InstanceKind kind)
{
  return kind == InstanceKind::Semidirect || kind == InstanceKind::Mikhailichenko;
}

struct InstanceDescriptor {
  InstanceKind kind = InstanceKind::Affine2;
  int n = 2;

  static InstanceDescriptor affine2() { return {InstanceKind::Affine2, 2}; }
  static InstanceDescriptor moebius3() { return {InstanceKind::Moebius3, 3}; }
  static InstanceDescriptor semidirect(int n) { return {InstanceKind::Semidirect, n}; }
  static InstanceDescriptor mikhailichenko(int n) { return {InstanceKind::Mikhailichenko, n}; }
};

namespace detail {

template <typename S>
Partial<S> divide(const S& num, const S& den, Undefined reason = Undefined::SingularDenominator)
{
  if (ScalarTraits<S>::is_pole(den))
    return reason;
  return S(num / den);
}

template <typename S>
PseudofieldInstance<S> make_affine2()
{
  using T = ScalarTraits<S>;
  using E = Element<S>;
  PseudofieldInstance<S> inst;
  inst.name = "affine2";
  inst.n = 2;
  inst.dim = 1;
  inst.commutative = true;
  inst.mul = [](const E& a, const E& b) -> Partial<E> { return E{S(a[0] * b[0])}; };
  inst.inv = [](const E& a) -> Partial<E> {
    return divide(T::from_int(1), a[0], Undefined::NotInvertible).transform([](const S& v) { return E{v}; });
  };
  inst.phi = [](int, const E& a) -> Partial<E> { return E{S(T::from_int(1) - a[0])}; };
  inst.units = {E{T::from_int(1)}, E{T::from_int(0)}};
  inst.reference_action = [](const E& x, const Tuple<S>& ys) -> Partial<E> {
    if (ys.size() != 2)
      throw std::invalid_argument("affine2 reference action takes a pair");
    return E{S(x[0] * (ys[0][0] - ys[1][0]) + ys[1][0])};
  };
  return inst;
}

template <typename S>
PseudofieldInstance<S> make_moebius3()
{
  using T = ScalarTraits<S>;
  using E = Element<S>;
  PseudofieldInstance<S> inst;
  inst.name = "moebius3";
  inst.n = 3;
  inst.dim = 1;
  inst.commutative = true;
  auto wrap = [](const S& v) { return E{v}; };
  inst.mul = [wrap](const E& a, const E& b) -> Partial<E> {
    const S& x = a[0];
    const S& y = b[0];
    return divide(S(2 * x * y), S(1 + x + y - x * y)).transform(wrap);
  };
  // x^{-1} = (x + 1) / (3x - 1). The points 0 and -1 correspond to 0 and
  // infinity of the multiplicative model and have no inverse.
  inst.inv = [wrap](const E& a) -> Partial<E> {
    const S& x = a[0];
    if (T::is_pole(x) || T::is_pole(S(x + 1)))
      return Undefined::NotInvertible;
    return divide(S(x + 1), S(3 * x - 1)).transform(wrap);
  };
  inst.phi = [wrap](int i, const E& a) -> Partial<E> {
    const S& x = a[0];
    if (i == 2)
      return divide(S(1 - x), S(1 + 3 * x)).transform(wrap);
    return E{S(-x)};
  };
  inst.units = {E{T::from_int(1)}, E{T::from_int(0)}, E{T::from_int(-1)}};
  inst.reference_action = [wrap](const E& xe, const Tuple<S>& ys) -> Partial<E> {
    if (ys.size() != 3)
      throw std::invalid_argument("moebius3 reference action takes a triple");
    const S& x = xe[0];
    const S& y1 = ys[0][0];
    const S& y2 = ys[1][0];
    const S& y3 = ys[2][0];
    S num = x * (2 * y1 * y3 - y2 * (y1 + y3)) + y2 * (y3 - y1);
    S den = x * (y1 - 2 * y2 + y3) + y3 - y1;
    return divide(num, den).transform(wrap);
  };
  return inst;
}

// Common part of the semidirect and Mikhailichenko instances:
// (a_1, ..., a_n)(b_1, ..., b_n) = (a_1 b_1, a_1 b_2 + a_2, ..., a_1 b_n + a_n).
template <typename S>
PseudofieldInstance<S> make_row_group(int n, std::string name)
{
  using T = ScalarTraits<S>;
  using E = Element<S>;
  const auto dim = static_cast<std::size_t>(n);
  PseudofieldInstance<S> inst;
  inst.name = std::move(name);
  inst.n = n;
  inst.dim = dim;
  inst.mul = [dim](const E& a, const E& b) -> Partial<E> {
    std::vector<S> out(dim);
    out[0] = a[0] * b[0];
    for (std::size_t k = 1; k < dim; ++k)
      out[k] = a[0] * b[k] + a[k];
    return E(std::move(out));
  };
  inst.inv = [dim](const E& a) -> Partial<E> {
    if (T::is_pole(a[0]))
      return Undefined::NotInvertible;
    std::vector<S> out(dim);
    out[0] = T::from_int(1) / a[0];
    for (std::size_t k = 1; k < dim; ++k)
      out[k] = -a[k] / a[0];
    return E(std::move(out));
  };
  // Transposition of coordinates 1 and i.
  inst.phi = [](int i, const E& a) -> Partial<E> {
    E out = a;
    std::swap(out[0], out[static_cast<std::size_t>(i - 1)]);
    return out;
  };
  return inst;
}

template <typename S>
void fill_units(PseudofieldInstance<S>& inst)
{
  using T = ScalarTraits<S>;
  std::vector<S> e(inst.dim, T::from_int(0));
  e[0] = T::from_int(1);
  inst.units = {Element<S>(e)};
  for (int i = 2; i <= inst.n; ++i)
    inst.units.push_back(inst.phi(i, inst.units[0]).value());
}

template <typename S>
PseudofieldInstance<S> make_semidirect(int n)
{
  auto inst = make_row_group<S>(n, "semidirect");
  fill_units(inst);
  inst.reference_action = [](const Element<S>& x, const Tuple<S>& ys) -> Partial<Element<S>> {
    // Row vector x times the matrix with rows ys.
    std::vector<S> out(x.dim(), ScalarTraits<S>::from_int(0));
    for (std::size_t j = 0; j < ys.size(); ++j)
      for (std::size_t c = 0; c < out.size(); ++c)
        out[c] += x[j] * ys[j][c];
    return Element<S>(std::move(out));
  };
  inst.solver = [](const Tuple<S>& from, const Tuple<S>& to) -> Partial<Tuple<S>> {
    return linalg::solve(linalg::rows_of(from), linalg::rows_of(to)).transform([](const linalg::Matrix<S>& m) {
      return linalg::tuple_of(m);
    });
  };
  return inst;
}

template <typename S>
PseudofieldInstance<S> make_mikhailichenko(int n)
{
  using T = ScalarTraits<S>;
  auto inst = make_row_group<S>(n, "mikhailichenko");
  auto swap_phi = inst.phi;
  const auto last = static_cast<std::size_t>(n - 1);
  // phi_n(x) = (1 - x_1 - ... - x_{n-1}, x_2, ..., x_n).
  inst.phi = [swap_phi, n, last](int i, const Element<S>& a) -> Partial<Element<S>> {
    if (i != n)
      return swap_phi(i, a);
    Element<S> out = a;
    S head = T::from_int(1);
    for (std::size_t k = 0; k < last; ++k)
      head -= a[k];
    out[0] = head;
    return out;
  };
  fill_units(inst);
  return inst;
}

} // namespace detail

/// Throws std::invalid_argument when n does not fit the kind.
template <typename S>
PseudofieldInstance<S> make_instance(const InstanceDescriptor& desc)
{
  switch (desc.kind) {
  case InstanceKind::Affine2:
    if (desc.n != 2)
      throw std::invalid_argument("affine2 has degree 2");
    return detail::make_affine2<S>();
  case InstanceKind::Moebius3:
    if (desc.n != 3)
      throw std::invalid_argument("moebius3 has degree 3");
    return detail::make_moebius3<S>();
  case InstanceKind::Semidirect:
  case InstanceKind::Mikhailichenko:
    if (desc.n < 2)
      throw std::invalid_argument(std::string(to_string(desc.kind)) + " needs n >= 2");
    return desc.kind == InstanceKind::Semidirect ? detail::make_semidirect<S>(desc.n)
                                                 : detail::make_mikhailichenko<S>(desc.n);
  }
  throw std::invalid_argument("unknown instance kind");
}

/// Negative control: real multiplication with phi_2(x) = 2 - x. The
/// involution holds but the main equation does not.
template <typename S>
PseudofieldInstance<S> make_adversarial()
{
  auto inst = detail::make_affine2<S>();
  inst.name = "adversarial";
  inst.commutative = true;
  inst.phi = [](int, const Element<S>& a) -> Partial<Element<S>> {
    return Element<S>{S(ScalarTraits<S>::from_int(2) - a[0])};
  };
  inst.units = {inst.units[0], inst.phi(2, inst.units[0]).value()};
  inst.reference_action = nullptr;
  return inst;
}

} // namespace pseudofield
