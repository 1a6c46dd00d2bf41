#pragma once

// Partial-operation contract of a local n-pseudofield <G; ., E, phi_2..phi_n, e>
// and the operations derived from the primitive ones.

#include "pseudofield/element.hpp"
#include "pseudofield/partial.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pseudofield {

template <typename S>
struct PseudofieldInstance {
  using Elem = Element<S>;
  using Result = Partial<Elem>;

  std::string name;
  int n = 2;
  std::size_t dim = 1;

  std::function<Result(const Elem&, const Elem&)> mul;
  std::function<Result(const Elem&)> inv;
  /// phi(i, x) for 2 <= i <= n.
  std::function<Result(int, const Elem&)> phi;

  /// units[0] = e, units[i-1] = e_i = phi_i(e).
  std::vector<Elem> units;

  /// Closed-form action x -> x.[y_1..y_n], when the instance has one.
  std::function<Result(const Elem&, const Tuple<S>&)> reference_action;
  /// Instance-provided solve of X.g = Y for g in G^n, when available.
  std::function<Partial<Tuple<S>>(const Tuple<S>&, const Tuple<S>&)> solver;

  /// The group (G_1, .) is commutative; the classical field-type checks apply.
  bool commutative = false;
};

namespace detail {

template <typename S>
void require_phi_index(const PseudofieldInstance<S>& inst, int i)
{
  if (i < 2 || i > inst.n)
    throw std::out_of_range("phi index " + std::to_string(i) + " outside 2.." + std::to_string(inst.n) +
                            " for instance " + inst.name);
}

template <typename S>
void require_dim(const PseudofieldInstance<S>& inst, const Element<S>& x)
{
  if (x.dim() != inst.dim)
    throw std::invalid_argument("element of dimension " + std::to_string(x.dim()) + " given to instance " +
                                inst.name + " of dimension " + std::to_string(inst.dim));
}

} // namespace detail

template <typename S>
Partial<Element<S>> mul(const PseudofieldInstance<S>& inst, const Element<S>& a, const Element<S>& b)
{
  detail::require_dim(inst, a);
  detail::require_dim(inst, b);
  return inst.mul(a, b);
}

template <typename S>
Partial<Element<S>> inv(const PseudofieldInstance<S>& inst, const Element<S>& a)
{
  detail::require_dim(inst, a);
  return inst.inv(a);
}

template <typename S>
Partial<Element<S>> phi(const PseudofieldInstance<S>& inst, int i, const Element<S>& a)
{
  detail::require_phi_index(inst, i);
  detail::require_dim(inst, a);
  return inst.phi(i, a);
}

// Overloads on Partial arguments: an undefined input is returned unchanged.

template <typename S>
Partial<Element<S>> mul(const PseudofieldInstance<S>& inst, const Partial<Element<S>>& a,
                        const Partial<Element<S>>& b)
{
  if (!a)
    return a.reason();
  if (!b)
    return b.reason();
  return mul(inst, *a, *b);
}

template <typename S>
Partial<Element<S>> inv(const PseudofieldInstance<S>& inst, const Partial<Element<S>>& a)
{
  return a.and_then([&](const Element<S>& x) { return inv(inst, x); });
}

template <typename S>
Partial<Element<S>> phi(const PseudofieldInstance<S>& inst, int i, const Partial<Element<S>>& a)
{
  detail::require_phi_index(inst, i);
  return a.and_then([&](const Element<S>& x) { return phi(inst, i, x); });
}

/// e for i = 1, e_i = phi_i(e) otherwise.
template <typename S>
const Element<S>& unit(const PseudofieldInstance<S>& inst, int i)
{
  if (i < 1 || i > inst.n)
    throw std::out_of_range("unit index " + std::to_string(i) + " outside 1.." + std::to_string(inst.n));
  return inst.units[static_cast<std::size_t>(i - 1)];
}

/// a ._i b = phi_i(phi_i(a) phi_i(b)).
template <typename S>
Partial<Element<S>> mul_i_conjugate(const PseudofieldInstance<S>& inst, int i, const Element<S>& a, const Element<S>& b)
{
  detail::require_phi_index(inst, i);
  return phi(inst, i, mul(inst, phi(inst, i, a), phi(inst, i, b)));
}

/// The second form of the same product: phi_i(a phi_i(b^{-1})) b.
template <typename S>
Partial<Element<S>> mul_i_alt(const PseudofieldInstance<S>& inst, int i, const Element<S>& a,
                              const Element<S>& b)
{
  detail::require_phi_index(inst, i);
  auto inner = mul(inst, Partial<Element<S>>(a), phi(inst, i, inv(inst, b)));
  return mul(inst, phi(inst, i, inner), Partial<Element<S>>(b));
}

/// Product in G_i: the conjugate form when defined, the second form otherwise.
template <typename S>
Partial<Element<S>> mul_i(const PseudofieldInstance<S>& inst, int i, const Element<S>& a, const Element<S>& b)
{
  auto direct = mul_i_conjugate(inst, i, a, b);
  if (direct)
    return direct;
  auto alt = mul_i_alt(inst, i, a, b);
  return alt ? alt : direct;
}

/// Inverse in G_i: E_i = phi_i E phi_i.
template <typename S>
Partial<Element<S>> inv_i(const PseudofieldInstance<S>& inst, int i, const Element<S>& a)
{
  return phi(inst, i, inv(inst, phi(inst, i, a)));
}

/// sigma_ij = phi_j phi_i phi_j, for distinct i, j in 2..n.
template <typename S>
Partial<Element<S>> sigma(const PseudofieldInstance<S>& inst, int i, int j, const Element<S>& a)
{
  detail::require_phi_index(inst, i);
  detail::require_phi_index(inst, j);
  if (i == j)
    throw std::invalid_argument("sigma requires distinct indices");
  return phi(inst, j, phi(inst, i, phi(inst, j, a)));
}

template <typename S>
Partial<Element<S>> sigma(const PseudofieldInstance<S>& inst, int i, int j, const Partial<Element<S>>& a)
{
  return a.and_then([&](const Element<S>& x) { return sigma(inst, i, j, x); });
}

} // namespace pseudofield
