#pragma once

// The local group on G^n: X Y = (x_1 . Y, ..., x_n . Y), its left unit
// (e, e_2, ..., e_n) and the recursive inverse.

#include "pseudofield/word_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>
#include <stdexcept>

namespace pseudofield {

template <typename S>
Tuple<S> gidentity(const PseudofieldInstance<S>& inst)
{
  return Tuple<S>(inst.units.begin(), inst.units.begin() + inst.n);
}

template <typename S>
Partial<Tuple<S>> gmul(const PseudofieldInstance<S>& inst, const Tuple<S>& X, const Tuple<S>& Y)
{
  if (X.size() != Y.size())
    throw std::invalid_argument("gmul: tuples of different length");
  detail::require_degree(inst, X.size());
  // The normal-form word of Y is shared by all components; act covers the
  // points where it is undefined.
  const auto word = evaluation_word(inst, std::span<const Element<S>>(Y));
  Tuple<S> out;
  out.reserve(X.size());
  for (const auto& x : X) {
    auto v = word ? eval_word(inst, x, *word) : Partial<Element<S>>(word.reason());
    if (!v)
      v = act(inst, x, Y);
    if (!v)
      return v.reason();
    out.push_back(std::move(v).value());
  }
  return out;
}

template <typename S>
Partial<Tuple<S>> gmul(const PseudofieldInstance<S>& inst, const Partial<Tuple<S>>& X, const Partial<Tuple<S>>& Y)
{
  if (!X)
    return X.reason();
  if (!Y)
    return Y.reason();
  return gmul(inst, *X, *Y);
}

/// x -> (x, e_2, ..., e_n): G as the stabilizer of (e_2, ..., e_n).
template <typename S>
Tuple<S> embed_stabilizer(const PseudofieldInstance<S>& inst, const Element<S>& x)
{
  detail::require_dim(inst, x);
  Tuple<S> out = gidentity(inst);
  out[0] = x;
  return out;
}

/// Two entries of the tuple coincide (no unique group element maps to or from it).
template <typename S>
bool degenerate(std::span<const Element<S>> xs)
{
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a + 1; b < xs.size(); ++b)
      if (same_point(xs[a], xs[b]))
        return true;
  return false;
}

namespace detail {

template <typename S>
Partial<Tuple<S>> ginv_impl(const PseudofieldInstance<S>& inst, std::span<const Element<S>> X, bool allow_conjugate);

template <typename S>
Partial<Tuple<S>> ginv_pivoted(const PseudofieldInstance<S>& inst, std::span<const Element<S>> X);


// phi_k(x_k^{-1}) . [stage(X)]^{-1}: the first component of the inverse.
template <typename S>
Partial<Element<S>> inverse_head(const PseudofieldInstance<S>& inst, std::span<const Element<S>> Z, bool pivoted)
{
  const int k = static_cast<int>(Z.size());
  PSEUDOFIELD_ASSIGN_OR_RETURN(last_inv, inv(inst, Z.back()));
  PSEUDOFIELD_ASSIGN_OR_RETURN(start, phi(inst, k, last_inv));
  PSEUDOFIELD_ASSIGN_OR_RETURN(stage, stage_tuple(inst, Z));
  const std::span<const Element<S>> st(stage);
  PSEUDOFIELD_ASSIGN_OR_RETURN(stage_inv, pivoted ? ginv_pivoted(inst, st) : ginv_impl(inst, st, true));
  return act_impl(inst, start, std::span<const Element<S>>(stage_inv), ActPolicy{});
}

template <typename S>
Partial<Tuple<S>> ginv_impl(const PseudofieldInstance<S>& inst, std::span<const Element<S>> X, bool allow_conjugate)
{
  const std::size_t k = X.size();
  if (degenerate(X))
    return Undefined::OutOfDomain;
  if (k == 1) {
    PSEUDOFIELD_ASSIGN_OR_RETURN(v, inv(inst, X[0]));
    return Tuple<S>{std::move(v)};
  }

  Undefined reason = Undefined::OutOfDomain;
  {
    auto attempt = [&]() -> Partial<Tuple<S>> {
      Tuple<S> out;
      PSEUDOFIELD_ASSIGN_OR_RETURN(head, inverse_head(inst, X, false));
      out.push_back(std::move(head));
      for (int i = 2; i <= static_cast<int>(k); ++i) {
        PSEUDOFIELD_ASSIGN_OR_RETURN(conj, conjugate_tuple(inst, i, X));
        PSEUDOFIELD_ASSIGN_OR_RETURN(v, phi(inst, i, inverse_head(inst, std::span<const Element<S>>(conj), false)));
        out.push_back(std::move(v));
      }
      return out;
    };
    auto direct = attempt();
    if (direct)
      return direct;
    reason = direct.reason();
  }

  const int degree = static_cast<int>(k);
  if (same_point(X[k - 1], unit(inst, degree))) {
    if (auto head = ginv_impl(inst, X.first(k - 1), true)) {
      Tuple<S> out = std::move(head).value();
      out.push_back(unit(inst, degree));
      return out;
    }
  }

  if (allow_conjugate) {
    for (int i = 2; i <= degree; ++i) {
      auto conj = conjugate_tuple(inst, i, X);
      if (!conj)
        continue;
      auto inner = ginv_impl(inst, std::span<const Element<S>>(*conj), false);
      if (!inner)
        continue;
      if (auto back = conjugate_tuple(inst, i, std::span<const Element<S>>(*inner)))
        return back;
    }
  }
  return reason;
}

// v . E_rk for the element E_rk exchanging e_r and e_k (r <= k): phi_k when
// r = 1, sigma_rk otherwise.
template <typename S>
Partial<Element<S>> exchange_image(const PseudofieldInstance<S>& inst, int r, int k, const Element<S>& v)
{
  if (r == k)
    return v;
  if (r == 1)
    return phi(inst, k, v);
  return sigma(inst, r, k, v);
}

// Component c of X^{-1} is the first component of (X E_1c)^{-1}, and
// X E_1c applies phi_c entrywise. For a row permutation P = E_rk,
// X^{-1} = (P X)^{-1} P, and right multiplication by E_rk is exchange_image.
// Each component therefore moves the entry with the smallest inverse to the
// last position, where the formula divides by it (partial pivoting).
template <typename S>
Partial<Tuple<S>> ginv_pivoted(const PseudofieldInstance<S>& inst, std::span<const Element<S>> X)
{
  const std::size_t k = X.size();
  const int degree = static_cast<int>(k);
  if (degenerate(X))
    return Undefined::OutOfDomain;
  if (k == 1) {
    PSEUDOFIELD_ASSIGN_OR_RETURN(v, inv(inst, X[0]));
    return Tuple<S>{std::move(v)};
  }

  Tuple<S> out;
  out.reserve(k);
  for (int c = 1; c <= degree; ++c) {
    Tuple<S> Y(X.begin(), X.end());
    if (c > 1) {
      for (auto& y : Y) {
        PSEUDOFIELD_ASSIGN_OR_RETURN(v, phi(inst, c, y));
        y = std::move(v);
      }
    }
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t r = 0; r < k; ++r) {
      if (auto yi = inv(inst, Y[r])) {
        double growth = 0.0;
        for (const auto& coord : *yi)
          growth = std::max(growth, std::abs(ScalarTraits<S>::to_double(coord)));
        order.emplace_back(growth, r);
      }
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::optional<Element<S>> value;
    for (const auto& [growth, r] : order) {
      Tuple<S> Z = Y;
      std::swap(Z[r], Z[k - 1]);
      auto head = inverse_head(inst, std::span<const Element<S>>(Z), true);
      if (!head)
        continue;
      if (auto mapped = exchange_image(inst, static_cast<int>(r) + 1, degree, *head)) {
        value = std::move(mapped).value();
        break;
      }
    }
    if (!value)
      return Undefined::OutOfDomain;
    out.push_back(std::move(*value));
  }
  return out;
}

} // namespace detail

/// Left inverse in G^n. Degree 1 is the inverse in G; degree k uses the
/// inverse of the stage tuple at degree k-1 over the same carrier. Tuples
/// with coinciding entries are undefined. Float mode evaluates the same
/// formula with pivoting (see detail::ginv_pivoted) and falls back to the
/// plain evaluation where the pivoted one is undefined.
template <typename S>
Partial<Tuple<S>> ginv(const PseudofieldInstance<S>& inst, const Tuple<S>& X)
{
  detail::require_degree(inst, X.size());
  for (const auto& x : X)
    detail::require_dim(inst, x);
  const std::span<const Element<S>> xs(X);
  if constexpr (!ScalarTraits<S>::exact) {
    if (auto pivoted = detail::ginv_pivoted(inst, xs))
      return pivoted;
  }
  return detail::ginv_impl(inst, xs, true);
}

template <typename S>
Partial<Tuple<S>> ginv(const PseudofieldInstance<S>& inst, const Partial<Tuple<S>>& X)
{
  return X.and_then([&](const Tuple<S>& t) { return ginv(inst, t); });
}

} // namespace pseudofield
