#pragma once

// Postfix words of unary maps acting on G, the recursive tuple word
// [y_1..y_k] = [phi_k(y_1 y_k^{-1}), ..., phi_k(y_{k-1} y_k^{-1})] phi_k [y_k],
// and the piecewise action x . [y_1..y_n] assembled from its local branches.

#include "pseudofield/core_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace pseudofield {

template <typename S>
struct RightMul {
  Element<S> y;
  friend bool operator==(const RightMul&, const RightMul&) = default;
};

struct Phi {
  int i;
  friend bool operator==(const Phi&, const Phi&) = default;
};

struct Inv {
  friend bool operator==(const Inv&, const Inv&) = default;
};

struct Sigma {
  int i;
  int j;
  friend bool operator==(const Sigma&, const Sigma&) = default;
};

template <typename S>
using Atom = std::variant<RightMul<S>, Phi, Inv, Sigma>;

/// Atoms applied left to right; the empty word is the identity map.
template <typename S>
using Word = std::vector<Atom<S>>;

template <typename S>
Word<S> concat(Word<S> lhs, const Word<S>& rhs)
{
  lhs.insert(lhs.end(), rhs.begin(), rhs.end());
  return lhs;
}

template <typename S>
Partial<Element<S>> apply_atom(const PseudofieldInstance<S>& inst, const Element<S>& x, const Atom<S>& atom)
{
  return std::visit(
      [&](const auto& a) -> Partial<Element<S>> {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, RightMul<S>>)
          return mul(inst, x, a.y);
        else if constexpr (std::is_same_v<A, Phi>)
          return phi(inst, a.i, x);
        else if constexpr (std::is_same_v<A, Inv>)
          return inv(inst, x);
        else
          return sigma(inst, a.i, a.j, x);
      },
      atom);
}

template <typename S>
Partial<Element<S>> eval_word(const PseudofieldInstance<S>& inst, const Element<S>& x, const Word<S>& word)
{
  Element<S> cur = x;
  for (const auto& atom : word) {
    PSEUDOFIELD_ASSIGN_OR_RETURN(next, apply_atom(inst, cur, atom));
    cur = std::move(next);
  }
  return cur;
}

template <typename S>
Partial<Element<S>> eval_word(const PseudofieldInstance<S>& inst, const Partial<Element<S>>& x,
                              const Word<S>& word)
{
  return x.and_then([&](const Element<S>& v) { return eval_word(inst, v, word); });
}

namespace detail {

template <typename S>
void require_degree(const PseudofieldInstance<S>& inst, std::size_t k)
{
  if (k < 1 || k > static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("tuple of length " + std::to_string(k) + " for instance " + inst.name +
                                " of degree " + std::to_string(inst.n));
}

} // namespace detail

/// Stage tuple of degree k-1: (phi_k(y_j y_k^{-1}))_{j<k}.
template <typename S>
Partial<Tuple<S>> stage_tuple(const PseudofieldInstance<S>& inst, std::span<const Element<S>> ys)
{
  const std::size_t k = ys.size();
  const int degree = static_cast<int>(k);
  PSEUDOFIELD_ASSIGN_OR_RETURN(last_inv, inv(inst, ys[k - 1]));
  Tuple<S> out;
  out.reserve(k - 1);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    PSEUDOFIELD_ASSIGN_OR_RETURN(q, mul(inst, ys[j], last_inv));
    PSEUDOFIELD_ASSIGN_OR_RETURN(s, phi(inst, degree, q));
    out.push_back(std::move(s));
  }
  return out;
}

/// (phi_i(y_i), phi_i(y_2), ..., phi_i(y_1), ..., phi_i(y_k)): phi_i applied
/// entrywise with positions 1 and i exchanged. Acting by it between two phi_i
/// reproduces the action of ys.
template <typename S>
Partial<Tuple<S>> conjugate_tuple(const PseudofieldInstance<S>& inst, int i, std::span<const Element<S>> ys)
{
  if (i < 2 || static_cast<std::size_t>(i) > ys.size())
    throw std::out_of_range("conjugation index outside 2..k");
  Tuple<S> out;
  out.reserve(ys.size());
  for (const auto& y : ys) {
    PSEUDOFIELD_ASSIGN_OR_RETURN(v, phi(inst, i, y));
    out.push_back(std::move(v));
  }
  std::swap(out[0], out[static_cast<std::size_t>(i - 1)]);
  return out;
}

namespace detail {

// Largest coordinate of an inverted element: the float-mode pivot growth.
template <typename S>
void note_growth(double* growth, const Element<S>& v)
{
  if (!growth)
    return;
  for (const auto& c : v)
    *growth = std::max(*growth, std::abs(ScalarTraits<S>::to_double(c)));
}

template <typename S>
Partial<Word<S>> tuple_word_impl(const PseudofieldInstance<S>& inst, std::span<const Element<S>> ys, double* growth)
{
  const std::size_t k = ys.size();
  if (k == 1)
    return Word<S>{RightMul<S>{ys[0]}};

  auto stage = stage_tuple(inst, ys);
  Undefined reason = Undefined::OutOfDomain;
  if (stage) {
    if (growth)
      if (auto last_inv = inv(inst, ys[k - 1]))
        note_growth(growth, *last_inv);
    auto inner = tuple_word_impl(inst, std::span<const Element<S>>(*stage), growth);
    if (inner) {
      Word<S> word = std::move(inner).value();
      word.push_back(Phi{static_cast<int>(k)});
      word.push_back(RightMul<S>{ys[k - 1]});
      return word;
    }
    reason = inner.reason();
  } else {
    reason = stage.reason();
  }
  if (same_point(ys[k - 1], unit(inst, static_cast<int>(k))))
    return tuple_word_impl(inst, ys.first(k - 1), growth);
  return reason;
}

} // namespace detail

/// The normal-form word [y_1^{(k-1)}] phi_2 [y_2^{(k-2)}] ... phi_k [y_k] of
/// the tuple ys (degree k = ys.size()). When a stage element is undefined
/// and the last entry is the unit e_k, the entry is dropped ([x, e_2] = [x]).
template <typename S>
Partial<Word<S>> tuple_word(const PseudofieldInstance<S>& inst, std::span<const Element<S>> ys)
{
  detail::require_degree(inst, ys.size());
  return detail::tuple_word_impl(inst, ys, nullptr);
}

/// A word acting like tuple_word(ys). In exact mode it is the normal form;
/// in float mode it is the candidate among tuple_word(ys) and
/// tuple_word(phi_i(ys)) phi_i (i = 2..k) with the smallest inverted
/// coordinates, since the normal form divides by the last entry at every
/// stage and loses accuracy near the non-invertible unit e_k.
template <typename S>
Partial<Word<S>> evaluation_word(const PseudofieldInstance<S>& inst, std::span<const Element<S>> ys)
{
  detail::require_degree(inst, ys.size());
  if constexpr (ScalarTraits<S>::exact) {
    return detail::tuple_word_impl(inst, ys, nullptr);
  } else {
    double best_growth = 0.0;
    auto best = detail::tuple_word_impl(inst, ys, &best_growth);
    for (int i = 2; i <= static_cast<int>(ys.size()); ++i) {
      Tuple<S> turned;
      bool ok = true;
      for (const auto& y : ys) {
        auto v = phi(inst, i, y);
        if (!v) {
          ok = false;
          break;
        }
        turned.push_back(std::move(v).value());
      }
      if (!ok)
        continue;
      double growth = 0.0;
      auto candidate = detail::tuple_word_impl(inst, std::span<const Element<S>>(turned), &growth);
      if (!candidate || (best && growth >= best_growth))
        continue;
      Word<S> word = std::move(candidate).value();
      word.push_back(Phi{i});
      best = std::move(word);
      best_growth = growth;
    }
    return best;
  }
}

template <typename S>
Partial<Word<S>> tuple_word(const PseudofieldInstance<S>& inst, const Tuple<S>& ys)
{
  return tuple_word(inst, std::span<const Element<S>>(ys));
}

/// Which local formula produced a value of the action.
enum class ActBranch {
  NormalForm,     ///< the fully expanded tuple word (pivoted in float mode)
  RecursiveStage, ///< inner (k-1)-tuple evaluated by the action at degree k-1
  DropUnit,       ///< y_k = e_k: the action of (y_1..y_{k-1})
  Conjugated,     ///< x . phi_i [conjugate tuple] phi_i
  Translated,     ///< (x . [y_1 c^{-1}, ..., y_k c^{-1}]) c
};

inline std::string_view to_string(ActBranch b)
{
  switch (b) {
  case ActBranch::NormalForm:
    return "normal_form";
  case ActBranch::RecursiveStage:
    return "recursive_stage";
  case ActBranch::DropUnit:
    return "drop_unit";
  case ActBranch::Conjugated:
    return "conjugated";
  case ActBranch::Translated:
    return "translated";
  }
  return "unknown";
}

template <typename S>
struct BranchValue {
  ActBranch branch;
  int index; ///< phi index for Conjugated, candidate index for Translated, 0 otherwise
  Element<S> value;
};

namespace detail {

struct ActPolicy {
  bool conjugate = true;
  bool translate = true;
};

// Lower-degree subcalls get the full branch set; same-degree subcalls are
// restricted so the recursion terminates.
inline constexpr ActPolicy kLowerPolicy{true, true};
inline constexpr ActPolicy kTranslateInnerPolicy{true, false};
inline constexpr ActPolicy kConjugateInnerPolicy{false, false};

template <typename S>
Partial<Element<S>> act_impl(const PseudofieldInstance<S>& inst, const Element<S>& x,
                             std::span<const Element<S>> ys, ActPolicy policy);

// Visits the branches of the action in order. `visit(branch, index, value)`
// returns true to stop. Returns the reason of the first failing branch.
template <typename S, typename Visit>
Undefined for_each_branch(const PseudofieldInstance<S>& inst, const Element<S>& x,
                          std::span<const Element<S>> ys, ActPolicy policy, Visit&& visit)
{
  const std::size_t k = ys.size();
  const int degree = static_cast<int>(k);
  std::optional<Undefined> first_reason;
  auto offer = [&](ActBranch branch, int index, const Partial<Element<S>>& value) {
    if (!value) {
      if (!first_reason)
        first_reason = value.reason();
      return false;
    }
    return visit(branch, index, *value);
  };

  if (k == 1) {
    offer(ActBranch::NormalForm, 0, mul(inst, x, ys[0]));
    return first_reason.value_or(Undefined::OutOfDomain);
  }

  auto word = evaluation_word(inst, ys);
  if (offer(ActBranch::NormalForm, 0, word ? eval_word(inst, x, *word) : Partial<Element<S>>(word.reason())))
    return Undefined::OutOfDomain;

  auto stage = stage_tuple(inst, ys);
  if (stage) {
    auto inner = act_impl(inst, x, std::span<const Element<S>>(*stage), kLowerPolicy);
    if (offer(ActBranch::RecursiveStage, 0, mul(inst, phi(inst, degree, inner), Partial<Element<S>>(ys[k - 1]))))
      return Undefined::OutOfDomain;
  }

  if (same_point(ys[k - 1], unit(inst, degree))) {
    if (offer(ActBranch::DropUnit, 0, act_impl(inst, x, ys.first(k - 1), kLowerPolicy)))
      return Undefined::OutOfDomain;
  }

  if (policy.conjugate) {
    for (int i = 2; i <= degree; ++i) {
      auto conj = conjugate_tuple(inst, i, ys);
      if (!conj)
        continue;
      auto inner = phi(inst, i, x).and_then([&](const Element<S>& px) {
        return act_impl(inst, px, std::span<const Element<S>>(*conj), kConjugateInnerPolicy);
      });
      if (offer(ActBranch::Conjugated, i, phi(inst, i, inner)))
        return Undefined::OutOfDomain;
    }
  }

  if (policy.translate && policy.conjugate) {
    std::vector<Element<S>> candidates;
    for (const auto& y : ys) {
      candidates.push_back(y);
      for (int i = 2; i <= degree; ++i)
        if (auto p = phi(inst, i, y))
          candidates.push_back(*p);
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      auto c_inv = inv(inst, candidates[c]);
      if (!c_inv)
        continue;
      Tuple<S> shifted;
      bool ok = true;
      for (const auto& y : ys) {
        auto v = mul(inst, y, *c_inv);
        if (!v) {
          ok = false;
          break;
        }
        shifted.push_back(*v);
      }
      if (!ok)
        continue;
      auto inner = act_impl(inst, x, std::span<const Element<S>>(shifted), kTranslateInnerPolicy);
      auto value = mul(inst, inner, Partial<Element<S>>(candidates[c]));
      if (value) {
        visit(ActBranch::Translated, static_cast<int>(c), *value);
        break;
      }
    }
  }
  return first_reason.value_or(Undefined::OutOfDomain);
}

template <typename S>
Partial<Element<S>> act_impl(const PseudofieldInstance<S>& inst, const Element<S>& x,
                             std::span<const Element<S>> ys, ActPolicy policy)
{
  std::optional<Element<S>> result;
  Undefined reason = for_each_branch(inst, x, ys, policy, [&](ActBranch, int, const Element<S>& v) {
    result = v;
    return true;
  });
  if (result)
    return *std::move(result);
  return reason;
}

} // namespace detail

/// x . [y_1..y_k] for k = ys.size() <= n: the first defined branch, tried in
/// the order normal form, recursive stage, drop unit, conjugated (i = 2..k),
/// translated.
template <typename S>
Partial<Element<S>> act(const PseudofieldInstance<S>& inst, const Element<S>& x, std::span<const Element<S>> ys)
{
  detail::require_degree(inst, ys.size());
  detail::require_dim(inst, x);
  for (const auto& y : ys)
    detail::require_dim(inst, y);
  return detail::act_impl(inst, x, ys, detail::ActPolicy{});
}

template <typename S>
Partial<Element<S>> act(const PseudofieldInstance<S>& inst, const Element<S>& x, const Tuple<S>& ys)
{
  return act(inst, x, std::span<const Element<S>>(ys));
}

template <typename S>
Partial<Element<S>> act(const PseudofieldInstance<S>& inst, const Partial<Element<S>>& x, const Tuple<S>& ys)
{
  return x.and_then([&](const Element<S>& v) { return act(inst, v, ys); });
}

/// Every defined branch of the action at (x, ys); used to check that
/// overlapping local formulas agree.
template <typename S>
std::vector<BranchValue<S>> act_branches(const PseudofieldInstance<S>& inst, const Element<S>& x,
                                         const Tuple<S>& ys)
{
  detail::require_degree(inst, ys.size());
  std::vector<BranchValue<S>> out;
  detail::for_each_branch(inst, x, std::span<const Element<S>>(ys), detail::ActPolicy{},
                          [&](ActBranch b, int index, const Element<S>& v) {
                            out.push_back(BranchValue<S>{b, index, v});
                            return false;
                          });
  return out;
}

} // namespace pseudofield
