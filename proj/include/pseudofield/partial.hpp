#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

namespace pseudofield {

/// Why a locally defined operation has no value at the given inputs.
enum class Undefined : std::uint8_t { OutOfDomain, DivisionByZero, SingularDenominator, NotInvertible };

inline std::string_view to_string(Undefined reason)
{
  switch (reason) {
  case Undefined::OutOfDomain:
    return "OutOfDomain";
  case Undefined::DivisionByZero:
    return "DivisionByZero";
  case Undefined::SingularDenominator:
    return "SingularDenominator";
  case Undefined::NotInvertible:
    return "NotInvertible";
  }
  return "Unknown";
}

class bad_partial_access : public std::logic_error {
public:
  explicit bad_partial_access(Undefined reason)
  : std::logic_error("access to undefined value (" + std::string(to_string(reason)) + ")")
  , reason_(reason)
  {}

  Undefined reason() const noexcept { return reason_; }

private:
  Undefined reason_;
};

/// Result of a partial operation: a value, or the reason it is undefined.
template <typename T>
class Partial {
public:
  using value_type = T;

  Partial(const T& value) : state_(value) {}
  Partial(T&& value) : state_(std::move(value)) {}
  Partial(Undefined reason) : state_(reason) {}

  bool defined() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return defined(); }

  const T& value() const&
  {
    if (!defined())
      throw bad_partial_access(reason());
    return std::get<0>(state_);
  }
  T&& value() &&
  {
    if (!defined())
      throw bad_partial_access(reason());
    return std::get<0>(std::move(state_));
  }

  const T& operator*() const& { return value(); }
  T&& operator*() && { return std::move(*this).value(); }
  const T* operator->() const { return &value(); }

  /// Precondition: !defined().
  Undefined reason() const { return std::get<1>(state_); }

  /// Chains a function returning Partial<U>; undefined passes through with its reason.
  template <typename F>
  auto and_then(F&& f) const& -> std::invoke_result_t<F, const T&>
  {
    if (!defined())
      return reason();
    return std::forward<F>(f)(std::get<0>(state_));
  }

  /// Maps a total function over the value.
  template <typename F>
  auto transform(F&& f) const& -> Partial<std::invoke_result_t<F, const T&>>
  {
    if (!defined())
      return reason();
    return std::forward<F>(f)(std::get<0>(state_));
  }

private:
  std::variant<T, Undefined> state_;
};

} // namespace pseudofield

// Binds the value of a Partial expression to `name`, or returns its
// Undefined reason from the enclosing function.
#define PSEUDOFIELD_CONCAT_INNER(a, b) a##b
#define PSEUDOFIELD_CONCAT(a, b) PSEUDOFIELD_CONCAT_INNER(a, b)
#define PSEUDOFIELD_ASSIGN_OR_RETURN(name, expr)                                                                  \
  auto PSEUDOFIELD_CONCAT(partial_tmp_, __LINE__) = (expr);                                                       \
  if (!PSEUDOFIELD_CONCAT(partial_tmp_, __LINE__))                                                                \
    return PSEUDOFIELD_CONCAT(partial_tmp_, __LINE__).reason();                                                   \
  auto name = std::move(PSEUDOFIELD_CONCAT(partial_tmp_, __LINE__)).value()
