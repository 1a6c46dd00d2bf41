#pragma once

// Scalar backends for carrier coordinates: IEEE double (tolerance-based) and
// GMP rationals (exact). Everything else in the library is templated on one
// of these two types through ScalarTraits.

#include <gmpxx.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace pseudofield {

using Rational = mpq_class;

enum class ScalarMode { Float, Rational };

inline std::string_view to_string(ScalarMode mode)
{
  return mode == ScalarMode::Float ? "float" : "rational";
}

/// Denominators below this magnitude are treated as poles in float mode.
inline constexpr double kSingularGuard = 1e-8;
/// Default relative tolerance for float-mode comparisons.
inline constexpr double kRelTolerance = 1e-9;
/// Absolute floor of the comparison: |a-b| <= max(rel*|a|, kAbsFloor).
inline constexpr double kAbsFloor = 1e-12;

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v)
{
  if (v == 0.0)
    return "0";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{})
    return std::to_string(v);
  return std::string(buf.data(), end);
}

namespace detail {

inline std::optional<double> parse_double(std::string_view text)
{
  double out = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    return std::nullopt;
  return out;
}

inline bool all_digits(std::string_view s)
{
  if (s.empty())
    return false;
  for (char c : s)
    if (c < '0' || c > '9')
      return false;
  return true;
}

// Exact parse of "p/q", "12", "-0.25", "1.5e-3".
inline std::optional<Rational> parse_rational(std::string_view text)
{
  if (text.empty())
    return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    auto sign_free = num;
    if (!sign_free.empty() && (sign_free.front() == '-' || sign_free.front() == '+'))
      sign_free.remove_prefix(1);
    if (!all_digits(sign_free) || !all_digits(den))
      return std::nullopt;
    Rational q;
    if (q.set_str(std::string(num.front() == '+' ? num.substr(1) : num) + "/" + std::string(den), 10) != 0)
      return std::nullopt;
    if (q.get_den() == 0)
      return std::nullopt;
    q.canonicalize();
    return q;
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6)
      return std::nullopt;
    exponent = std::stol(std::string(exp_text));
    if (exp_negative)
      exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto int_part = text.substr(0, dot);
    auto frac_part = text.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      return std::nullopt;
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(text))
      return std::nullopt;
    digits = std::string(text);
  }
  if (digits.empty())
    digits = "0";
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

} // namespace detail

template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ScalarMode mode = ScalarMode::Float;
  static constexpr bool exact = false;

  static bool is_pole(double d) { return std::abs(d) < kSingularGuard; }
  static bool is_zero(double d) { return d == 0.0; }
  static double to_double(double d) { return d; }
  static std::string to_string(double d) { return format_double(d); }
  static std::optional<double> parse(std::string_view text)
  {
    if (text.find('/') != std::string_view::npos) {
      auto q = detail::parse_rational(text);
      if (!q)
        return std::nullopt;
      return q->get_d();
    }
    return detail::parse_double(text);
  }
  static double from_int(long v) { return static_cast<double>(v); }
  /// The dyadic value num / 2^log2den (exact in both backends).
  static double dyadic(long long num, int log2den) { return std::ldexp(static_cast<double>(num), -log2den); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr ScalarMode mode = ScalarMode::Rational;
  static constexpr bool exact = true;

  static bool is_pole(const Rational& d) { return d == 0; }
  static bool is_zero(const Rational& d) { return d == 0; }
  static double to_double(const Rational& d) { return d.get_d(); }
  static std::string to_string(const Rational& d) { return d.get_str(); }
  static std::optional<Rational> parse(std::string_view text) { return detail::parse_rational(text); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational dyadic(long long num, int log2den)
  {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(log2den));
    Rational q(mpz_class(static_cast<long>(num)), den);
    q.canonicalize();
    return q;
  }
};

template <typename S>
concept Scalar = requires { ScalarTraits<S>::mode; };

} // namespace pseudofield
