#pragma once

// Seeded sampling and residual bookkeeping shared by the verification suites.

#include "pseudofield/element.hpp"
#include "pseudofield/partial.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pseudofield {

struct SampleConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  double tolerance = kRelTolerance;
  /// Box radius around a unit for statements quantified over a neighbourhood.
  double local_radius = 0.25;
  /// Box radius around a unit for identities that hold wherever defined.
  double global_radius = 2.0;

  void validate() const
  {
    if (samples < 1)
      throw std::invalid_argument("samples must be >= 1");
    if (!(local_radius > 0.0) || !(global_radius > 0.0))
      throw std::invalid_argument("sampling radius must be positive");
    if (!(tolerance >= 0.0))
      throw std::invalid_argument("tolerance must be non-negative");
  }
};

struct CheckEntry {
  std::string check_id;
  /// The identity being checked, written out.
  std::string formula;
  std::size_t samples_attempted = 0;
  std::size_t samples_defined = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  /// A reported constant, e.g. the common value of an element that must not depend on the sample.
  std::optional<double> constant;
  std::optional<std::string> constant_text;
};

struct CheckReport {
  std::string instance;
  int n = 0;
  ScalarMode mode = ScalarMode::Float;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double tolerance = kRelTolerance;
  std::vector<CheckEntry> checks;

  bool entry_passes(const CheckEntry& e) const
  {
    return e.failures == 0 && (mode == ScalarMode::Rational ? e.max_residual == 0.0 : e.max_residual <= tolerance);
  }

  bool pass() const
  {
    return std::all_of(checks.begin(), checks.end(), [&](const CheckEntry& e) { return entry_passes(e); });
  }

  const CheckEntry* find(std::string_view id) const
  {
    for (const auto& e : checks)
      if (e.check_id == id)
        return &e;
    return nullptr;
  }

  void append(const CheckReport& other)
  {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

/// Per-sample generator. The stream depends only on (seed, check id, sample
/// index), so reports are independent of evaluation order.
template <typename S>
class Sampler {
public:
  /// Coordinates are multiples of 2^-kGridBits: exact in both scalar modes.
  static constexpr int kGridBits = 12;

  Sampler(std::uint64_t seed, std::string_view stream, std::uint64_t index)
  {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char c : stream) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    engine_.seed(mix(mix(mix(seed) ^ h) ^ index));
  }

  /// Uniform grid point in [center - radius, center + radius].
  S scalar(const S& center, double radius)
  {
    const auto steps = static_cast<std::uint64_t>(std::ldexp(radius, kGridBits));
    const auto span = 2 * steps + 1;
    const auto k = static_cast<long long>(engine_() % span) - static_cast<long long>(steps);
    return S(center + ScalarTraits<S>::dyadic(k, kGridBits));
  }

  Element<S> near(const Element<S>& center, double radius)
  {
    std::vector<S> out;
    out.reserve(center.dim());
    for (const auto& c : center)
      out.push_back(scalar(c, radius));
    return Element<S>(std::move(out));
  }

  /// Entry j is drawn around centers[j].
  Tuple<S> tuple_near(const Tuple<S>& centers, double radius)
  {
    Tuple<S> out;
    out.reserve(centers.size());
    for (const auto& c : centers)
      out.push_back(near(c, radius));
    return out;
  }

  std::uint64_t next() { return engine_(); }

private:
  // SplitMix64 finalizer: spreads nearby (seed, stream, index) triples apart.
  static std::uint64_t mix(std::uint64_t z)
  {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

/// Accumulates one report entry. Undefined samples are counted as attempted
/// only; a defined sample fails when its residual is nonzero (rational mode)
/// or above the tolerance (float mode).
template <typename S>
class EntryBuilder {
public:
  EntryBuilder(std::string check_id, std::string formula, double tolerance) : tolerance_(tolerance)
  {
    entry_.check_id = std::move(check_id);
    entry_.formula = std::move(formula);
  }

  void undefined() { ++entry_.samples_attempted; }

  void record(double residual)
  {
    ++entry_.samples_attempted;
    ++entry_.samples_defined;
    entry_.max_residual = std::max(entry_.max_residual, residual);
    if (fails(residual))
      ++entry_.failures;
  }

  template <typename T>
  void compare(const Partial<T>& lhs, const Partial<T>& rhs)
  {
    if (!lhs || !rhs) {
      undefined();
      return;
    }
    record(residual(*lhs, *rhs));
  }

  /// A sample that must be undefined: counted as defined (and failed) only if it has a value.
  template <typename T>
  void expect_undefined(const Partial<T>& value)
  {
    if (!value) {
      undefined();
      return;
    }
    ++entry_.samples_attempted;
    ++entry_.samples_defined;
    ++entry_.failures;
    entry_.max_residual = std::max(entry_.max_residual, 1.0);
  }

  bool fails(double residual) const
  {
    if constexpr (ScalarTraits<S>::exact)
      return residual != 0.0;
    else
      return !(residual <= tolerance_);
  }

  CheckEntry& entry() { return entry_; }
  CheckEntry finish() && { return std::move(entry_); }

private:
  CheckEntry entry_;
  double tolerance_;
};

template <typename S>
CheckReport make_report(const std::string& instance, int n, const SampleConfig& cfg)
{
  CheckReport r;
  r.instance = instance;
  r.n = n;
  r.mode = ScalarTraits<S>::mode;
  r.seed = cfg.seed;
  r.samples = cfg.samples;
  r.tolerance = cfg.tolerance;
  return r;
}

} // namespace pseudofield
