#pragma once

// JSON form of a CheckReport. Keys are sorted and entries keep suite order,
// so identical runs serialize to identical bytes.

#include "pseudofield/report.hpp"

#include "json.hpp"

#include <string>

namespace pseudofield {

namespace detail {

// Rational-mode reports carry numbers as decimal strings.
inline nlohmann::json number(double v, ScalarMode mode)
{
  if (mode == ScalarMode::Rational)
    return format_double(v);
  return v;
}

} // namespace detail

inline nlohmann::json to_json(const CheckEntry& e, ScalarMode mode)
{
  nlohmann::json j;
  j["check_id"] = e.check_id;
  j["paper_ref"] = e.formula;
  j["samples_attempted"] = e.samples_attempted;
  j["samples_defined"] = e.samples_defined;
  j["failures"] = e.failures;
  j["max_residual"] = detail::number(e.max_residual, mode);
  if (e.constant) {
    if (mode == ScalarMode::Rational && e.constant_text)
      j["constant"] = *e.constant_text;
    else
      j["constant"] = *e.constant;
  }
  return j;
}

inline nlohmann::json to_json(const CheckReport& r)
{
  nlohmann::json j;
  j["instance"] = r.instance;
  j["n"] = r.n;
  j["mode"] = std::string(to_string(r.mode));
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["tolerance"] = detail::number(r.tolerance, r.mode);
  j["checks"] = nlohmann::json::array();
  for (const auto& e : r.checks)
    j["checks"].push_back(to_json(e, r.mode));
  j["pass"] = r.pass();
  return j;
}

inline std::string serialize(const CheckReport& r)
{
  return to_json(r).dump(2) + "\n";
}

} // namespace pseudofield
