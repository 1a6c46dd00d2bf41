#pragma once

// Seeded verification suites. Each entry samples points, evaluates both
// sides of one identity and records the residual; points where either side
// is undefined are counted but never judged.

#include "pseudofield/extraction.hpp"
#include "pseudofield/group_construction.hpp"
#include "pseudofield/linalg.hpp"
#include "pseudofield/report.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pseudofield {

namespace detail {

template <typename S>
Partial<Element<S>> lift(const Element<S>& x)
{
  return x;
}

/// Runs `body(rng, builder)` once per sample with an independent stream.
template <typename S, typename Body>
CheckEntry run_check(const SampleConfig& cfg, std::string id, std::string formula, Body&& body)
{
  EntryBuilder<S> builder(id, std::move(formula), cfg.tolerance);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    Sampler<S> rng(cfg.seed, id, s);
    body(rng, builder);
  }
  return std::move(builder).finish();
}

template <typename S>
Tuple<S> units_prefix(const PseudofieldInstance<S>& inst, int k)
{
  return Tuple<S>(inst.units.begin(), inst.units.begin() + k);
}

template <typename S>
Tuple<S> swap_entries(Tuple<S> t, int i, int j)
{
  std::swap(t[static_cast<std::size_t>(i - 1)], t[static_cast<std::size_t>(j - 1)]);
  return t;
}

template <typename S>
Partial<Tuple<S>> map_phi(const PseudofieldInstance<S>& inst, int i, const Tuple<S>& ys)
{
  Tuple<S> out;
  for (const auto& y : ys) {
    PSEUDOFIELD_ASSIGN_OR_RETURN(v, phi(inst, i, y));
    out.push_back(std::move(v));
  }
  return out;
}

template <typename S>
Partial<Tuple<S>> right_translate(const PseudofieldInstance<S>& inst, const Tuple<S>& ys, const Element<S>& y)
{
  Tuple<S> out;
  for (const auto& v : ys) {
    PSEUDOFIELD_ASSIGN_OR_RETURN(p, mul(inst, v, y));
    out.push_back(std::move(p));
  }
  return out;
}

// Upper bound on |f(x + h) - f(x)| / h for the continuity smoke test.
inline constexpr double kLipschitzBound = 1e4;

} // namespace detail

/// Float-mode bound on |X|_inf |X^{-1}|_inf for sampled group elements.
inline constexpr double kConditionLimit = 1e3;
/// Float-mode lower bound on the scaled distance between two entries.
inline constexpr double kSeparationLimit = 1e-2;

template <typename S>
double max_abs(const Tuple<S>& t)
{
  double m = 0.0;
  for (const auto& x : t)
    for (const auto& c : x)
      m = std::max(m, std::abs(ScalarTraits<S>::to_double(c)));
  return m;
}

/// Sample in general position: no coinciding entries, |det M(X)| > 1e-6 for
/// instances with a matrix solver, and in float mode a condition estimate
/// |X| |X^{-1}| <= kConditionLimit with entries at least kSeparationLimit apart.
template <typename S>
bool general_position(const PseudofieldInstance<S>& inst, const Tuple<S>& X)
{
  if (degenerate<S>(X))
    return false;
  if (inst.solver && inst.dim == X.size()) {
    const double det = ScalarTraits<S>::to_double(linalg::determinant(linalg::rows_of(X)));
    if (!(std::abs(det) > 1e-6))
      return false;
  }
  if constexpr (!ScalarTraits<S>::exact) {
    for (std::size_t a = 0; a < X.size(); ++a)
      for (std::size_t b = a + 1; b < X.size(); ++b)
        if (!(residual(X[a], X[b]) >= kSeparationLimit))
          return false;
    auto V = ginv(inst, X);
    if (!V || !(max_abs(X) * max_abs(*V) <= kConditionLimit))
      return false;
  }
  return true;
}

template <typename S>
CheckReport check_pseudofield_axioms(const PseudofieldInstance<S>& inst, const SampleConfig& cfg)
{
  cfg.validate();
  using E = Element<S>;
  auto report = make_report<S>(inst.name, inst.n, cfg);
  const E& e = unit(inst, 1);
  const double lr = cfg.local_radius;
  const double gr = cfg.global_radius;

  {
    EntryBuilder<S> b("axioms.unit_consistency", "e_i = phi_i(e)", cfg.tolerance);
    for (int i = 2; i <= inst.n; ++i)
      b.compare(phi(inst, i, e), detail::lift(unit(inst, i)));
    report.checks.push_back(std::move(b).finish());
  }

  report.checks.push_back(detail::run_check<S>(cfg, "axioms.left_unit", "e x = x", [&](auto& rng, auto& b) {
    E x = rng.near(e, gr);
    b.compare(mul(inst, e, x), detail::lift(x));
  }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "axioms.left_inverse", "x^{-1} x = e", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        b.compare(mul(inst, inv(inst, x), detail::lift(x)), detail::lift(e));
      }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "axioms.involution", "phi_i(phi_i(x)) = x", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        for (int i = 2; i <= inst.n; ++i)
          b.compare(phi(inst, i, phi(inst, i, x)), detail::lift(x));
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "axioms.main_equation", "phi_i(phi_i(a) phi_i(b)) = phi_i(a phi_i(b^{-1})) b", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        E y = rng.near(e, gr);
        for (int i = 2; i <= inst.n; ++i)
          b.compare(mul_i_conjugate(inst, i, x, y), mul_i_alt(inst, i, x, y));
      }));

  // Smoke test only: bounded difference quotients of the primitive maps near e.
  report.checks.push_back(detail::run_check<S>(
      cfg, "axioms.local_continuity", "|f(x + h) - f(x)| <= L h near e for f = x y, x^{-1}, phi_i (smoke test)",
      [&](auto& rng, auto& b) {
        E x = rng.near(e, lr);
        E y = rng.near(e, lr);
        E xh = x;
        const std::size_t k = static_cast<std::size_t>(rng.next() % inst.dim);
        const S h = ScalarTraits<S>::dyadic(1, Sampler<S>::kGridBits);
        xh[k] = S(xh[k] + h);
        std::vector<std::pair<Partial<E>, Partial<E>>> pairs;
        pairs.emplace_back(mul(inst, x, y), mul(inst, xh, y));
        pairs.emplace_back(inv(inst, x), inv(inst, xh));
        for (int i = 2; i <= inst.n; ++i)
          pairs.emplace_back(phi(inst, i, x), phi(inst, i, xh));
        double worst = 0.0;
        for (const auto& [f0, f1] : pairs) {
          if (!f0 || !f1) {
            b.undefined();
            return;
          }
          for (std::size_t c = 0; c < f0->dim(); ++c) {
            const double q = std::abs(ScalarTraits<S>::to_double(S((*f1)[c] - (*f0)[c]) / h));
            worst = std::max(worst, q);
          }
        }
        b.record(worst <= detail::kLipschitzBound ? 0.0 : worst / detail::kLipschitzBound);
      }));

  if (inst.n >= 3) {
    report.checks.push_back(detail::run_check<S>(
        cfg, "axioms.sigma_automorphism", "sigma_ij(a b) = sigma_ij(a) sigma_ij(b)", [&](auto& rng, auto& b) {
          E x = rng.near(e, gr);
          E y = rng.near(e, gr);
          for (int i = 2; i <= inst.n; ++i)
            for (int j = 2; j <= inst.n; ++j)
              if (i != j)
                b.compare(sigma(inst, i, j, mul(inst, x, y)), mul(inst, sigma(inst, i, j, x), sigma(inst, i, j, y)));
        }));
  }

  report.checks.push_back(detail::run_check<S>(cfg, "axioms.inverse_compatibility", "phi_i E phi_i (x) = E phi_i E (x)",
                                               [&](auto& rng, auto& b) {
                                                 E x = rng.near(e, gr);
                                                 for (int i = 2; i <= inst.n; ++i)
                                                   b.compare(phi(inst, i, inv(inst, phi(inst, i, x))),
                                                             inv(inst, phi(inst, i, inv(inst, x))));
                                               }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "axioms.left_zeros", "e_i x = e_i for x near e", [&](auto& rng, auto& b) {
        E x = rng.near(e, lr);
        for (int i = 2; i <= inst.n; ++i)
          b.compare(mul(inst, unit(inst, i), x), detail::lift(unit(inst, i)));
      }));
  return report;
}

template <typename S>
CheckReport check_lemma_identities(const PseudofieldInstance<S>& inst, const SampleConfig& cfg)
{
  cfg.validate();
  using E = Element<S>;
  using T = Tuple<S>;
  auto report = make_report<S>(inst.name, inst.n, cfg);
  const E& e = unit(inst, 1);
  const double gr = cfg.global_radius;
  const T units2 = detail::units_prefix(inst, 2);
  const T units = gidentity(inst);

  report.checks.push_back(detail::run_check<S>(
      cfg, "lemmas.pair_phi_right", "x [y_1, y_2] phi_2 = x [phi_2(y_1), phi_2(y_2)]", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        T ys = rng.tuple_near(units2, gr);
        auto rhs = detail::map_phi(inst, 2, ys).and_then([&](const T& t) { return act(inst, x, t); });
        b.compare(phi(inst, 2, act(inst, x, ys)), rhs);
      }));

  report.checks.push_back(detail::run_check<S>(cfg, "lemmas.pair_phi_left", "x phi_2 [y_1, y_2] = x [y_2, y_1]",
                                               [&](auto& rng, auto& b) {
                                                 E x = rng.near(e, gr);
                                                 T ys = rng.tuple_near(units2, gr);
                                                 b.compare(act(inst, phi(inst, 2, x), ys),
                                                           act(inst, x, detail::swap_entries(ys, 1, 2)));
                                               }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "lemmas.tuple_phi_right", "x [y_1..y_n] phi_i = x [phi_i(y_1)..phi_i(y_n)]", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        T ys = rng.tuple_near(units, gr);
        for (int i = 2; i <= inst.n; ++i) {
          auto rhs = detail::map_phi(inst, i, ys).and_then([&](const T& t) { return act(inst, x, t); });
          b.compare(phi(inst, i, act(inst, x, ys)), rhs);
        }
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "lemmas.tuple_right_translation", "x [y_1..y_n][y] = x [y_1 y..y_n y]", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        T ys = rng.tuple_near(units, gr);
        E y = rng.near(e, gr);
        auto rhs = detail::right_translate(inst, ys, y).and_then([&](const T& t) { return act(inst, x, t); });
        b.compare(mul(inst, act(inst, x, ys), detail::lift(y)), rhs);
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "lemmas.tuple_phi_left_swap", "x phi_i [y_1..y_i..y_n] = x [y_i..y_1..y_n]", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        T ys = rng.tuple_near(units, gr);
        for (int i = 2; i <= inst.n; ++i)
          b.compare(act(inst, phi(inst, i, x), ys), act(inst, x, detail::swap_entries(ys, 1, i)));
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "lemmas.phi_conjugated_translation", "x phi_i [b] phi_i = x [E_i(b)] phi_i [phi_i(b)], E_i = phi_i E phi_i",
      [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        E y = rng.near(e, gr);
        for (int i = 2; i <= inst.n; ++i) {
          auto lhs = phi(inst, i, mul(inst, phi(inst, i, x), detail::lift(y)));
          auto rhs = mul(inst, phi(inst, i, mul(inst, detail::lift(x), inv_i(inst, i, y))), phi(inst, i, y));
          b.compare(lhs, rhs);
        }
      }));

  if (inst.n >= 3) {
    report.checks.push_back(detail::run_check<S>(
        cfg, "lemmas.sigma_conjugated_translation", "x sigma_ij [y] sigma_ij = x [sigma_ij(y)]",
        [&](auto& rng, auto& b) {
          E x = rng.near(e, gr);
          E y = rng.near(e, gr);
          for (int i = 2; i <= inst.n; ++i)
            for (int j = 2; j <= inst.n; ++j)
              if (i != j)
                b.compare(sigma(inst, i, j, mul(inst, sigma(inst, i, j, x), detail::lift(y))),
                          mul(inst, detail::lift(x), sigma(inst, i, j, y)));
        }));

    report.checks.push_back(
        detail::run_check<S>(cfg, "lemmas.phi_sigma_braid", "x phi_i sigma_ij = x phi_j phi_i", [&](auto& rng, auto& b) {
          E x = rng.near(e, gr);
          for (int i = 2; i <= inst.n; ++i)
            for (int j = 2; j <= inst.n; ++j)
              if (i != j)
                b.compare(sigma(inst, i, j, phi(inst, i, x)), phi(inst, i, phi(inst, j, x)));
        }));
  }

  if (inst.n >= 4) {
    report.checks.push_back(detail::run_check<S>(
        cfg, "lemmas.phi_sigma_commute", "x phi_i sigma_jk = x sigma_jk phi_i, i not in {j, k}",
        [&](auto& rng, auto& b) {
          E x = rng.near(e, gr);
          for (int i = 2; i <= inst.n; ++i)
            for (int j = 2; j <= inst.n; ++j)
              for (int k = 2; k <= inst.n; ++k)
                if (j != k && i != j && i != k)
                  b.compare(sigma(inst, j, k, phi(inst, i, x)), phi(inst, i, sigma(inst, j, k, x)));
        }));
  }
  return report;
}

template <typename S>
CheckReport check_group_axioms(const PseudofieldInstance<S>& inst, const SampleConfig& cfg)
{
  cfg.validate();
  using E = Element<S>;
  using T = Tuple<S>;
  using PT = Partial<T>;
  auto report = make_report<S>(inst.name, inst.n, cfg);
  const E& e = unit(inst, 1);
  const double gr = cfg.global_radius;
  const T id = gidentity(inst);

  report.checks.push_back(
      detail::run_check<S>(cfg, "group.associativity", "(X Y) Z = X (Y Z)", [&](auto& rng, auto& b) {
        T X = rng.tuple_near(id, gr);
        T Y = rng.tuple_near(id, gr);
        T Z = rng.tuple_near(id, gr);
        b.compare(gmul(inst, gmul(inst, PT(X), PT(Y)), PT(Z)), gmul(inst, PT(X), gmul(inst, PT(Y), PT(Z))));
      }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "group.left_identity", "(e, e_2..e_n) Y = Y", [&](auto& rng, auto& b) {
        T Y = rng.tuple_near(id, gr);
        b.compare(gmul(inst, id, Y), PT(Y));
      }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "group.left_inverse", "X^{-1} X = (e, e_2..e_n)", [&](auto& rng, auto& b) {
        T X = rng.tuple_near(id, gr);
        if (!general_position(inst, X)) {
          b.undefined();
          return;
        }
        b.compare(gmul(inst, ginv(inst, X), PT(X)), PT(id));
      }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "group.action_compatibility", "x . (Y Z) = (x . Y) . Z", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        T Y = rng.tuple_near(id, gr);
        T Z = rng.tuple_near(id, gr);
        auto lhs = gmul(inst, Y, Z).and_then([&](const T& yz) { return act(inst, x, yz); });
        auto rhs = act(inst, x, Y).and_then([&](const E& xy) { return act(inst, xy, Z); });
        b.compare(lhs, rhs);
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "group.stabilizer_homomorphism", "(a, e_2..e_n)(b, e_2..e_n) = (a b, e_2..e_n)", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        E y = rng.near(e, gr);
        auto rhs = mul(inst, x, y).transform([&](const E& xy) { return embed_stabilizer(inst, xy); });
        b.compare(gmul(inst, embed_stabilizer(inst, x), embed_stabilizer(inst, y)), rhs);
      }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "group.identity_projections", "e_i . [y_1..y_n] = y_i", [&](auto& rng, auto& b) {
        T ys = rng.tuple_near(id, gr);
        for (int i = 1; i <= inst.n; ++i)
          b.compare(act(inst, unit(inst, i), ys), detail::lift(ys[static_cast<std::size_t>(i - 1)]));
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "group.branch_consistency", "all defined branches of x . [y_1..y_n] agree", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        T ys = rng.tuple_near(id, gr);
        auto branches = act_branches(inst, x, ys);
        if (branches.empty()) {
          b.undefined();
          return;
        }
        double worst = 0.0;
        for (const auto& br : branches)
          worst = std::max(worst, residual(br.value, branches.front().value));
        b.record(worst);
      }));

  if (inst.reference_action) {
    report.checks.push_back(detail::run_check<S>(
        cfg, "group.reference_action", "x . [y_1..y_n] = closed-form action", [&](auto& rng, auto& b) {
          E x = rng.near(e, gr);
          T ys = rng.tuple_near(id, gr);
          b.compare(act(inst, x, ys), inst.reference_action(x, ys));
        }));
  }
  return report;
}

template <typename S>
CheckReport check_sharp_transitivity(const PseudofieldInstance<S>& inst, const SampleConfig& cfg)
{
  cfg.validate();
  using T = Tuple<S>;
  using PT = Partial<T>;
  auto report = make_report<S>(inst.name, inst.n, cfg);
  const double gr = cfg.global_radius;
  const T id = gidentity(inst);
  const auto oracle = make_group_oracle(inst);

  report.checks.push_back(
      detail::run_check<S>(cfg, "transitivity.existence", "X . solve(X, Y) = Y", [&](auto& rng, auto& b) {
        T X = rng.tuple_near(id, gr);
        T Y = rng.tuple_near(id, gr);
        if (!general_position(inst, X) || !general_position(inst, Y)) {
          b.undefined();
          return;
        }
        auto g = solve_transitive(oracle, X, Y);
        if (g && !general_position(inst, *g)) {
          b.undefined();
          return;
        }
        b.compare(g.and_then([&](const T& t) { return gmul(inst, X, t); }), PT(Y));
      }));

  if constexpr (!ScalarTraits<S>::exact) {
    report.checks.push_back(detail::run_check<S>(
        cfg, "transitivity.uniqueness", "Newton restarts from perturbed starts reach solve(X, Y)",
        [&](auto& rng, auto& b) {
          T X = rng.tuple_near(id, gr);
          T Y = rng.tuple_near(id, gr);
          if (!general_position(inst, X) || !general_position(inst, Y)) {
            b.undefined();
            return;
          }
          auto g = solve_transitive(oracle, X, Y);
          if (!g || !general_position(inst, *g)) {
            b.undefined();
            return;
          }
          double worst = 0.0;
          for (int restart = 0; restart < 2; ++restart) {
            T start = rng.tuple_near(*g, 1.0 / 64);
            auto again = newton_solve(oracle, X, Y, start);
            if (!again) {
              b.undefined();
              return;
            }
            worst = std::max(worst, residual(*again, *g));
          }
          b.record(worst);
        }));
  }

  report.checks.push_back(
      detail::run_check<S>(cfg, "transitivity.left_cancellation", "X^{-1} (X g) = g", [&](auto& rng, auto& b) {
        T X = rng.tuple_near(id, gr);
        T g = rng.tuple_near(id, gr);
        if (!general_position(inst, X) || !general_position(inst, g)) {
          b.undefined();
          return;
        }
        auto Xg = gmul(inst, X, g);
        if (Xg && !general_position(inst, *Xg)) {
          b.undefined();
          return;
        }
        b.compare(gmul(inst, ginv(inst, X), Xg), PT(g));
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "transitivity.degenerate", "x_1 = x_2 => solve(X, Y) undefined", [&](auto& rng, auto& b) {
        T X = rng.tuple_near(id, gr);
        T Y = rng.tuple_near(id, gr);
        X[1] = X[0];
        b.expect_undefined(solve_transitive(oracle, X, Y));
      }));
  return report;
}

/// Field-type identities for the unary map phi_2 on a commutative carrier.
template <typename S>
CheckReport check_classical(const PseudofieldInstance<S>& inst, const SampleConfig& cfg)
{
  cfg.validate();
  using E = Element<S>;
  auto report = make_report<S>(inst.name, inst.n, cfg);
  const E& e = unit(inst, 1);
  const double gr = cfg.global_radius;
  auto f = [&](const Partial<E>& x) { return phi(inst, 2, x); };
  auto E_ = [&](const Partial<E>& x) { return inv(inst, x); };
  // Samples range over G minus {e}.
  auto draw = [&](auto& rng) -> std::optional<E> {
    E x = rng.near(e, gr);
    if (same_point(x, e))
      return std::nullopt;
    return x;
  };

  report.checks.push_back(detail::run_check<S>(
      cfg, "classical.kt_identity", "eps(1 - eps(x)) = 1 - eps(1 - x), eps = E, 1 - x = phi_2(x)",
      [&](auto& rng, auto& b) {
        auto x = draw(rng);
        if (!x)
          return b.undefined();
        b.compare(E_(f(E_(*x))), f(E_(f(*x))));
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "classical.cohn_conjugation", "phi(y x y^{-1}) = y phi(x) y^{-1}", [&](auto& rng, auto& b) {
        auto x = draw(rng);
        auto y = draw(rng);
        if (!x || !y)
          return b.undefined();
        auto yinv = inv(inst, *y);
        b.compare(f(mul(inst, mul(inst, detail::lift(*y), detail::lift(*x)), yinv)),
                  mul(inst, mul(inst, detail::lift(*y), f(*x)), yinv));
      }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "classical.cohn_involution", "phi(phi(x)) = x", [&](auto& rng, auto& b) {
        auto x = draw(rng);
        if (!x)
          return b.undefined();
        b.compare(f(f(*x)), detail::lift(*x));
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "classical.cohn_quotient", "phi(x y^{-1}) = phi(phi(x) phi(y)^{-1}) phi(y^{-1}), x != y",
      [&](auto& rng, auto& b) {
        auto x = draw(rng);
        auto y = draw(rng);
        if (!x || !y || same_point(*x, *y))
          return b.undefined();
        auto lhs = f(mul(inst, detail::lift(*x), E_(*y)));
        auto rhs = mul(inst, f(mul(inst, f(*x), E_(f(*y)))), f(E_(*y)));
        b.compare(lhs, rhs);
      }));

  {
    std::optional<E> first;
    auto entry = detail::run_check<S>(
        cfg, "classical.cohn_constant", "b = phi(x^{-1}) x phi(x)^{-1} does not depend on x", [&](auto& rng, auto& b) {
          auto x = draw(rng);
          if (!x)
            return b.undefined();
          auto value = mul(inst, mul(inst, f(E_(*x)), detail::lift(*x)), E_(f(*x)));
          if (!value)
            return b.undefined();
          if (!first)
            first = *value;
          b.record(residual(*value, *first));
        });
    if (first && first->dim() == 1) {
      entry.constant = ScalarTraits<S>::to_double((*first)[0]);
      entry.constant_text = ScalarTraits<S>::to_string((*first)[0]);
    }
    report.checks.push_back(std::move(entry));
  }
  return report;
}

/// Builds F_2(inst), extracts F_1 of it through the action oracle and
/// compares the two pseudofields and their groups pointwise.
template <typename S>
CheckReport roundtrip_check(const PseudofieldInstance<S>& inst, const SampleConfig& cfg)
{
  cfg.validate();
  using E = Element<S>;
  using T = Tuple<S>;
  using PT = Partial<T>;
  auto report = make_report<S>(inst.name, inst.n, cfg);
  const auto oracle = make_group_oracle(inst);
  const auto ext = extract_pseudofield(oracle, inst.name + "/extracted");
  const E& e = unit(inst, 1);
  const double gr = cfg.global_radius;
  const T id = gidentity(inst);

  {
    EntryBuilder<S> b("roundtrip.units", "extracted e_i = e_i", cfg.tolerance);
    for (int i = 1; i <= inst.n; ++i)
      b.compare(detail::lift(unit(ext, i)), detail::lift(unit(inst, i)));
    report.checks.push_back(std::move(b).finish());
  }

  report.checks.push_back(
      detail::run_check<S>(cfg, "roundtrip.mul", "a . solve(base, (b, e_2..e_n)) = a b", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        E y = rng.near(e, gr);
        b.compare(mul(ext, x, y), mul(inst, x, y));
      }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "roundtrip.inv", "e . solve((a, e_2..e_n), base) = a^{-1}", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        b.compare(inv(ext, x), inv(inst, x));
      }));

  report.checks.push_back(
      detail::run_check<S>(cfg, "roundtrip.phi", "a . E_1i = phi_i(a)", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        for (int i = 2; i <= inst.n; ++i)
          b.compare(phi(ext, i, x), phi(inst, i, x));
      }));

  if (inst.n >= 3) {
    std::vector<std::pair<std::pair<int, int>, PT>> exchanges;
    for (int i = 2; i <= inst.n; ++i)
      for (int j = 2; j <= inst.n; ++j)
        if (i != j)
          exchanges.push_back({{i, j}, exchange_element(oracle, i, j)});

    report.checks.push_back(
        detail::run_check<S>(cfg, "roundtrip.epsilon_sigma", "a . E_ij = sigma_ij(a)", [&](auto& rng, auto& b) {
          E x = rng.near(e, gr);
          for (const auto& [ij, g] : exchanges) {
            auto lhs = g.and_then([&](const T& t) { return oracle.apply(x, t); });
            b.compare(lhs, sigma(ext, ij.first, ij.second, x));
          }
        }));

    report.checks.push_back(detail::run_check<S>(
        cfg, "roundtrip.epsilon_automorphism", "eps_ij(x y) = eps_ij(x) eps_ij(y)", [&](auto& rng, auto& b) {
          E x = rng.near(e, gr);
          E y = rng.near(e, gr);
          for (const auto& [ij, g] : exchanges) {
            if (!g) {
              b.undefined();
              continue;
            }
            auto eps = [&](const Partial<E>& v) {
              return v.and_then([&](const E& w) { return oracle.apply(w, *g); });
            };
            b.compare(eps(mul(ext, x, y)), mul(ext, eps(detail::lift(x)), eps(detail::lift(y))));
          }
        }));
  }

  report.checks.push_back(detail::run_check<S>(
      cfg, "roundtrip.phi_conjugation", "x phi_i [phi_i(a)] phi_i = x [phi_i(a^{-1})] phi_i [a]",
      [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        E a = rng.near(e, gr);
        for (int i = 2; i <= inst.n; ++i) {
          auto lhs = phi(ext, i, mul(ext, phi(ext, i, x), phi(ext, i, a)));
          auto rhs = mul(ext, phi(ext, i, mul(ext, detail::lift(x), phi(ext, i, inv(ext, a)))), detail::lift(a));
          b.compare(lhs, rhs);
        }
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "roundtrip.stabilizer_swap", "[e_i, e_1]_i [x_1, x_i]_i = [x_i, x_1]_i", [&](auto& rng, auto& b) {
        for (int i = 2; i <= inst.n; ++i) {
          T X = id;
          X[0] = rng.near(e, gr);
          X[static_cast<std::size_t>(i - 1)] = rng.near(unit(inst, i), gr);
          const T swap = detail::swap_entries(id, 1, i);
          b.compare(oracle.apply_all(swap, X), PT(detail::swap_entries(X, 1, i)));
        }
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "roundtrip.inverse_compatibility", "extracted phi_i E phi_i = E phi_i E", [&](auto& rng, auto& b) {
        E x = rng.near(e, gr);
        for (int i = 2; i <= inst.n; ++i)
          b.compare(phi(ext, i, inv(ext, phi(ext, i, x))), inv(ext, phi(ext, i, inv(ext, x))));
      }));

  report.checks.push_back(detail::run_check<S>(
      cfg, "roundtrip.group_product", "X Y over the extracted pseudofield = X Y", [&](auto& rng, auto& b) {
        T X = rng.tuple_near(id, gr);
        T Y = rng.tuple_near(id, gr);
        b.compare(gmul(ext, X, Y), gmul(inst, X, Y));
      }));
  return report;
}

} // namespace pseudofield
