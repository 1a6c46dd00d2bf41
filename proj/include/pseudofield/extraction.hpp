#pragma once

// From a sharply n-transitive action back to a local n-pseudofield: the
// stabilizer of (e_2, ..., e_n) gives the multiplication, the element that
// exchanges e_1 and e_i gives phi_i.

#include "pseudofield/group_construction.hpp"
#include "pseudofield/linalg.hpp"
#include "pseudofield/report.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace pseudofield {

/// A transformation group acting on G, with elements represented as n-tuples.
template <typename S>
struct ActionOracle {
  int n = 2;
  std::size_t dim = 1;
  /// a -> a . g
  std::function<Partial<Element<S>>(const Element<S>&, const Tuple<S>&)> apply;
  /// Optional batched form: (x_1 . g, ..., x_k . g).
  std::function<Partial<Tuple<S>>(const Tuple<S>&, const Tuple<S>&)> apply_all;
  /// The unique g with X . g = Y (entrywise).
  std::function<Partial<Tuple<S>>(const Tuple<S>&, const Tuple<S>&)> solve;
  /// n distinct points (e_1, ..., e_n).
  Tuple<S> base;
};

struct NewtonOptions {
  int max_iterations = 50;
  double tolerance = 1e-12;
};

/// Newton iteration for X . g = Y in the n*dim coordinates of g, with a
/// central-difference Jacobian. Undefined when it leaves the domain or does
/// not converge.
inline Partial<Tuple<double>> newton_solve(const ActionOracle<double>& oracle, const Tuple<double>& from,
                                           const Tuple<double>& to, Tuple<double> start, NewtonOptions opt = {})
{
  const std::vector<double> target = flatten(to);
  const std::size_t m = target.size();
  auto residual_of = [&](const std::vector<double>& flat) -> Partial<std::vector<double>> {
    Tuple<double> g = unflatten<double>(flat, oracle.dim);
    std::vector<double> out;
    out.reserve(m);
    if (oracle.apply_all) {
      PSEUDOFIELD_ASSIGN_OR_RETURN(image, oracle.apply_all(from, g));
      out = flatten(image);
    } else {
      for (const auto& x : from) {
        PSEUDOFIELD_ASSIGN_OR_RETURN(v, oracle.apply(x, g));
        out.insert(out.end(), v.begin(), v.end());
      }
    }
    for (std::size_t k = 0; k < m; ++k)
      out[k] -= target[k];
    return out;
  };
  auto norm = [](const std::vector<double>& v) {
    double worst = 0.0;
    for (double c : v)
      worst = std::max(worst, std::abs(c));
    return worst;
  };

  std::vector<double> g = flatten(start);
  if (g.size() != m)
    return Undefined::OutOfDomain;
  double scale = 1.0;
  for (double t : target)
    scale = std::max(scale, std::abs(t));

  auto f = residual_of(g);
  if (!f)
    return f.reason();
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (norm(*f) <= opt.tolerance * scale)
      return unflatten<double>(g, oracle.dim);

    linalg::Matrix<double> jac(m, std::vector<double>(m));
    for (std::size_t c = 0; c < m; ++c) {
      const double h = 1e-6 * std::max(1.0, std::abs(g[c]));
      auto gp = g;
      auto gm = g;
      gp[c] += h;
      gm[c] -= h;
      auto fp = residual_of(gp);
      auto fm = residual_of(gm);
      if (!fp || !fm)
        return Undefined::OutOfDomain;
      for (std::size_t r = 0; r < m; ++r)
        jac[r][c] = ((*fp)[r] - (*fm)[r]) / (2 * h);
    }
    linalg::Matrix<double> rhs(m, std::vector<double>(1));
    for (std::size_t r = 0; r < m; ++r)
      rhs[r][0] = -(*f)[r];
    auto step = linalg::solve(std::move(jac), std::move(rhs));
    if (!step)
      return step.reason();

    // Damped update: halve the step until the residual decreases.
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 30 && !accepted; ++halving, t *= 0.5) {
      auto trial = g;
      for (std::size_t k = 0; k < m; ++k)
        trial[k] += t * (*step)[k][0];
      auto ft = residual_of(trial);
      if (ft && norm(*ft) < norm(*f)) {
        g = std::move(trial);
        f = std::move(ft);
        accepted = true;
      }
    }
    if (!accepted)
      return norm(*f) <= opt.tolerance * scale * 1e3 ? Partial<Tuple<double>>(unflatten<double>(g, oracle.dim))
                                                     : Partial<Tuple<double>>(Undefined::OutOfDomain);
  }
  if (norm(*f) <= opt.tolerance * scale)
    return unflatten<double>(g, oracle.dim);
  return Undefined::OutOfDomain;
}

/// The action of F_2(inst) on G. Its solver is the instance hook when present;
/// otherwise solve(base, Y) = Y, and in general g = X^{-1} Y, with Newton
/// from the identity as the float-mode fallback.
template <typename S>
ActionOracle<S> make_group_oracle(const PseudofieldInstance<S>& inst)
{
  auto shared = std::make_shared<const PseudofieldInstance<S>>(inst);
  ActionOracle<S> oracle;
  oracle.n = inst.n;
  oracle.dim = inst.dim;
  oracle.base = gidentity(inst);
  oracle.apply = [shared](const Element<S>& a, const Tuple<S>& g) { return act(*shared, a, g); };
  oracle.apply_all = [shared](const Tuple<S>& xs, const Tuple<S>& g) { return gmul(*shared, xs, g); };
  if (inst.solver) {
    oracle.solve = [shared](const Tuple<S>& X, const Tuple<S>& Y) { return shared->solver(X, Y); };
    return oracle;
  }
  oracle.solve = [shared, base = oracle.base](const Tuple<S>& X, const Tuple<S>& Y) -> Partial<Tuple<S>> {
    if (residual(X, base) == 0.0)
      return Y;
    auto g = gmul(*shared, ginv(*shared, X), Partial<Tuple<S>>(Y));
    if constexpr (!ScalarTraits<S>::exact) {
      if (!g) {
        ActionOracle<double> inner;
        inner.n = shared->n;
        inner.dim = shared->dim;
        inner.apply = [shared](const Element<S>& a, const Tuple<S>& t) { return act(*shared, a, t); };
        inner.apply_all = [shared](const Tuple<S>& xs, const Tuple<S>& t) { return gmul(*shared, xs, t); };
        return newton_solve(inner, X, Y, base);
      }
    }
    return g;
  };
  return oracle;
}

/// The unique g with X . g = Y; undefined when either tuple is degenerate.
template <typename S>
Partial<Tuple<S>> solve_transitive(const ActionOracle<S>& oracle, const Tuple<S>& X, const Tuple<S>& Y)
{
  if (X.size() != static_cast<std::size_t>(oracle.n) || Y.size() != X.size())
    throw std::invalid_argument("solve_transitive: tuples must have length n");
  if (degenerate<S>(X) || degenerate<S>(Y))
    return Undefined::OutOfDomain;
  return oracle.solve(X, Y);
}

namespace detail {

template <typename S>
Tuple<S> swapped_base(const Tuple<S>& base, int i, int j)
{
  Tuple<S> t = base;
  std::swap(t[static_cast<std::size_t>(i - 1)], t[static_cast<std::size_t>(j - 1)]);
  return t;
}

} // namespace detail

/// The group element exchanging e_i and e_j and fixing the other base points.
template <typename S>
Partial<Tuple<S>> exchange_element(const ActionOracle<S>& oracle, int i, int j)
{
  return solve_transitive(oracle, oracle.base, detail::swapped_base(oracle.base, i, j));
}

/// Reads a pseudofield off the action:
///   a b      = a . g_b,       g_b   = solve(base, (b, e_2, ..., e_n))
///   a^{-1}   = e_1 . solve((a, e_2, ..., e_n), base)
///   phi_i(a) = a . E_{1i},    E_{1i} exchanges e_1 and e_i.
template <typename S>
PseudofieldInstance<S> extract_pseudofield(const ActionOracle<S>& oracle_in, std::string name = "extracted")
{
  using E = Element<S>;
  auto oracle = std::make_shared<const ActionOracle<S>>(oracle_in);
  PseudofieldInstance<S> inst;
  inst.name = std::move(name);
  inst.n = oracle->n;
  inst.dim = oracle->dim;
  inst.units = oracle->base;

  auto stabilizer = [oracle](const E& b) {
    Tuple<S> t = oracle->base;
    t[0] = b;
    return t;
  };
  inst.mul = [oracle, stabilizer](const E& a, const E& b) -> Partial<E> {
    PSEUDOFIELD_ASSIGN_OR_RETURN(g, solve_transitive(*oracle, oracle->base, stabilizer(b)));
    return oracle->apply(a, g);
  };
  inst.inv = [oracle, stabilizer](const E& a) -> Partial<E> {
    PSEUDOFIELD_ASSIGN_OR_RETURN(g, solve_transitive(*oracle, stabilizer(a), oracle->base));
    return oracle->apply(oracle->base[0], g);
  };

  std::vector<Partial<Tuple<S>>> exchanges;
  for (int i = 2; i <= oracle->n; ++i)
    exchanges.push_back(exchange_element(*oracle, 1, i));
  inst.phi = [oracle, exchanges = std::move(exchanges)](int i, const E& a) -> Partial<E> {
    const auto& g = exchanges[static_cast<std::size_t>(i - 2)];
    if (!g)
      return g.reason();
    return oracle->apply(a, *g);
  };
  return inst;
}

} // namespace pseudofield
