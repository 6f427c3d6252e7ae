#pragma once

// Exact feasibility of mixed linear systems { a.x = b } + { a.x > b } over Q,
// with a rational witness on success. Equalities are eliminated first by
// exact pivoting; the remaining strict system goes through Fourier-Motzkin,
// which handles strictness natively and lets us read a witness back off the
// elimination stages. Problem sizes here are tiny (ambient dimension of the
// arrangement), so FM's worst case is irrelevant.

#include <mdiag/matrix.hpp>

#include <algorithm>
#include <optional>

namespace mdiag {

struct LinearConstraint {
  std::vector<Rational> a;
  Rational b;  // a.x = b  or  a.x > b
};

struct LinearSystem {
  int nvars = 0;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> stricts;
};

namespace detail {

// Scale to coprime integers with positive leading coefficient preserved
// (the inequality direction must not flip, so only positive scaling).
inline void normalize_strict(LinearConstraint& c) {
  Integer l = 1;
  for (auto& x : c.a) l = lcm(l, x.get_den());
  l = lcm(l, c.b.get_den());
  Integer g = 0;
  for (auto& x : c.a) g = gcd(g, Integer(Rational(x * Rational(l)).get_num()));
  g = gcd(g, Integer(Rational(c.b * Rational(l)).get_num()));
  if (g == 0) g = 1;
  Rational scale = Rational(l) / Rational(g);
  for (auto& x : c.a) x *= scale;
  c.b *= scale;
}

inline bool same_constraint(const LinearConstraint& x, const LinearConstraint& y) {
  return x.a == y.a && x.b == y.b;
}

}  // namespace detail

// Witness for the strict system restricted to the affine subspace cut out by
// the equalities; nullopt when infeasible.
inline std::optional<std::vector<Rational>> find_strict_solution(const LinearSystem& sys) {
  const int n = sys.nvars;

  // Equalities: particular solution + kernel parametrization x = x0 + N t.
  Matrix<Rational> e(static_cast<int>(sys.equalities.size()), n);
  Matrix<Rational> rhs(static_cast<int>(sys.equalities.size()), 1);
  for (size_t i = 0; i < sys.equalities.size(); ++i) {
    for (int j = 0; j < n; ++j) e(static_cast<int>(i), j) = sys.equalities[i].a[j];
    rhs(static_cast<int>(i), 0) = sys.equalities[i].b;
  }
  auto x0 = solve(e, rhs);
  if (!x0) return std::nullopt;
  Matrix<Rational> nbasis = kernel_basis(e);
  const int k = nbasis.cols();

  // Strict constraints in the t coordinates: row.a * t > row.b.
  std::vector<LinearConstraint> cur;
  for (const auto& s : sys.stricts) {
    LinearConstraint c;
    c.a.resize(k);
    Rational shift = 0;
    for (int j = 0; j < n; ++j) shift += s.a[j] * (*x0)(j, 0);
    c.b = s.b - shift;
    for (int t = 0; t < k; ++t) {
      Rational v = 0;
      for (int j = 0; j < n; ++j) v += s.a[j] * nbasis(j, t);
      c.a[t] = v;
    }
    detail::normalize_strict(c);
    if (std::all_of(c.a.begin(), c.a.end(), [](const Rational& x) { return x == 0; })) {
      if (!(c.b < 0)) return std::nullopt;  // 0 > b fails
      continue;
    }
    cur.push_back(std::move(c));
  }

  // Eliminate t_k, ..., t_1, keeping each stage for back-substitution.
  std::vector<std::vector<LinearConstraint>> stages(k + 1);
  stages[k] = cur;
  for (int var = k - 1; var >= 0; --var) {
    std::vector<LinearConstraint> next;
    auto push = [&next](LinearConstraint c) {
      detail::normalize_strict(c);
      for (const auto& o : next)
        if (detail::same_constraint(o, c)) return;
      next.push_back(std::move(c));
    };
    std::vector<const LinearConstraint*> lower, upper;
    for (const auto& c : stages[var + 1]) {
      const Rational& cv = c.a[var];
      if (cv > 0)
        lower.push_back(&c);
      else if (cv < 0)
        upper.push_back(&c);
      else {
        LinearConstraint r{std::vector<Rational>(c.a.begin(), c.a.begin() + var), c.b};
        bool all0 = std::all_of(r.a.begin(), r.a.end(), [](const Rational& x) { return x == 0; });
        if (all0) {
          if (!(r.b < 0)) return std::nullopt;
        } else {
          push(std::move(r));
        }
      }
    }
    for (const auto* lo : lower)
      for (const auto* up : upper) {
        // lo: a t_var > ...; up: -a' t_var > ...  combine to drop t_var
        LinearConstraint r;
        r.a.resize(var);
        Rational cl = lo->a[var], cu = -up->a[var];
        for (int j = 0; j < var; ++j) r.a[j] = lo->a[j] * cu + up->a[j] * cl;
        r.b = lo->b * cu + up->b * cl;
        bool all0 = std::all_of(r.a.begin(), r.a.end(), [](const Rational& x) { return x == 0; });
        if (all0) {
          if (!(r.b < 0)) return std::nullopt;
        } else {
          push(std::move(r));
        }
      }
    stages[var] = std::move(next);
  }

  // Back-substitute: stage s constrains t_0..t_{s-1}; with earlier values
  // fixed, stage s+1 yields an open interval for t_s.
  std::vector<Rational> t(k, 0);
  for (int var = 0; var < k; ++var) {
    bool has_lo = false, has_hi = false;
    Rational lo = 0, hi = 0;
    for (const auto& c : stages[var + 1]) {
      const Rational& cv = c.a[var];
      if (cv == 0) continue;
      Rational rest = c.b;
      for (int j = 0; j < var; ++j) rest -= c.a[j] * t[j];
      Rational bound = rest / cv;
      if (cv > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      }
    }
    if (has_lo && has_hi)
      t[var] = (lo + hi) / 2;
    else if (has_lo)
      t[var] = lo + 1;
    else if (has_hi)
      t[var] = hi - 1;
    else
      t[var] = 0;
  }

  std::vector<Rational> x(n);
  for (int j = 0; j < n; ++j) {
    Rational v = (*x0)(j, 0);
    for (int tt = 0; tt < k; ++tt) v += nbasis(j, tt) * t[tt];
    x[j] = v;
  }
  return x;
}

}  // namespace mdiag
