#pragma once

#include "tropglue/integer.hpp"

#include <map>
#include <optional>

namespace tropglue {

// a . x >= rhs, or a . x == rhs when `equality`
struct LinearConstraint {
  RatVector a;
  Rational rhs = 0;
  bool equality = false;
};

struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<LinearConstraint> constraints;

  void add_ge(RatVector a, Rational rhs = 0) { constraints.push_back({std::move(a), rhs, false}); }
  void add_eq(RatVector a, Rational rhs = 0) { constraints.push_back({std::move(a), rhs, true}); }
  void add_ge(const IntVector &a, Rational rhs = 0) { add_ge(to_rat(a), rhs); }
  void add_eq(const IntVector &a, Rational rhs = 0) { add_eq(to_rat(a), rhs); }

  bool satisfied_by(const RatVector &x) const {
    for (auto &c : constraints) {
      Rational s = 0;
      for (std::size_t i = 0; i < num_vars; ++i)
        s += c.a[i] * x[i];
      if (c.equality ? s != c.rhs : s < c.rhs)
        return false;
    }
    return true;
  }

  static RatVector to_rat(const IntVector &a) {
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      r[i] = Rational(a[i]);
    return r;
  }
};

namespace detail {

struct FmRow {
  RatVector a;
  Rational rhs;
};

inline void fm_normalize(FmRow &r) {
  Rational scale = 0;
  for (auto &x : r.a)
    if (x != 0) {
      scale = abs(x);
      break;
    }
  if (scale == 0)
    return;
  for (auto &x : r.a)
    x /= scale;
  r.rhs /= scale;
}

// eliminates equalities by substitution, returns reduced inequality system
// along with the substitution record for back-solving
struct EqSubstitution {
  std::size_t var;
  RatVector a; // x_var = (rhs - sum_{j != var} a_j x_j) / a_var
  Rational rhs;
};

inline std::optional<std::vector<FmRow>>
eliminate_equalities(const LinearSystem &sys, std::vector<EqSubstitution> &subs) {
  std::vector<FmRow> eqs, ineqs;
  for (auto &c : sys.constraints)
    (c.equality ? eqs : ineqs).push_back({c.a, c.rhs});
  while (!eqs.empty()) {
    FmRow e = eqs.back();
    eqs.pop_back();
    std::size_t p = sys.num_vars;
    for (std::size_t j = 0; j < sys.num_vars; ++j)
      if (e.a[j] != 0) {
        p = j;
        break;
      }
    if (p == sys.num_vars) {
      if (e.rhs != 0)
        return std::nullopt;
      continue;
    }
    auto substitute = [&](FmRow &r) {
      if (r.a[p] == 0)
        return;
      Rational f = r.a[p] / e.a[p];
      for (std::size_t j = 0; j < sys.num_vars; ++j)
        r.a[j] -= f * e.a[j];
      r.rhs -= f * e.rhs;
    };
    for (auto &r : eqs)
      substitute(r);
    for (auto &r : ineqs)
      substitute(r);
    subs.push_back({p, e.a, e.rhs});
  }
  return ineqs;
}

inline void back_substitute(const std::vector<EqSubstitution> &subs, RatVector &x) {
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
    Rational s = it->rhs;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != it->var)
        s -= it->a[j] * x[j];
    x[it->var] = s / it->a[it->var];
  }
}

} // namespace detail

// Fourier-Motzkin elimination with back-substitution; exact.
inline std::optional<RatVector> fourier_motzkin_feasible(const LinearSystem &sys) {
  using detail::FmRow;
  const std::size_t n = sys.num_vars;
  std::vector<detail::EqSubstitution> subs;
  auto reduced = detail::eliminate_equalities(sys, subs);
  if (!reduced)
    return std::nullopt;

  // levels[k] = system in which variables 0..k-1 have been eliminated
  std::vector<std::vector<FmRow>> levels;
  levels.push_back(*reduced);
  for (std::size_t k = 0; k < n; ++k) {
    const auto &cur = levels.back();
    std::vector<FmRow> pos, neg, next;
    for (auto r : cur) {
      if (r.a[k] > 0)
        pos.push_back(r);
      else if (r.a[k] < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    for (auto &p : pos)
      for (auto &q : neg) {
        Rational cp = -q.a[k], cq = p.a[k];
        FmRow r{RatVector(n), cp * p.rhs + cq * q.rhs};
        for (std::size_t j = 0; j < n; ++j)
          r.a[j] = cp * p.a[j] + cq * q.a[j];
        r.a[k] = 0;
        next.push_back(std::move(r));
      }
    // dedupe: keep, per direction, the tightest right-hand side
    std::map<std::vector<std::string>, std::size_t> seen;
    std::vector<FmRow> uniq;
    for (auto &r : next) {
      detail::fm_normalize(r);
      bool trivial = true;
      for (auto &x : r.a)
        if (x != 0)
          trivial = false;
      if (trivial) {
        if (r.rhs > 0)
          return std::nullopt;
        continue;
      }
      std::vector<std::string> key;
      for (auto &x : r.a)
        key.push_back(to_string(x));
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, uniq.size());
        uniq.push_back(r);
      } else if (r.rhs > uniq[it->second].rhs) {
        uniq[it->second].rhs = r.rhs;
      }
    }
    levels.push_back(std::move(uniq));
  }
  // constants only remain; all were checked above

  RatVector x(n, Rational(0));
  for (std::size_t k = n; k-- > 0;) {
    std::optional<Rational> lo, hi;
    for (auto &r : levels[k]) {
      if (r.a[k] == 0)
        continue;
      Rational rest = r.rhs;
      for (std::size_t j = k + 1; j < n; ++j)
        rest -= r.a[j] * x[j];
      Rational bound = rest / r.a[k];
      if (r.a[k] > 0) {
        if (!lo || bound > *lo)
          lo = bound;
      } else if (!hi || bound < *hi) {
        hi = bound;
      }
    }
    if (lo && hi)
      x[k] = (*lo + *hi) / 2;
    else if (lo)
      x[k] = *lo;
    else if (hi)
      x[k] = *hi;
    else
      x[k] = 0;
  }
  detail::back_substitute(subs, x);
  return x;
}

// Phase-one simplex with Bland's rule on exact rationals.
inline std::optional<RatVector> simplex_feasible(const LinearSystem &sys) {
  const std::size_t n = sys.num_vars;
  // columns: x+ (n), x- (n), slacks (one per inequality), artificials (one per row)
  std::size_t num_ineq = 0;
  for (auto &c : sys.constraints)
    if (!c.equality)
      ++num_ineq;
  const std::size_t m = sys.constraints.size();
  const std::size_t cols = 2 * n + num_ineq + m;
  std::vector<RatVector> T(m, RatVector(cols + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  std::size_t slack = 2 * n;
  for (std::size_t i = 0; i < m; ++i) {
    auto &c = sys.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      T[i][j] = c.a[j];
      T[i][n + j] = -c.a[j];
    }
    if (!c.equality)
      T[i][slack++] = -1;
    T[i][cols] = c.rhs;
    if (c.rhs < 0)
      for (auto &x : T[i])
        x = -x;
    T[i][2 * n + num_ineq + i] = 1;
    basis[i] = 2 * n + num_ineq + i;
  }
  const std::size_t art0 = 2 * n + num_ineq;
  // objective: minimize sum of artificials; reduced costs row
  RatVector z(cols + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < art0 || j == cols)
        z[j] += T[i][j];
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < art0; ++j)
      if (z[j] > 0) {
        enter = j;
        break;
      }
    if (enter == cols)
      break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i)
      if (T[i][enter] > 0) {
        Rational ratio = T[i][cols] / T[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    if (leave == m)
      break; // unbounded direction cannot occur in phase one
    Rational piv = T[leave][enter];
    for (auto &x : T[leave])
      x /= piv;
    for (std::size_t i = 0; i < m; ++i)
      if (i != leave && T[i][enter] != 0) {
        Rational f = T[i][enter];
        for (std::size_t j = 0; j <= cols; ++j)
          T[i][j] -= f * T[leave][j];
      }
    Rational f = z[enter];
    for (std::size_t j = 0; j <= cols; ++j)
      z[j] -= f * T[leave][j];
    basis[leave] = enter;
  }
  if (z[cols] != 0)
    return std::nullopt;
  RatVector val(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    val[basis[i]] = T[i][cols];
  RatVector x(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = val[j] - val[n + j];
  return x;
}

// Fourier-Motzkin for small systems, simplex otherwise; returns a witness.
inline std::optional<RatVector> find_feasible_point(const LinearSystem &sys) {
  auto x = sys.num_vars <= 6 ? fourier_motzkin_feasible(sys) : simplex_feasible(sys);
  if (x && !sys.satisfied_by(*x))
    throw std::logic_error("LP witness fails its own constraints");
  return x;
}

inline bool is_feasible(const LinearSystem &sys) { return find_feasible_point(sys).has_value(); }

} // namespace tropglue
