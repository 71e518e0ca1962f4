#pragma once

#include "tropglue/lattice.hpp"
#include "tropglue/rational_lp.hpp"

#include <functional>
#include <set>

namespace tropglue {

namespace detail {

// primitive integer basis of {x : r.x = 0 for all rows}, by exact elimination
inline std::vector<IntVector> rational_nullspace(const std::vector<IntVector> &rows, std::size_t n) {
  std::vector<RatVector> m;
  for (auto &r : rows)
    m.emplace_back(r.begin(), r.end());
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0)
      ++p;
    if (p == m.size())
      continue;
    std::swap(m[p], m[rank]);
    Rational inv = 1 / m[rank][c];
    for (auto &x : m[rank])
      x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != rank && m[i][c] != 0) {
        Rational f = m[i][c];
        for (std::size_t j = c; j < n; ++j)
          m[i][j] -= f * m[rank][j];
      }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(n);
  for (auto c : pivot_col)
    is_pivot[c] = true;
  std::vector<IntVector> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free])
      continue;
    RatVector x(n);
    x[free] = 1;
    for (std::size_t i = 0; i < rank; ++i)
      x[pivot_col[i]] = -m[i][free];
    out.push_back(primitive(clear_denominators(x)));
  }
  return out;
}

} // namespace detail

// Rational polyhedral cone: nonnegative span of integer generators in Z^n.
// Facet normals are computed eagerly; membership is
//   equations(v) == 0 and facet(v) >= 0  (> 0 for the relative interior).
class Cone {
public:
  Cone() = default;
  Cone(std::size_t ambient_rank, std::vector<IntVector> generators)
      : ambient_(ambient_rank) {
    std::set<IntVector> seen;
    for (auto &g : generators) {
      if (g.size() != ambient_rank)
        throw std::invalid_argument("cone generator has wrong length");
      if (is_zero(g))
        continue;
      IntVector p = primitive(g);
      if (seen.insert(p).second)
        gens_.push_back(p);
    }
    compute_faces();
  }

  static Cone orthant(std::size_t n) {
    std::vector<IntVector> g;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n);
      e[i] = 1;
      g.push_back(e);
    }
    return Cone(n, g);
  }

  // {x : A x >= 0, E x = 0}
  static Cone from_inequalities(std::size_t n, const std::vector<IntVector> &ineqs,
                                const std::vector<IntVector> &eqs = {}) {
    std::vector<IntVector> g = ineqs;
    for (auto &e : eqs) {
      g.push_back(e);
      g.push_back(-e);
    }
    return Cone(n, g).dual();
  }

  // product of cones in the direct sum of their lattices
  static Cone product(const std::vector<Cone> &factors) {
    Cone c;
    for (auto &f : factors)
      c.ambient_ += f.ambient_;
    std::size_t off = 0;
    auto pad = [&](const IntVector &x) {
      IntVector r(c.ambient_);
      for (std::size_t i = 0; i < x.size(); ++i)
        r[off + i] = x[i];
      return r;
    };
    c.strictly_convex_ = true;
    for (auto &f : factors) {
      for (auto &g : f.gens_)
        c.gens_.push_back(pad(g));
      for (auto &x : f.facets_)
        c.facets_.push_back(pad(x));
      for (auto &x : f.equations_)
        c.equations_.push_back(pad(x));
      c.dim_ += f.dim_;
      c.strictly_convex_ = c.strictly_convex_ && f.strictly_convex_;
      off += f.ambient_;
    }
    return c;
  }

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<IntVector> &generators() const { return gens_; }
  const std::vector<IntVector> &facets() const { return facets_; }
  const std::vector<IntVector> &equations() const { return equations_; }
  std::size_t dim() const { return dim_; }
  bool is_full_dimensional() const { return dim_ == ambient_; }
  bool is_strictly_convex() const { return strictly_convex_; }

  bool contains(const IntVector &v, bool strict = false) const {
    for (auto &e : equations_)
      if (dot(e, v) != 0)
        return false;
    for (auto &f : facets_) {
      Integer s = dot(f, v);
      if (s < 0 || (strict && s == 0))
        return false;
    }
    return true;
  }

  IntVector relative_interior_point() const {
    IntVector s(ambient_);
    for (auto &g : gens_)
      s = s + g;
    return s;
  }

  Cone dual() const {
    std::vector<IntVector> g = facets_;
    for (auto &e : equations_) {
      g.push_back(e);
      g.push_back(-e);
    }
    return Cone(ambient_, g);
  }

  // primitive generators spanning extreme rays; meaningful for pointed cones
  std::vector<IntVector> extreme_rays() const {
    std::vector<IntVector> out;
    for (auto &g : gens_) {
      std::vector<IntVector> tight = equations_;
      for (auto &f : facets_)
        if (dot(f, g) == 0)
          tight.push_back(f);
      if (tight.empty() ? ambient_ == 1
                        : rank(IntMatrix::from_rows(tight)) + 1 == ambient_)
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // saturated lattice basis (columns) of the linear span
  IntMatrix span_basis() const {
    if (gens_.empty())
      return IntMatrix(ambient_, 0);
    return saturate_sublattice(IntMatrix::from_columns(gens_));
  }

  Cone image(const IntMatrix &map) const {
    std::vector<IntVector> g;
    for (auto &x : gens_)
      g.push_back(map * x);
    return Cone(map.rows(), g);
  }

  bool operator==(const Cone &o) const {
    if (ambient_ != o.ambient_)
      return false;
    for (auto &g : gens_)
      if (!o.contains(g))
        return false;
    for (auto &g : o.gens_)
      if (!contains(g))
        return false;
    return true;
  }

private:
  void compute_faces() {
    const std::size_t n = ambient_;
    if (gens_.empty()) {
      dim_ = 0;
      for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        equations_.push_back(e);
      }
      strictly_convex_ = true;
      return;
    }
    IntMatrix G = IntMatrix::from_rows(gens_);
    IntMatrix eq = kernel_lattice(G);
    for (std::size_t j = 0; j < eq.cols(); ++j)
      equations_.push_back(eq.column(j));
    dim_ = n - equations_.size();

    // facet candidates: the functional in the span of the generators that
    // vanishes on dim-1 independent generators
    std::set<std::vector<bool>> facet_supports;
    std::vector<std::size_t> pick;
    auto consider = [&]() {
      std::vector<IntVector> rows = equations_;
      for (auto i : pick)
        rows.push_back(gens_[i]);
      auto K = detail::rational_nullspace(rows, n);
      if (K.size() != 1)
        return;
      const IntVector &f = K[0];
      int sign = 0;
      std::vector<bool> support(gens_.size());
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        Integer s = dot(f, gens_[i]);
        support[i] = (s == 0);
        int sg = s > 0 ? 1 : (s < 0 ? -1 : 0);
        if (sg == 0)
          continue;
        if (sign == 0)
          sign = sg;
        else if (sign != sg)
          return;
      }
      if (sign == 0 || !facet_supports.insert(support).second)
        return;
      facets_.push_back(sign < 0 ? -f : f);
    };
    std::size_t k = dim_ - 1;
    // enumerate k-subsets in lexicographic order
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (pick.size() == k) {
        consider();
        return;
      }
      for (std::size_t i = start; i < gens_.size(); ++i) {
        if (gens_.size() - i < k - pick.size())
          break;
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
    std::vector<IntVector> all = facets_;
    all.insert(all.end(), equations_.begin(), equations_.end());
    strictly_convex_ = !all.empty() && rank(IntMatrix::from_rows(all)) == n;
  }

  std::size_t ambient_ = 0;
  std::vector<IntVector> gens_;
  std::vector<IntVector> facets_;
  std::vector<IntVector> equations_;
  std::size_t dim_ = 0;
  bool strictly_convex_ = true;
};

// exact strict feasibility: is there x in the cone with f(x) > 0 for the
// given functionals? homogeneous, so > 0 is replaced by >= 1.
inline bool cone_meets_open_halfspaces(const Cone &C, const std::vector<IntVector> &fs) {
  // parametrize by generator coefficients
  LinearSystem sys;
  sys.num_vars = C.generators().size();
  for (std::size_t i = 0; i < sys.num_vars; ++i) {
    IntVector e(sys.num_vars);
    e[i] = 1;
    sys.add_ge(e);
  }
  for (auto &f : fs) {
    IntVector row(sys.num_vars);
    for (std::size_t i = 0; i < sys.num_vars; ++i)
      row[i] = dot(f, C.generators()[i]);
    sys.add_ge(row, 1);
  }
  return is_feasible(sys);
}

} // namespace tropglue
