#pragma once

#include "tropglue/tropical_type.hpp"

namespace tropglue {

// The cone of tropical maps of a given type. Ambient coordinates are
// (n_v in N_sigma(v))_v followed by (l_E)_E.
struct BasicCone {
  std::vector<std::size_t> vertex_offset, vertex_rank;
  std::size_t edge_offset = 0, ambient_dim = 0;
  IntMatrix equalities;                // rows, ambient coordinates
  std::vector<IntVector> inequalities; // rows, ambient coordinates
  IntMatrix lattice;                   // N_tau: ambient x dim, saturated span of the cone
  Cone cone;                           // in N_tau coordinates
  bool realizable = false;
  std::optional<RatVector> witness;    // ambient coordinates followed by one t_L per leg

  std::size_t dim() const { return lattice.cols(); }
  bool is_zero() const { return dim() == 0; }

  // N_tau -> N_sigma(v)
  IntMatrix ev(std::size_t v) const {
    return lattice.select_rows(vertex_offset[v], vertex_offset[v] + vertex_rank[v]);
  }
  // N_tau -> Z, the length of edge e
  IntMatrix edge_length(std::size_t e) const {
    return lattice.select_rows(edge_offset + e, edge_offset + e + 1);
  }
};

namespace detail {

inline std::vector<IntVector> pull_back(const std::vector<IntVector> &rows, const IntMatrix &basis) {
  std::vector<IntVector> out;
  for (auto &r : rows) {
    IntVector p(basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j)
      for (std::size_t i = 0; i < basis.rows(); ++i)
        p[j] += r[i] * basis(i, j);
    out.push_back(p);
  }
  return out;
}

// row block `coeff * map` written into `row` at `offset` (map is r x k, rows of result)
inline void add_map(std::vector<IntVector> &rows, std::size_t first_row, const IntMatrix &map,
                    std::size_t offset, const Integer &coeff) {
  for (std::size_t i = 0; i < map.rows(); ++i)
    for (std::size_t j = 0; j < map.cols(); ++j)
      rows[first_row + i][offset + j] += coeff * map(i, j);
}

} // namespace detail

inline LinearSystem realizability_system(const TropicalType &t, const ConeComplex &cx,
                                         const BasicCone &bc) {
  LinearSystem sys;
  const std::size_t n = bc.ambient_dim + t.legs.size();
  sys.num_vars = n;
  for (std::size_t i = 0; i < bc.equalities.rows(); ++i) {
    IntVector r = bc.equalities.row(i);
    r.resize(n);
    sys.add_eq(r);
  }
  // vertex positions in the interior of their cones
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    for (auto &f : cx.get(t.vertices[v].sigma).cone.facets()) {
      IntVector r(n);
      for (std::size_t j = 0; j < f.size(); ++j)
        r[bc.vertex_offset[v] + j] = f[j];
      sys.add_ge(r, 1);
    }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto &E = t.edges[e];
    IntVector len(n);
    len[bc.edge_offset + e] = 1;
    sys.add_ge(len, 1);
    // midpoint 2 n_tail + l u strictly inside sigma(E)
    IntMatrix iota = cx.require_face_map(t.vertices[E.tail].sigma, E.sigma);
    for (auto &f : cx.get(E.sigma).cone.facets()) {
      IntVector r(n);
      for (std::size_t j = 0; j < iota.cols(); ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < iota.rows(); ++i)
          s += f[i] * iota(i, j);
        r[bc.vertex_offset[E.tail] + j] = 2 * s;
      }
      r[bc.edge_offset + e] = dot(f, E.u);
      sys.add_ge(r, 1);
    }
  }
  for (std::size_t l = 0; l < t.legs.size(); ++l) {
    const auto &L = t.legs[l];
    std::size_t tvar = bc.ambient_dim + l;
    IntVector pos(n);
    pos[tvar] = 1;
    sys.add_ge(pos, 1);
    IntMatrix iota = cx.require_face_map(t.vertices[L.vertex].sigma, L.sigma);
    for (auto &f : cx.get(L.sigma).cone.facets()) {
      IntVector r(n);
      for (std::size_t j = 0; j < iota.cols(); ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < iota.rows(); ++i)
          s += f[i] * iota(i, j);
        r[bc.vertex_offset[L.vertex] + j] = s;
      }
      r[tvar] = dot(f, L.u);
      sys.add_ge(r, 1);
    }
  }
  return sys;
}

inline BasicCone basic_cone(const TropicalType &t, const ConeComplex &cx) {
  t.validate(cx);
  BasicCone bc;
  std::size_t off = 0;
  for (auto &v : t.vertices) {
    bc.vertex_offset.push_back(off);
    bc.vertex_rank.push_back(cx.rank(v.sigma));
    off += cx.rank(v.sigma);
  }
  bc.edge_offset = off;
  bc.ambient_dim = off + t.edges.size();
  const std::size_t n = bc.ambient_dim;

  // edge relations: iota(n_head) - iota(n_tail) - l u = 0 in N_sigma(E)
  std::vector<IntVector> eq;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto &E = t.edges[e];
    std::size_t r0 = eq.size(), k = cx.rank(E.sigma);
    eq.resize(r0 + k, IntVector(n));
    detail::add_map(eq, r0, cx.require_face_map(t.vertices[E.head].sigma, E.sigma),
                    bc.vertex_offset[E.head], 1);
    detail::add_map(eq, r0, cx.require_face_map(t.vertices[E.tail].sigma, E.sigma),
                    bc.vertex_offset[E.tail], -1);
    for (std::size_t i = 0; i < k; ++i)
      eq[r0 + i][bc.edge_offset + e] -= E.u[i];
  }
  bc.equalities = IntMatrix::from_rows(eq, n);

  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    for (auto &f : cx.get(t.vertices[v].sigma).cone.facets()) {
      IntVector r(n);
      for (std::size_t j = 0; j < f.size(); ++j)
        r[bc.vertex_offset[v] + j] = f[j];
      bc.inequalities.push_back(r);
    }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    IntVector r(n);
    r[bc.edge_offset + e] = 1;
    bc.inequalities.push_back(r);
  }

  IntMatrix K = eq.empty() ? IntMatrix::identity(n) : kernel_lattice(bc.equalities);
  Cone inK = Cone::from_inequalities(K.cols(), detail::pull_back(bc.inequalities, K));
  if (inK.is_full_dimensional()) {
    bc.lattice = K;
    bc.cone = inK;
  } else {
    bc.lattice = K * inK.span_basis();
    bc.cone = Cone::from_inequalities(bc.lattice.cols(), detail::pull_back(bc.inequalities, bc.lattice));
  }

  bc.witness = find_feasible_point(realizability_system(t, cx, bc));
  bc.realizable = bc.witness.has_value();
  return bc;
}

inline bool is_realizable(const TropicalType &t, const ConeComplex &cx) {
  return basic_cone(t, cx).realizable;
}

// witness scaled to integers: (ambient coordinates, leg parameters)
inline IntVector integral_witness(const BasicCone &bc) {
  if (!bc.witness)
    throw DomainError("type is not realizable");
  return clear_denominators(*bc.witness);
}

// N_tau ⊕ Z -> N_sigma(L), (s, l) -> ev_v(s) + l u(L)
inline IntMatrix leg_evaluation(const TropicalType &t, const ConeComplex &cx, const BasicCone &bc,
                                std::size_t leg) {
  const auto &L = t.legs[leg];
  IntMatrix ev = cx.require_face_map(t.vertices[L.vertex].sigma, L.sigma) * bc.ev(L.vertex);
  return IntMatrix::hstack(ev, IntMatrix::from_columns({L.u}));
}

} // namespace tropglue
