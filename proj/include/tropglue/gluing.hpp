#pragma once

#include "tropglue/monoid.hpp"
#include "tropglue/type_ops.hpp"

namespace tropglue {

struct GluingProblem {
  ConeComplex complex;
  DecoratedType type;
  std::vector<std::string> split; // edge ids
};

// Everything assembled from one splitting. Column layout of psi:
// per component its N_tau_i block, then one length per split edge.
// Row layout: one N_sigma(E) block per split edge, in sorted edge order.
struct GluingData {
  SplitResult parts;
  std::vector<std::size_t> edges; // sorted original edge indices
  std::vector<BasicCone> cones;
  std::vector<std::size_t> component_offset, row_offset;
  std::size_t length_offset = 0;
  IntMatrix psi;
};

inline std::vector<std::size_t> split_edge_indices(const GluingProblem &p) {
  std::vector<std::size_t> out;
  for (auto &id : p.split) {
    auto e = p.type.type.find_edge(id);
    if (!e)
      throw DomainError("unknown split edge: " + id);
    out.push_back(*e);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw DomainError("split edge listed twice");
  return out;
}

inline GluingData assemble_gluing(const GluingProblem &p) {
  const auto &t = p.type.type;
  const auto &cx = p.complex;
  t.validate(cx);
  GluingData g;
  g.edges = split_edge_indices(p);
  g.parts = split(p.type, g.edges);
  std::size_t cols = 0;
  for (std::size_t i = 0; i < g.parts.parts.size(); ++i) {
    g.cones.push_back(basic_cone(g.parts.parts[i].type, cx));
    if (!g.cones.back().realizable)
      throw DomainError("split component " + std::to_string(i) + " is not realizable");
    g.component_offset.push_back(cols);
    cols += g.cones.back().dim();
  }
  g.length_offset = cols;
  cols += g.edges.size();
  std::size_t rows = 0;
  for (auto e : g.edges) {
    g.row_offset.push_back(rows);
    rows += cx.rank(t.edges[e].sigma);
  }
  g.psi = IntMatrix(rows, cols);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto &E = t.edges[g.edges[k]];
    for (auto [v, sign] : {std::pair{E.tail, 1}, std::pair{E.head, -1}}) {
      std::size_t part = g.parts.part_of_vertex[v];
      IntMatrix block = cx.require_face_map(t.vertices[v].sigma, E.sigma) *
                        g.cones[part].ev(g.parts.local_vertex[v]);
      g.psi.add_block(g.row_offset[k], g.component_offset[part], block, sign);
    }
    for (std::size_t i = 0; i < E.u.size(); ++i)
      g.psi(g.row_offset[k] + i, g.length_offset + k) = E.u[i];
  }
  return g;
}

inline IntMatrix build_psi(const GluingProblem &p) { return assemble_gluing(p).psi; }

inline Integer mu(const GluingProblem &p) { return torsion_order(cokernel(build_psi(p))); }

inline bool is_transverse(const GluingProblem &p) { return is_cokernel_finite(build_psi(p)); }

// theta^t : (n_E)_E ⊕ (s_i)_i ⊕ (l_{E,v})_flags -> (N_sigma(E))_flags,
//   value at flag (E,v) = ev_v(s) + l_{E,v} u(E,v) - n_E
inline IntMatrix build_theta_t(const GluingData &g, const GluingProblem &p) {
  const auto &t = p.type.type;
  const auto &cx = p.complex;
  std::size_t n_rows = 0, n_cols = 0;
  std::vector<std::size_t> n_off, s_off;
  for (auto e : g.edges) {
    n_off.push_back(n_cols);
    n_cols += cx.rank(t.edges[e].sigma);
  }
  for (auto &bc : g.cones) {
    s_off.push_back(n_cols);
    n_cols += bc.dim();
  }
  const std::size_t l_off = n_cols;
  n_cols += 2 * g.edges.size();
  for (auto e : g.edges)
    n_rows += 2 * cx.rank(t.edges[e].sigma);
  IntMatrix th(n_rows, n_cols);
  std::size_t row = 0;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto &E = t.edges[g.edges[k]];
    const std::size_t r = cx.rank(E.sigma);
    for (int side = 0; side < 2; ++side) {
      std::size_t v = side == 0 ? E.tail : E.head;
      std::size_t part = g.parts.part_of_vertex[v];
      IntMatrix block = cx.require_face_map(t.vertices[v].sigma, E.sigma) *
                        g.cones[part].ev(g.parts.local_vertex[v]);
      th.add_block(row, s_off[part], block);
      IntVector u = side == 0 ? E.u : -E.u;
      for (std::size_t i = 0; i < r; ++i) {
        th(row + i, l_off + 2 * k + side) = u[i];
        th(row + i, n_off[k] + i) = -1;
      }
      row += r;
    }
  }
  return th;
}


// The four-point diagram of the gluing: the point of prod_flags X_E over
// which the punctured pieces (Q2) are glued to the diagonal (Q1).
inline PointDiagram gluing_point_diagram(const GluingData &g, const GluingProblem &p) {
  const auto &t = p.type.type;
  const auto &cx = p.complex;
  std::vector<Cone> flag_cones, edge_cones;
  for (auto e : g.edges) {
    const auto &c = cx.get(t.edges[e].sigma).cone;
    edge_cones.push_back(c);
    flag_cones.push_back(c);
    flag_cones.push_back(c);
  }
  Cone Pv = Cone::product(flag_cones), Q1v = Cone::product(edge_cones);

  // each component: coordinates (s, l_flag...) with s in tau_i, l >= 0 and
  // ev(s) + l u in sigma(E) for each of its flags
  std::vector<Cone> pieces;
  std::vector<std::vector<std::size_t>> flags_of(g.cones.size());
  for (std::size_t f = 0; f < g.parts.flags.size(); ++f)
    flags_of[g.parts.flags[f].part].push_back(f);
  for (std::size_t i = 0; i < g.cones.size(); ++i) {
    const auto &bc = g.cones[i];
    const std::size_t d = bc.dim(), n = d + flags_of[i].size();
    std::vector<IntVector> ineq, eq;
    auto pad = [&](const IntVector &x) {
      IntVector r(n);
      for (std::size_t j = 0; j < x.size(); ++j)
        r[j] = x[j];
      return r;
    };
    for (auto &f : bc.cone.facets())
      ineq.push_back(pad(f));
    for (auto &e : bc.cone.equations())
      eq.push_back(pad(e));
    const auto &part = g.parts.parts[i].type;
    for (std::size_t k = 0; k < flags_of[i].size(); ++k) {
      const auto &leg = part.legs[g.parts.flags[flags_of[i][k]].leg];
      IntVector len(n);
      len[d + k] = 1;
      ineq.push_back(len);
      IntMatrix ev = cx.require_face_map(part.vertices[leg.vertex].sigma, leg.sigma) * bc.ev(leg.vertex);
      for (auto &f : cx.get(leg.sigma).cone.facets()) {
        IntVector r(n);
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t a = 0; a < f.size(); ++a)
            r[j] += f[a] * ev(a, j);
        r[d + k] = dot(f, leg.u);
        ineq.push_back(r);
      }
    }
    pieces.push_back(Cone::from_inequalities(n, ineq, eq));
  }
  Cone Q2v = Cone::product(pieces);

  // transposes first: theta1^t is the diagonal, theta2^t evaluates each flag
  IntMatrix t1(Pv.ambient_rank(), Q1v.ambient_rank()), t2(Pv.ambient_rank(), Q2v.ambient_rank());
  std::size_t prow = 0, qcol = 0;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    std::size_t r = edge_cones[k].ambient_rank();
    for (int side = 0; side < 2; ++side)
      t1.set_block(prow + side * r, qcol, IntMatrix::identity(r));
    prow += 2 * r;
    qcol += r;
  }
  std::vector<std::size_t> flag_row(g.parts.flags.size());
  {
    std::size_t off = 0;
    for (std::size_t f = 0; f < g.parts.flags.size(); ++f) {
      flag_row[f] = off;
      off += cx.rank(t.edges[g.parts.flags[f].edge].sigma);
    }
  }
  std::size_t col = 0;
  for (std::size_t i = 0; i < g.cones.size(); ++i) {
    const auto &bc = g.cones[i];
    const auto &part = g.parts.parts[i].type;
    for (std::size_t k = 0; k < flags_of[i].size(); ++k) {
      std::size_t f = flags_of[i][k];
      const auto &leg = part.legs[g.parts.flags[f].leg];
      IntMatrix ev = cx.require_face_map(part.vertices[leg.vertex].sigma, leg.sigma) * bc.ev(leg.vertex);
      t2.set_block(flag_row[f], col, ev);
      for (std::size_t a = 0; a < leg.u.size(); ++a)
        t2(flag_row[f] + a, col + bc.dim() + k) = leg.u[a];
    }
    col += bc.dim() + flags_of[i].size();
  }
  PointDiagram d{FsSharpMonoid(Pv), FsSharpMonoid(Q1v), FsSharpMonoid(Q2v), t1.transpose(),
                 t2.transpose(), std::nullopt};
  d.primed = PrimedDiagram::trivial(Pv.ambient_rank(), Q1v.ambient_rank(), Q2v.ambient_rank());
  return d;
}

struct GluingReport {
  GluingData data;
  FGAbelian psi_cokernel;
  Integer mu = 1;
  bool transverse = false;
  std::size_t kernel_rank = 0;
  Nonemptiness nonempty = Nonemptiness::Unknown;
  std::optional<NonemptinessReport> criterion; // when the sufficient criterion ran
  std::string nonempty_reason;
};

inline GluingReport glue_verdict(const GluingProblem &p) {
  GluingReport r;
  r.data = assemble_gluing(p);
  r.psi_cokernel = cokernel(r.data.psi);
  r.mu = torsion_order(r.psi_cokernel);
  r.transverse = r.psi_cokernel.rank == 0;
  r.kernel_rank = kernel_lattice(r.data.psi).cols();
  if (r.transverse) {
    r.nonempty = Nonemptiness::GuaranteedNonempty;
    r.nonempty_reason = "tropically transverse";
    return r;
  }
  try {
    r.criterion = nonempty_sufficient(gluing_point_diagram(r.data, p));
    r.nonempty = r.criterion->verdict;
    r.nonempty_reason = r.nonempty == Nonemptiness::GuaranteedNonempty
                            ? "sufficient criterion holds"
                            : "sufficient criterion inconclusive";
  } catch (const DomainError &e) {
    r.nonempty_reason = std::string("sufficient criterion not applicable: ") + e.what();
  }
  return r;
}

struct ThetaPsiConsistency {
  FGAbelian psi, theta_t, diagram;
  bool ok = false;
};

// coker Psi against coker theta^t, assembled directly and read off the
// four-point diagram
inline ThetaPsiConsistency theta_psi_consistency(const GluingProblem &p) {
  auto g = assemble_gluing(p);
  ThetaPsiConsistency c;
  c.psi = cokernel(g.psi);
  c.theta_t = cokernel(build_theta_t(g, p));
  c.diagram = cokernel(gluing_point_diagram(g, p).theta().transpose());
  auto same = [](const FGAbelian &a, const FGAbelian &b) {
    return a.rank == b.rank && a.invariant_factors == b.invariant_factors;
  };
  c.ok = same(c.psi, c.theta_t) && same(c.psi, c.diagram);
  return c;
}

// ---- rigid types over a base ray ----

struct RigidReport {
  IntMatrix psi, psi_bar;
  FGAbelian psi_cokernel, psi_bar_cokernel;
  std::size_t kernel_rank = 0, kernel_bar_rank = 0;
  Integer mu_rigid = 1; // |coker psi_bar|_tors
  Integer mu = 1;       // |coker psi|_tors
  Integer m_tau = 1;
  Rational degree;
  bool transverse = false; // psi_bar has finite cokernel
  bool snake_ok = false;
};

inline RigidReport rigid_report(const TropicalType &t, const ConeComplex &cx) {
  if (!cx.has_delta())
    throw DomainError("rigid report needs the base map delta");
  t.validate(cx);
  if (!t.is_connected())
    throw DomainError("rigid type must be connected");
  BasicCone bc = basic_cone(t, cx);
  if (!bc.realizable)
    throw DomainError("type is not realizable");
  if (bc.dim() != 1)
    throw DomainError("type is not rigid: basic cone has dimension " + std::to_string(bc.dim()));
  RigidReport r;
  {
    IntVector d = cx.delta(t.vertices[0].sigma);
    IntVector pos = bc.ev(0).column(0);
    r.m_tau = abs(dot(d, pos));
    if (r.m_tau == 0)
      throw DomainError("type is not rigid over the base: delta vanishes on its cone");
  }

  std::vector<std::size_t> v_off, vb_off, e_off, eb_off;
  std::vector<IntMatrix> vbar, ebar;
  std::size_t nv = 0, nvb = 0, ne = 0, neb = 0;
  for (auto &v : t.vertices) {
    v_off.push_back(nv);
    vb_off.push_back(nvb);
    vbar.push_back(cx.delta_kernel(v.sigma));
    nv += cx.rank(v.sigma);
    nvb += vbar.back().cols();
  }
  for (auto &e : t.edges) {
    if (dot(cx.delta(e.sigma), e.u) != 0)
      throw DomainError("contact order of edge " + e.id + " is not vertical");
    e_off.push_back(ne);
    eb_off.push_back(neb);
    ebar.push_back(cx.delta_kernel(e.sigma));
    ne += cx.rank(e.sigma);
    neb += ebar.back().cols();
  }
  const std::size_t E = t.edges.size();
  r.psi = IntMatrix(ne, nv + E);
  r.psi_bar = IntMatrix(neb, nvb + E);
  auto in_bar = [](const IntMatrix &basis, const IntMatrix &m) {
    IntMatrix out(basis.cols(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto c = solve_integer(basis, m.column(j));
      if (!c)
        throw std::logic_error("vector outside the kernel of delta");
      for (std::size_t i = 0; i < c->size(); ++i)
        out(i, j) = (*c)[i];
    }
    return out;
  };
  for (std::size_t k = 0; k < E; ++k) {
    const auto &e = t.edges[k];
    for (auto [v, sign] : {std::pair{e.tail, 1}, std::pair{e.head, -1}}) {
      IntMatrix iota = cx.require_face_map(t.vertices[v].sigma, e.sigma);
      r.psi.add_block(e_off[k], v_off[v], iota, sign);
      r.psi_bar.add_block(eb_off[k], vb_off[v], in_bar(ebar[k], iota * vbar[v]), sign);
    }
    for (std::size_t i = 0; i < e.u.size(); ++i)
      r.psi(e_off[k] + i, nv + k) = e.u[i];
    IntMatrix ub = in_bar(ebar[k], IntMatrix::from_columns({e.u}));
    for (std::size_t i = 0; i < ub.rows(); ++i)
      r.psi_bar(eb_off[k] + i, nvb + k) = ub(i, 0);
  }
  r.psi_cokernel = cokernel(r.psi);
  r.psi_bar_cokernel = cokernel(r.psi_bar);
  r.kernel_rank = kernel_lattice(r.psi).cols();
  r.kernel_bar_rank = kernel_lattice(r.psi_bar).cols();
  r.mu = torsion_order(r.psi_cokernel);
  r.mu_rigid = torsion_order(r.psi_bar_cokernel);
  r.degree = Rational(r.mu_rigid, r.m_tau);
  r.transverse = r.psi_bar_cokernel.rank == 0;
  r.snake_ok = r.mu_rigid == r.m_tau * r.mu;
  return r;
}

// ---- flatness ----

struct FlatnessCandidate {
  TropicalType type;
  Contraction phi; // candidate -> the type under test
};

struct FlatnessEntry {
  bool realizable = false;
  std::size_t dim = 0;
  long long required = 0; // right-hand side of the inequality
  bool holds = true;
};

struct FlatnessReport {
  bool flat = true;
  std::optional<std::size_t> violation; // first failing candidate
  std::size_t dim = 0;
  std::vector<FlatnessEntry> entries;
};

// dim tau' >= dim tau + sum_{L in legs} (dim sigma'(L) - dim sigma(L)) for
// every realizable candidate; non-realizable candidates are recorded and skipped
inline FlatnessReport flatness_check(const TropicalType &t, const ConeComplex &cx,
                                     const std::vector<std::size_t> &legs,
                                     const std::vector<FlatnessCandidate> &candidates) {
  FlatnessReport r;
  for (auto l : legs)
    if (l >= t.legs.size())
      throw DomainError("flatness leg out of range");
  BasicCone bc = basic_cone(t, cx);
  if (!bc.realizable)
    throw DomainError("type is not realizable");
  r.dim = bc.dim();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto &cand = candidates[c];
    auto verdict = contraction_check(cand.type, t, cand.phi, cx);
    if (!verdict.ok)
      throw DomainError("candidate " + std::to_string(c) + " is not a contraction: " + verdict.reason);
    FlatnessEntry e;
    BasicCone cb = basic_cone(cand.type, cx);
    e.realizable = cb.realizable;
    e.dim = cb.dim();
    e.required = static_cast<long long>(r.dim);
    for (auto l : legs) {
      std::size_t pre = std::find(cand.phi.leg_map.begin(), cand.phi.leg_map.end(), l) -
                        cand.phi.leg_map.begin();
      e.required += static_cast<long long>(cx.rank(cand.type.legs[pre].sigma)) -
                    static_cast<long long>(cx.rank(t.legs[l].sigma));
    }
    e.holds = !e.realizable || static_cast<long long>(e.dim) >= e.required;
    if (!e.holds && r.flat) {
      r.flat = false;
      r.violation = c;
    }
    r.entries.push_back(e);
  }
  return r;
}

// Candidates on the same graph: every cell moves to a cone having its old
// cone as a face, vertex cones staying faces of the adjacent cones.
inline std::vector<FlatnessCandidate> cone_generizations(const TropicalType &t, const ConeComplex &cx,
                                                         std::size_t limit = 20000) {
  std::vector<std::string> ids;
  for (auto &c : cx.cones())
    ids.push_back(c.id);
  auto above = [&](const std::string &s) {
    std::vector<std::string> out;
    for (auto &id : ids)
      if (cx.is_face(s, id))
        out.push_back(id);
    return out;
  };
  std::vector<FlatnessCandidate> out;
  TropicalType cur = t;
  std::size_t nv = t.vertices.size(), ne = t.edges.size(), nl = t.legs.size();
  std::function<void(std::size_t)> rec = [&](std::size_t slot) {
    if (out.size() > limit)
      throw DomainError("too many flatness candidates");
    if (slot == nv + ne + nl) {
      FlatnessCandidate c{cur, identity_contraction(cur)};
      for (std::size_t e = 0; e < ne; ++e)
        c.type.edges[e].u = cx.require_face_map(t.edges[e].sigma, cur.edges[e].sigma) * t.edges[e].u;
      for (std::size_t l = 0; l < nl; ++l)
        c.type.legs[l].u = cx.require_face_map(t.legs[l].sigma, cur.legs[l].sigma) * t.legs[l].u;
      out.push_back(std::move(c));
      return;
    }
    if (slot < nv) {
      for (auto &s : above(t.vertices[slot].sigma)) {
        cur.vertices[slot].sigma = s;
        rec(slot + 1);
      }
    } else if (slot < nv + ne) {
      const auto &e = t.edges[slot - nv];
      for (auto &s : above(e.sigma))
        if (cx.is_face(cur.vertices[e.tail].sigma, s) && cx.is_face(cur.vertices[e.head].sigma, s)) {
          cur.edges[slot - nv].sigma = s;
          rec(slot + 1);
        }
    } else {
      const auto &l = t.legs[slot - nv - ne];
      for (auto &s : above(l.sigma))
        if (cx.is_face(cur.vertices[l.vertex].sigma, s)) {
          cur.legs[slot - nv - ne].sigma = s;
          rec(slot + 1);
        }
    }
  };
  rec(0);
  return out;
}

} // namespace tropglue
