#pragma once

#include "tropglue/gluing.hpp"

namespace tropglue {

struct WallCheckOptions {
  // dimension of the target; balancing is only required at vertices whose
  // cone has codimension at most one in it
  std::size_t dimension = 3;
};

struct WallVerdict {
  bool genus_zero = false, single_leg = false, leg_nonzero = false;
  bool realizable = false, balanced = false;
  std::size_t dim_tau = 0, dim_out = 0;
  bool clause1 = false, clause2 = false, clause3 = false;
  bool valid = false;
  std::vector<std::string> problems;
};

namespace detail {

inline std::size_t out_vertex(const TropicalType &t) { return t.legs.at(0).vertex; }

} // namespace detail

inline WallVerdict validate_wall_type(const DecoratedType &dt, const ConeComplex &cx,
                                      const WallCheckOptions &opt = {}) {
  const auto &t = dt.type;
  t.validate(cx);
  WallVerdict w;
  w.genus_zero = !t.vertices.empty() && t.is_connected() && t.total_genus() == 0 && t.loop_rank() == 0;
  w.single_leg = t.legs.size() == 1;
  w.leg_nonzero = w.single_leg && !is_zero(t.legs[0].u);
  w.clause1 = w.genus_zero && w.single_leg && w.leg_nonzero;
  if (!w.genus_zero)
    w.problems.push_back("graph is not a connected genus zero tree");
  if (!w.single_leg)
    w.problems.push_back("expected exactly one leg, found " + std::to_string(t.legs.size()));
  else if (!w.leg_nonzero)
    w.problems.push_back("contact order of the leg is zero");

  BasicCone bc = basic_cone(t, cx);
  w.realizable = bc.realizable;
  if (!w.realizable)
    w.problems.push_back("type is not realizable");
  w.balanced = true;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    std::size_t r = cx.rank(t.vertices[v].sigma);
    if (r + 1 < opt.dimension)
      continue;
    if (!check_balancing(t, cx, v)) {
      w.balanced = false;
      w.problems.push_back("not balanced at vertex " + t.vertices[v].id);
    }
  }
  w.clause2 = w.realizable && w.balanced;

  w.dim_tau = bc.dim();
  if (w.single_leg)
    w.dim_out = rank(leg_evaluation(t, cx, bc, 0));
  w.clause3 = w.dim_tau == 1 && w.dim_out == 2;
  if (w.dim_tau != 1)
    w.problems.push_back("basic cone has dimension " + std::to_string(w.dim_tau));
  if (w.single_leg && w.dim_out != 2)
    w.problems.push_back("image of the leg cone has dimension " + std::to_string(w.dim_out));
  w.valid = w.clause1 && w.clause2 && w.clause3;
  return w;
}

struct KTauReport {
  IntMatrix h;          // N_tau + Z -> N_sigma(L_out)
  FGAbelian cokernel;
  Integer k = 1;
};

inline KTauReport k_tau_report(const DecoratedType &dt, const ConeComplex &cx, const WallCheckOptions &opt = {}) {
  auto v = validate_wall_type(dt, cx, opt);
  if (!v.valid) {
    std::string msg = "not a wall type:";
    for (auto &p : v.problems)
      msg += " " + p + ";";
    throw DomainError(msg);
  }
  KTauReport r;
  r.h = leg_evaluation(dt.type, cx, basic_cone(dt.type, cx), 0);
  r.cokernel = cokernel(r.h);
  r.k = torsion_order(r.cokernel);
  return r;
}

inline Integer k_tau(const DecoratedType &dt, const ConeComplex &cx, const WallCheckOptions &opt = {}) {
  return k_tau_report(dt, cx, opt).k;
}

// the one-vertex type seen from the vertex out of the wall: flags quotiented
// by the ray through its position
struct TauOutLeg {
  std::string id;       // edge or leg of the original type
  IntVector u;          // contact order in the quotient lattice
  IntVector ray;        // primitive generator of its ray
  Integer weight;       // index of u
};

struct TauOutClass {
  std::string vertex;
  std::string sigma_x;  // cone of the vertex
  IntVector position;   // global position of the vertex at the basic cone generator
  IntVector v_x;        // primitive generator of the ray through it
  IntMatrix quotient;   // global lattice -> global lattice / Z v_x
  std::vector<TauOutLeg> legs;
  std::vector<IntVector> rays;         // distinct rays, sorted
  std::vector<Integer> intersections;  // per ray, sum of weights of legs on it
  bool balanced = false;               // projected orders sum to zero
};

inline TauOutClass tau_out_at(const TropicalType &t, const ConeComplex &cx, std::size_t v) {
  t.validate(cx);
  if (!cx.global_rank())
    throw DomainError("tau_out needs an embedded complex");
  BasicCone bc = basic_cone(t, cx);
  if (bc.dim() != 1)
    throw DomainError("tau_out needs a one-dimensional basic cone, found " + std::to_string(bc.dim()));
  IntVector gen = bc.cone.generators().at(0);
  TauOutClass out;
  out.vertex = t.vertices[v].id;
  out.sigma_x = t.vertices[v].sigma;
  out.position = cx.to_global(out.sigma_x, bc.ev(v) * gen);
  if (is_zero(out.position))
    throw DomainError("vertex " + out.vertex + " sits at the origin");
  out.v_x = primitive(out.position);
  auto q = quotient_by_vector(out.v_x);
  out.quotient = q.quotient;
  IntVector sum(out.quotient.rows());
  for (auto &f : t.flags_at(v)) {
    const std::string &id = f.kind == Flag::Leg ? t.legs[f.index].id : t.edges[f.index].id;
    IntVector u = out.quotient * cx.to_global(f.sigma, f.u);
    if (is_zero(u))
      throw DomainError("the image of the cone of " + id + " is not two-dimensional");
    sum = sum + u;
    out.legs.push_back({id, u, primitive(u), vector_index(u)});
  }
  out.balanced = is_zero(sum);
  std::map<IntVector, Integer> by_ray;
  for (auto &l : out.legs)
    by_ray[l.ray] += l.weight;
  for (auto &[ray, w] : by_ray) {
    out.rays.push_back(ray);
    out.intersections.push_back(w);
  }
  return out;
}

inline TauOutClass build_tau_out(const DecoratedType &dt, const ConeComplex &cx, const WallCheckOptions &opt = {}) {
  auto v = validate_wall_type(dt, cx, opt);
  if (!v.valid)
    throw DomainError("not a wall type");
  return tau_out_at(dt.type, cx, detail::out_vertex(dt.type));
}

struct ClassicalCoefficient {
  RigidReport rigid;
  Integer weight_product = 1;
  Rational coefficient;
  bool transverse = true;
};

// two components: every vertex on one of two rays, every edge running from
// one ray to the other through a cone containing both
inline ClassicalCoefficient classical_coefficient(const TropicalType &t, const ConeComplex &cx) {
  t.validate(cx);
  std::set<std::string> rays;
  for (auto &v : t.vertices) {
    if (cx.rank(v.sigma) != 1)
      throw DomainError("vertex " + v.id + " is not on a ray");
    rays.insert(v.sigma);
  }
  if (rays.size() != 2)
    throw DomainError("vertices must lie on exactly two rays");
  for (auto &e : t.edges) {
    const auto &a = t.vertices[e.tail].sigma, &b = t.vertices[e.head].sigma;
    if (a == b || !cx.is_face(a, e.sigma) || !cx.is_face(b, e.sigma))
      throw DomainError("edge " + e.id + " does not run between the two rays");
    if (cx.rank(e.sigma) != 2)
      throw DomainError("edge " + e.id + " does not lie in the two-cone of the rays");
  }
  ClassicalCoefficient c;
  c.rigid = rigid_report(t, cx);
  for (auto &e : t.edges)
    c.weight_product *= vector_index(e.u);
  c.coefficient = Rational(c.weight_product, c.rigid.m_tau);
  c.transverse = c.rigid.transverse;
  return c;
}

} // namespace tropglue
