#pragma once

#include "tropglue/basic_cone.hpp"

namespace tropglue {

// A type pushed forward along the quotient N_sigma(x) -> N_sigma(x)/Z v_ray.
// Cone ids are kept; each cone of the quotient complex is the image of the
// original one.
struct ProjectedType {
  std::string ray;
  ConeComplex quotient;
  TropicalType type;
  std::map<std::string, QuotientByVector> charts;
  std::map<std::string, IntVector> ray_vector; // v_ray inside each N_sigma
  std::vector<bool> leg_positive;              // projected leg order lies in its projected cone
  bool positive = true;
};

inline ProjectedType project_type_along_ray(const TropicalType &t, const ConeComplex &cx,
                                            const std::string &ray) {
  t.validate(cx);
  if (cx.rank(ray) != 1)
    throw DomainError("projection needs a one-dimensional cone");
  ProjectedType p;
  p.ray = ray;
  std::set<std::string> used;
  for (auto &v : t.vertices)
    used.insert(v.sigma);
  for (auto &e : t.edges)
    used.insert(e.sigma);
  for (auto &l : t.legs)
    used.insert(l.sigma);
  const IntVector ray_gen = cx.get(ray).cone.generators().at(0);
  for (auto &id : used) {
    auto m = cx.face_map(ray, id);
    if (!m)
      throw DomainError("cone " + id + " does not contain the ray " + ray);
    IntVector v = *m * ray_gen;
    auto q = quotient_by_vector(primitive(v));
    const auto &c = cx.get(id);
    std::vector<IntVector> gens;
    for (auto &g : c.cone.generators())
      gens.push_back(q.quotient * g);
    p.quotient.add_cone({id, Cone(c.rank() - 1, gens), std::nullopt, {}, std::nullopt});
    p.charts.emplace(id, q);
    p.ray_vector.emplace(id, v);
  }
  for (auto &a : used)
    for (auto &b : used) {
      if (a == b)
        continue;
      auto m = cx.face_map(a, b);
      if (!m)
        continue;
      // only record covering relations; composites follow
      bool covering = true;
      for (auto &c : used)
        if (c != a && c != b && cx.is_face(a, c) && cx.is_face(c, b))
          covering = false;
      if (covering)
        p.quotient.add_face(a, b, p.charts.at(b).quotient * *m * p.charts.at(a).lift);
    }
  for (auto &v : t.vertices)
    p.type.add_vertex(v.id, v.sigma, v.genus);
  for (auto &e : t.edges)
    p.type.add_edge(e.id, e.tail, e.head, e.sigma, p.charts.at(e.sigma).quotient * e.u);
  for (auto &l : t.legs) {
    IntVector u = p.charts.at(l.sigma).quotient * l.u;
    bool pos = p.quotient.get(l.sigma).cone.contains(u);
    p.leg_positive.push_back(pos);
    p.positive = p.positive && pos;
    p.type.add_leg(l.id, l.vertex, l.sigma, u);
  }
  return p;
}

// alpha = max(0, f_1, ..., f_k) on the basic cone of the projected type, and
// the cone {(s, r) : s in that cone, r >= alpha(s)}
struct LiftCone {
  ProjectedType projected;
  BasicCone base;                 // basic cone of the projected type
  std::vector<RatVector> functionals; // on N_base coordinates; zero functional implicit
  Cone cone;                      // coordinates (N_base, r)

  Rational alpha(const IntVector &s) const {
    Rational best = 0;
    for (auto &f : functionals) {
      Rational v = 0;
      for (std::size_t i = 0; i < s.size(); ++i)
        v += f[i] * s[i];
      best = std::max(best, v);
    }
    return best;
  }
};

inline LiftCone relative_lift_cone(const TropicalType &t, const ConeComplex &cx, const std::string &ray) {
  LiftCone lc{project_type_along_ray(t, cx, ray), {}, {}, {}};
  lc.base = basic_cone(lc.projected.type, lc.projected.quotient);
  const std::size_t d = lc.base.dim();
  std::set<std::vector<std::string>> seen;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    const auto &sigma = t.vertices[v].sigma;
    const auto &c = cx.get(sigma);
    if (!c.delta)
      throw DomainError("relative lift needs the base map on cone " + sigma);
    const IntVector &delta = *c.delta;
    const IntVector &rv = lc.projected.ray_vector.at(sigma);
    const auto &chart = lc.projected.charts.at(sigma);
    IntMatrix ev = lc.base.ev(v); // N_base -> N_sigma / Z v
    for (auto &n : c.cone.facets()) {
      Integer nv = dot(n, rv);
      if (nv == 0)
        continue; // facet contains the ray
      bool surjects = false;
      for (auto &g : c.cone.generators())
        if (dot(n, g) == 0 && dot(delta, g) != 0)
          surjects = true;
      if (!surjects)
        continue;
      // f = delta - (delta(v)/n(v)) n vanishes on v and descends to the quotient
      Rational scale(dot(delta, rv), nv);
      RatVector f(c.rank());
      for (std::size_t i = 0; i < c.rank(); ++i)
        f[i] = Rational(delta[i]) - scale * Rational(n[i]);
      RatVector fq(chart.lift.cols());
      for (std::size_t j = 0; j < chart.lift.cols(); ++j)
        for (std::size_t i = 0; i < c.rank(); ++i)
          fq[j] += f[i] * Rational(chart.lift(i, j));
      RatVector fs(d);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < fq.size(); ++i)
          fs[j] += fq[i] * Rational(ev(i, j));
      std::vector<std::string> key;
      for (auto &x : fs)
        key.push_back(to_string(x));
      if (seen.insert(key).second)
        lc.functionals.push_back(fs);
    }
  }
  std::vector<IntVector> rows;
  for (auto &f : lc.base.cone.facets()) {
    IntVector r = f;
    r.push_back(0);
    rows.push_back(r);
  }
  std::vector<IntVector> eqs;
  for (auto &e : lc.base.cone.equations()) {
    IntVector r = e;
    r.push_back(0);
    eqs.push_back(r);
  }
  IntVector r0(d + 1);
  r0[d] = 1;
  rows.push_back(r0);
  for (auto &f : lc.functionals) {
    // r - f(s) >= 0, denominators cleared
    RatVector g(d + 1);
    for (std::size_t i = 0; i < d; ++i)
      g[i] = -f[i];
    g[d] = 1;
    rows.push_back(clear_denominators(g));
  }
  lc.cone = Cone::from_inequalities(d + 1, rows, eqs);
  return lc;
}

} // namespace tropglue
