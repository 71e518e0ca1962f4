#pragma once

#include "tropglue/basic_cone.hpp"

namespace tropglue {

// Sum of outgoing contact orders at v, compared in a common lattice: the
// global lattice of an embedded complex, the given cone, or the smallest cone
// having all adjacent cones as faces. With `modulo`, the sum only has to lie
// in the span of those vectors.
inline bool check_balancing(const TropicalType &t, const ConeComplex &cx, std::size_t v,
                            const std::optional<std::string> &ambient = std::nullopt,
                            const std::vector<IntVector> &modulo = {}) {
  auto flags = t.flags_at(v);
  IntVector sum;
  if (!ambient && cx.global_rank()) {
    sum = IntVector(*cx.global_rank());
    for (auto &f : flags)
      sum = sum + cx.to_global(f.sigma, f.u);
  } else {
    std::optional<std::string> host = ambient;
    if (!host) {
      std::vector<std::string> ids;
      for (auto &f : flags)
        ids.push_back(f.sigma);
      if (ids.empty())
        ids.push_back(t.vertices[v].sigma);
      host = cx.common_cone(ids);
    }
    if (!host)
      throw DomainError("no common cone for the flags at vertex " + t.vertices[v].id);
    sum = IntVector(cx.rank(*host));
    for (auto &f : flags)
      sum = sum + cx.require_face_map(f.sigma, *host) * f.u;
  }
  if (modulo.empty())
    return is_zero(sum);
  return solve_integer(IntMatrix::from_columns(modulo, sum.size()), sum).has_value();
}

// coefficient of D_j^* summed over the flags at v; each flag's cone must be
// a unimodular chart whose generators carry divisor labels
inline Integer degree_from_contacts(const TropicalType &t, const ConeComplex &cx, std::size_t v,
                                    const std::string &divisor) {
  Integer deg = 0;
  for (auto &f : t.flags_at(v)) {
    const auto &c = cx.get(f.sigma);
    if (c.divisors.empty())
      throw DomainError("cone " + c.id + " carries no divisor labels");
    auto a = solve_integer(IntMatrix::from_columns(c.cone.generators(), c.rank()), f.u);
    if (!a || c.cone.generators().size() != c.rank())
      throw DomainError("cone " + c.id + " is not a unimodular chart");
    for (std::size_t i = 0; i < a->size(); ++i)
      if (c.divisors[i] == divisor)
        deg += (*a)[i];
  }
  return deg;
}

// phi: src -> dst, a contraction of graphs. edge_map[e] == nullopt when e is
// contracted. Legs map bijectively.
struct Contraction {
  std::vector<std::size_t> vertex_map;
  std::vector<std::optional<std::size_t>> edge_map;
  std::vector<std::size_t> leg_map;
};

struct ContractionVerdict {
  bool ok = true;
  std::string reason;
};

inline ContractionVerdict contraction_check(const TropicalType &src, const TropicalType &dst,
                                            const Contraction &phi, const ConeComplex &cx) {
  auto fail = [](std::string why) { return ContractionVerdict{false, std::move(why)}; };
  // graph-level structure; violations are errors, not verdicts
  if (phi.vertex_map.size() != src.vertices.size() || phi.edge_map.size() != src.edges.size() ||
      phi.leg_map.size() != src.legs.size() || src.legs.size() != dst.legs.size())
    throw DomainError("contraction map has wrong size");
  std::vector<bool> hit(dst.vertices.size()), edge_hit(dst.edges.size()), leg_hit(dst.legs.size());
  for (auto w : phi.vertex_map) {
    if (w >= dst.vertices.size())
      throw DomainError("contraction vertex image out of range");
    hit[w] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end())
    throw DomainError("contraction is not surjective on vertices");
  std::vector<bool> keep(src.edges.size());
  for (std::size_t e = 0; e < src.edges.size(); ++e) {
    const auto &E = src.edges[e];
    std::size_t a = phi.vertex_map[E.tail], b = phi.vertex_map[E.head];
    if (!phi.edge_map[e]) {
      if (a != b)
        throw DomainError("contracted edge " + E.id + " joins different image vertices");
      keep[e] = true; // contracted edges glue preimages
      continue;
    }
    std::size_t f = *phi.edge_map[e];
    if (f >= dst.edges.size() || edge_hit[f])
      throw DomainError("edge map is not a bijection onto the target edges");
    edge_hit[f] = true;
    const auto &F = dst.edges[f];
    if (!((a == F.tail && b == F.head) || (a == F.head && b == F.tail)))
      throw DomainError("edge " + E.id + " does not map to an edge between the image vertices");
  }
  if (std::find(edge_hit.begin(), edge_hit.end(), false) != edge_hit.end())
    throw DomainError("edge map is not surjective");
  for (std::size_t l = 0; l < src.legs.size(); ++l) {
    std::size_t m = phi.leg_map[l];
    if (m >= dst.legs.size() || leg_hit[m])
      throw DomainError("leg map is not a bijection");
    leg_hit[m] = true;
    if (dst.legs[m].vertex != phi.vertex_map[src.legs[l].vertex])
      throw DomainError("leg " + src.legs[l].id + " is not attached to the image vertex");
  }
  // fibres over each target vertex are connected through contracted edges
  std::size_t count = 0;
  auto comp = src.components(keep, count);
  if (count != dst.vertices.size())
    throw DomainError("contraction fibres are not connected");
  for (std::size_t v = 0; v < src.vertices.size(); ++v)
    for (std::size_t w = 0; w < src.vertices.size(); ++w)
      if ((comp[v] == comp[w]) != (phi.vertex_map[v] == phi.vertex_map[w]))
        throw DomainError("contraction fibres are not connected");

  // genus: g(w) = sum of g over the fibre + loops created
  for (std::size_t w = 0; w < dst.vertices.size(); ++w) {
    std::size_t g = 0, nv = 0, ne = 0;
    for (std::size_t v = 0; v < src.vertices.size(); ++v)
      if (phi.vertex_map[v] == w) {
        g += src.vertices[v].genus;
        ++nv;
      }
    for (std::size_t e = 0; e < src.edges.size(); ++e)
      if (!phi.edge_map[e] && phi.vertex_map[src.edges[e].tail] == w)
        ++ne;
    if (dst.vertices[w].genus != g + ne + 1 - nv)
      return fail("genus is not preserved at " + dst.vertices[w].id);
  }

  // cones: sigma_dst(phi(x)) is a face of sigma_src(x); contact orders agree
  for (std::size_t v = 0; v < src.vertices.size(); ++v)
    if (!cx.is_face(dst.vertices[phi.vertex_map[v]].sigma, src.vertices[v].sigma))
      return fail("cone of vertex " + src.vertices[v].id + " does not contain its image cone");
  for (std::size_t e = 0; e < src.edges.size(); ++e) {
    const auto &E = src.edges[e];
    if (!phi.edge_map[e]) {
      if (!cx.is_face(dst.vertices[phi.vertex_map[E.tail]].sigma, E.sigma))
        return fail("contracted edge " + E.id + " violates the face condition");
      continue;
    }
    const auto &F = dst.edges[*phi.edge_map[e]];
    auto iota = cx.face_map(F.sigma, E.sigma);
    if (!iota)
      return fail("cone of edge " + E.id + " does not contain its image cone");
    IntVector image = *iota * F.u;
    bool same = phi.vertex_map[E.tail] == F.tail;
    bool ok = same ? image == E.u : image == -E.u;
    if (F.tail == F.head)
      ok = image == E.u || image == -E.u;
    if (!ok)
      return fail("contact order of edge " + E.id + " changes");
  }
  for (std::size_t l = 0; l < src.legs.size(); ++l) {
    const auto &L = src.legs[l];
    const auto &M = dst.legs[phi.leg_map[l]];
    auto iota = cx.face_map(M.sigma, L.sigma);
    if (!iota)
      return fail("cone of leg " + L.id + " does not contain its image cone");
    if (*iota * M.u != L.u)
      return fail("contact order of leg " + L.id + " changes");
  }
  return {};
}

inline Contraction identity_contraction(const TropicalType &t) {
  Contraction c;
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    c.vertex_map.push_back(v);
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    c.edge_map.push_back(e);
  for (std::size_t l = 0; l < t.legs.size(); ++l)
    c.leg_map.push_back(l);
  return c;
}

namespace detail {

using EdgeKey = std::pair<std::string, IntVector>;

inline std::map<std::pair<std::size_t, std::size_t>, std::multiset<EdgeKey>>
edge_table(const TropicalType &t) {
  std::map<std::pair<std::size_t, std::size_t>, std::multiset<EdgeKey>> tab;
  for (auto &e : t.edges) {
    IntVector u = e.u;
    if (e.tail == e.head)
      u = std::max(u, IntVector(-u));
    tab[{e.tail, e.head}].insert({e.sigma, u});
  }
  return tab;
}

inline Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i)
    f *= i;
  return f;
}

inline Integer multiset_symmetries(const std::multiset<EdgeKey> &s) {
  Integer r = 1;
  for (auto it = s.begin(); it != s.end(); it = s.upper_bound(*it))
    r *= factorial(s.count(*it));
  return r;
}

// Counts isomorphisms a -> b (stop_at_one: only decide existence). Legs are
// matched by id when `labeled_legs`, otherwise by their data.
inline Integer count_isomorphisms(const DecoratedType &a, const DecoratedType &b, bool labeled_legs,
                                  bool stop_at_one) {
  const auto &ta = a.type, &tb = b.type;
  const std::size_t n = ta.vertices.size();
  if (n > 12)
    throw DomainError("automorphism search limited to 12 vertices");
  if (n != tb.vertices.size() || ta.edges.size() != tb.edges.size() || ta.legs.size() != tb.legs.size())
    return 0;
  auto tab_a = edge_table(ta), tab_b = edge_table(tb);
  using LegKey = std::pair<std::string, IntVector>;
  auto legs_at = [&](const TropicalType &t, std::size_t v) {
    std::multiset<LegKey> s;
    for (auto &l : t.legs)
      if (l.vertex == v)
        s.insert({l.sigma, l.u});
    return s;
  };
  auto signature = [&](const DecoratedType &d, std::size_t v) {
    std::size_t deg = 0;
    for (auto &e : d.type.edges)
      deg += (e.tail == v) + (e.head == v);
    return std::make_tuple(d.type.vertices[v].genus, d.type.vertices[v].sigma, d.classes[v], deg,
                           legs_at(d.type, v));
  };
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (signature(a, v) == signature(b, w))
        candidates[v].push_back(w);

  auto mapped_edges = [&](std::size_t x, std::size_t y, const std::vector<std::size_t> &pi) {
    std::multiset<EdgeKey> out;
    auto it = tab_a.find({x, y});
    if (it == tab_a.end())
      return out;
    std::size_t px = pi[x], py = pi[y];
    for (auto &[sigma, u] : it->second) {
      IntVector w = u;
      if (px == py)
        w = std::max(u, IntVector(-u));
      else if (px > py)
        w = -u;
      out.insert({sigma, w});
    }
    return out;
  };
  auto target_edges = [&](std::size_t x, std::size_t y) {
    auto it = tab_b.find({std::min(x, y), std::max(x, y)});
    return it == tab_b.end() ? std::multiset<EdgeKey>{} : it->second;
  };

  Integer total = 0;
  std::vector<std::size_t> pi(n);
  std::vector<bool> used(n);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (stop_at_one && total > 0)
      return;
    if (v == n) {
      Integer mult = 1;
      for (auto &[key, s] : tab_b)
        mult *= multiset_symmetries(s);
      if (labeled_legs) {
        for (auto &l : ta.legs) {
          auto m = tb.find_leg(l.id);
          if (!m || tb.legs[*m].vertex != pi[l.vertex] || tb.legs[*m].sigma != l.sigma ||
              tb.legs[*m].u != l.u)
            return;
        }
      } else {
        for (std::size_t w = 0; w < n; ++w) {
          auto s = legs_at(tb, w);
          for (auto it = s.begin(); it != s.end(); it = s.upper_bound(*it))
            mult *= factorial(s.count(*it));
        }
      }
      total += mult;
      return;
    }
    for (auto w : candidates[v]) {
      if (used[w])
        continue;
      pi[v] = w;
      used[w] = true;
      bool ok = true;
      for (std::size_t x = 0; x <= v && ok; ++x) {
        std::size_t lo = std::min(x, v), hi = std::max(x, v);
        ok = mapped_edges(lo, hi, pi) == target_edges(pi[lo], pi[hi]);
      }
      if (ok)
        rec(v + 1);
      used[w] = false;
    }
  };
  rec(0);
  return total;
}

} // namespace detail

inline Integer automorphism_count(const DecoratedType &t) {
  return detail::count_isomorphisms(t, t, true, false);
}

// legs are matched by their data, not their names
inline bool is_isomorphic(const DecoratedType &a, const DecoratedType &b) {
  return detail::count_isomorphisms(a, b, false, true) > 0;
}

// number of permutations s of {1..q} with t_i isomorphic to t_s(i)
inline Integer tuple_automorphism_count(const std::vector<DecoratedType> &ts) {
  std::vector<std::size_t> cls(ts.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::size_t c = reps.size();
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (is_isomorphic(ts[reps[r]], ts[i])) {
        c = r;
        break;
      }
    if (c == reps.size())
      reps.push_back(i);
    cls[i] = c;
  }
  Integer out = 1;
  for (std::size_t r = 0; r < reps.size(); ++r)
    out *= detail::factorial(std::count(cls.begin(), cls.end(), r));
  return out;
}

} // namespace tropglue
