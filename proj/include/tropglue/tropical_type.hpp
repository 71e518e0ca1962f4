#pragma once

#include "tropglue/cone_complex.hpp"

#include <numeric>

namespace tropglue {

// intersection numbers with labeled boundary divisors
struct CurveClass {
  std::map<std::string, Integer> intersections;
  bool operator==(const CurveClass &) const = default;
  bool operator<(const CurveClass &o) const { return intersections < o.intersections; }
};

struct TypeVertex {
  std::string id;
  unsigned genus = 0;
  std::string sigma;
};

// stored with tail <= head; u points from tail to head
struct TypeEdge {
  std::string id;
  std::size_t tail = 0, head = 0;
  std::string sigma;
  IntVector u;
};

struct TypeLeg {
  std::string id;
  std::size_t vertex = 0;
  std::string sigma;
  IntVector u;
};

// a half-edge or leg seen from a vertex, contact order pointing away from it
struct Flag {
  enum Kind { EdgeTail, EdgeHead, Leg } kind;
  std::size_t index;
  std::string sigma;
  IntVector u;
};

class TropicalType {
public:
  std::vector<TypeVertex> vertices;
  std::vector<TypeEdge> edges;
  std::vector<TypeLeg> legs;

  std::size_t add_vertex(std::string id, std::string sigma, unsigned genus = 0) {
    if (find_vertex(id))
      throw DomainError("duplicate vertex id: " + id);
    vertices.push_back({std::move(id), genus, std::move(sigma)});
    return vertices.size() - 1;
  }

  // orientation is canonicalized: lower vertex index first, u flipped to match
  std::size_t add_edge(std::string id, std::size_t a, std::size_t b, std::string sigma, IntVector u) {
    if (a >= vertices.size() || b >= vertices.size())
      throw DomainError("edge " + id + " references an unknown vertex");
    if (a > b) {
      std::swap(a, b);
      u = -u;
    }
    edges.push_back({std::move(id), a, b, std::move(sigma), std::move(u)});
    return edges.size() - 1;
  }

  std::size_t add_leg(std::string id, std::size_t v, std::string sigma, IntVector u) {
    if (v >= vertices.size())
      throw DomainError("leg " + id + " references an unknown vertex");
    legs.push_back({std::move(id), v, std::move(sigma), std::move(u)});
    return legs.size() - 1;
  }

  std::optional<std::size_t> find_vertex(const std::string &id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].id == id)
        return i;
    return std::nullopt;
  }
  std::optional<std::size_t> find_edge(const std::string &id) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].id == id)
        return i;
    return std::nullopt;
  }
  std::optional<std::size_t> find_leg(const std::string &id) const {
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (legs[i].id == id)
        return i;
    return std::nullopt;
  }

  std::vector<Flag> flags_at(std::size_t v) const {
    std::vector<Flag> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].tail == v)
        out.push_back({Flag::EdgeTail, i, edges[i].sigma, edges[i].u});
      if (edges[i].head == v)
        out.push_back({Flag::EdgeHead, i, edges[i].sigma, -edges[i].u});
    }
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (legs[i].vertex == v)
        out.push_back({Flag::Leg, i, legs[i].sigma, legs[i].u});
    return out;
  }

  // connected components via the given edge mask (true = keep edge)
  std::vector<std::size_t> components(const std::vector<bool> &keep, std::size_t &count) const {
    std::vector<std::size_t> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (keep[i])
        parent[find(edges[i].tail)] = find(edges[i].head);
    std::map<std::size_t, std::size_t> label;
    std::vector<std::size_t> comp(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      auto r = find(v);
      if (!label.count(r))
        label.emplace(r, label.size());
      comp[v] = label.at(r);
    }
    count = label.size();
    return comp;
  }

  bool is_connected() const {
    std::size_t n = 0;
    components(std::vector<bool>(edges.size(), true), n);
    return n <= 1;
  }

  // first Betti number of the graph
  std::size_t loop_rank() const {
    std::size_t n = 0;
    components(std::vector<bool>(edges.size(), true), n);
    return edges.size() + n - vertices.size();
  }

  unsigned total_genus() const {
    unsigned g = static_cast<unsigned>(loop_rank());
    for (auto &v : vertices)
      g += v.genus;
    return g;
  }

  // structural check against a complex: cones exist, face maps exist,
  // contact orders live in the right lattices
  void validate(const ConeComplex &cx) const {
    for (auto &v : vertices)
      cx.get(v.sigma);
    for (auto &e : edges) {
      if (e.u.size() != cx.rank(e.sigma))
        throw DomainError("contact order of edge " + e.id + " has wrong length");
      cx.require_face_map(vertices[e.tail].sigma, e.sigma);
      cx.require_face_map(vertices[e.head].sigma, e.sigma);
    }
    for (auto &l : legs) {
      if (l.u.size() != cx.rank(l.sigma))
        throw DomainError("contact order of leg " + l.id + " has wrong length");
      cx.require_face_map(vertices[l.vertex].sigma, l.sigma);
    }
  }
};

struct DecoratedType {
  TropicalType type;
  std::vector<CurveClass> classes; // one per vertex (empty class allowed)

  DecoratedType() = default;
  explicit DecoratedType(TropicalType t) : type(std::move(t)), classes(type.vertices.size()) {}
  DecoratedType(TropicalType t, std::vector<CurveClass> c) : type(std::move(t)), classes(std::move(c)) {
    if (classes.size() != type.vertices.size())
      throw DomainError("every vertex needs a curve class");
  }
};

// leg status, derived: the ray n_v + R>=0 u(L) stays in sigma(L) iff u(L) does
inline bool leg_unbounded(const TropicalType &t, const ConeComplex &cx, std::size_t leg) {
  const auto &l = t.legs[leg];
  return cx.get(l.sigma).cone.contains(l.u);
}

struct SplitResult {
  std::vector<DecoratedType> parts;
  std::vector<std::size_t> part_of_vertex;  // original vertex -> part
  std::vector<std::size_t> local_vertex;    // original vertex -> index in its part
  struct FlagLeg {
    std::size_t edge;     // original edge index
    bool at_tail;
    std::size_t part, leg; // new leg in that part
  };
  std::vector<FlagLeg> flags; // two per split edge, tail first
};

inline SplitResult split(const DecoratedType &dt, const std::vector<std::size_t> &split_edges) {
  const auto &t = dt.type;
  std::vector<bool> keep(t.edges.size(), true);
  for (auto e : split_edges) {
    if (e >= t.edges.size())
      throw DomainError("split edge out of range");
    keep[e] = false;
  }
  SplitResult r;
  std::size_t count = 0;
  r.part_of_vertex = t.components(keep, count);
  r.parts.resize(count);
  r.local_vertex.resize(t.vertices.size());
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    auto &p = r.parts[r.part_of_vertex[v]];
    r.local_vertex[v] = p.type.vertices.size();
    p.type.vertices.push_back(t.vertices[v]);
    p.classes.push_back(dt.classes[v]);
  }
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    if (!keep[i])
      continue;
    const auto &e = t.edges[i];
    auto &p = r.parts[r.part_of_vertex[e.tail]];
    p.type.add_edge(e.id, r.local_vertex[e.tail], r.local_vertex[e.head], e.sigma, e.u);
  }
  for (const auto &l : t.legs) {
    auto &p = r.parts[r.part_of_vertex[l.vertex]];
    p.type.add_leg(l.id, r.local_vertex[l.vertex], l.sigma, l.u);
  }
  std::vector<std::size_t> sorted = split_edges;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto i : sorted) {
    const auto &e = t.edges[i];
    for (bool at_tail : {true, false}) {
      std::size_t v = at_tail ? e.tail : e.head;
      auto &p = r.parts[r.part_of_vertex[v]];
      std::size_t leg = p.type.add_leg(e.id + "@" + t.vertices[v].id, r.local_vertex[v], e.sigma,
                                       at_tail ? e.u : -e.u);
      r.flags.push_back({i, at_tail, r.part_of_vertex[v], leg});
    }
  }
  return r;
}

// inverse of split: identifies flag legs pairwise; vertices come back in
// their original order, edges ordered by id
inline DecoratedType reglue(const SplitResult &s) {
  std::size_t nv = s.part_of_vertex.size();
  std::vector<std::vector<std::size_t>> original_of(s.parts.size());
  for (auto &p : s.parts)
    original_of[&p - s.parts.data()].resize(p.type.vertices.size());
  for (std::size_t v = 0; v < nv; ++v)
    original_of[s.part_of_vertex[v]][s.local_vertex[v]] = v;

  TropicalType t;
  std::vector<CurveClass> classes(nv);
  t.vertices.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const auto &p = s.parts[s.part_of_vertex[v]];
    t.vertices[v] = p.type.vertices[s.local_vertex[v]];
    classes[v] = p.classes[s.local_vertex[v]];
  }
  std::set<std::pair<std::size_t, std::size_t>> flag_legs;
  for (auto &f : s.flags)
    flag_legs.insert({f.part, f.leg});
  for (std::size_t pi = 0; pi < s.parts.size(); ++pi) {
    const auto &p = s.parts[pi].type;
    for (auto &e : p.edges)
      t.add_edge(e.id, original_of[pi][e.tail], original_of[pi][e.head], e.sigma, e.u);
    for (std::size_t li = 0; li < p.legs.size(); ++li)
      if (!flag_legs.count({pi, li})) {
        const auto &l = p.legs[li];
        t.add_leg(l.id, original_of[pi][l.vertex], l.sigma, l.u);
      }
  }
  for (std::size_t k = 0; k + 1 < s.flags.size(); k += 2) {
    const auto &a = s.flags[k], &b = s.flags[k + 1];
    const auto &la = s.parts[a.part].type.legs[a.leg];
    const auto &lb = s.parts[b.part].type.legs[b.leg];
    std::string id = la.id.substr(0, la.id.rfind('@'));
    t.add_edge(id, original_of[a.part][la.vertex], original_of[b.part][lb.vertex], la.sigma, la.u);
  }
  std::sort(t.edges.begin(), t.edges.end(), [](auto &x, auto &y) { return x.id < y.id; });
  std::sort(t.legs.begin(), t.legs.end(), [](auto &x, auto &y) { return x.id < y.id; });
  return DecoratedType(std::move(t), std::move(classes));
}

} // namespace tropglue
