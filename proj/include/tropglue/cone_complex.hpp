#pragma once

#include "tropglue/cone.hpp"

#include <deque>
#include <map>

namespace tropglue {

// One cone of a complex, full-dimensional in its own lattice N_sigma = Z^rank.
struct ComplexCone {
  std::string id;
  Cone cone;
  std::optional<IntVector> delta;      // functional N_sigma -> Z
  std::vector<std::string> divisors;   // optional label per generator
  std::optional<IntMatrix> embedding;  // N_sigma -> Z^global, when embedded

  std::size_t rank() const { return cone.ambient_rank(); }
};

class ConeComplex {
public:
  void add_cone(ComplexCone c) {
    if (index_.count(c.id))
      throw DomainError("duplicate cone id: " + c.id);
    if (!c.cone.is_full_dimensional())
      throw DomainError("cone " + c.id + " is not full-dimensional in its lattice");
    if (c.delta && c.delta->size() != c.rank())
      throw DomainError("delta of " + c.id + " has wrong length");
    if (!c.divisors.empty() && c.divisors.size() != c.cone.generators().size())
      throw DomainError("divisor labels of " + c.id + " do not match its generators");
    index_[c.id] = cones_.size();
    cones_.push_back(std::move(c));
  }

  void add_face(const std::string &face, const std::string &cone, IntMatrix map) {
    const auto &f = get(face), &c = get(cone);
    if (map.rows() != c.rank() || map.cols() != f.rank())
      throw DomainError("face map " + face + " -> " + cone + " has wrong shape");
    for (auto &g : f.cone.generators())
      if (!c.cone.contains(map * g))
        throw DomainError("face map " + face + " -> " + cone + " leaves the cone");
    if (f.delta && c.delta) {
      IntVector pulled(f.rank());
      for (std::size_t j = 0; j < f.rank(); ++j)
        for (std::size_t i = 0; i < c.rank(); ++i)
          pulled[j] += (*c.delta)[i] * map(i, j);
      if (pulled != *f.delta)
        throw DomainError("delta does not commute with face map " + face + " -> " + cone);
    }
    faces_[face].push_back({cone, std::move(map)});
  }

  bool has(const std::string &id) const { return index_.count(id) > 0; }

  const ComplexCone &get(const std::string &id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw DomainError("unknown cone id: " + id);
    return cones_[it->second];
  }

  const std::vector<ComplexCone> &cones() const { return cones_; }
  std::size_t rank(const std::string &id) const { return get(id).rank(); }

  std::size_t top_dimension() const {
    std::size_t d = 0;
    for (auto &c : cones_)
      d = std::max(d, c.rank());
    return d;
  }

  bool has_delta() const {
    if (cones_.empty())
      return false;
    for (auto &c : cones_)
      if (!c.delta)
        return false;
    return true;
  }

  const IntVector &delta(const std::string &id) const {
    const auto &c = get(id);
    if (!c.delta)
      throw DomainError("no base map on cone " + id);
    return *c.delta;
  }

  // lattice inclusion N_face -> N_cone (composite of declared face maps)
  std::optional<IntMatrix> face_map(const std::string &face, const std::string &cone) const {
    if (face == cone)
      return IntMatrix::identity(rank(face));
    std::map<std::string, IntMatrix> reached{{face, IntMatrix::identity(rank(face))}};
    std::deque<std::string> queue{face};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      auto it = faces_.find(cur);
      if (it == faces_.end())
        continue;
      for (auto &[next, map] : it->second) {
        if (reached.count(next))
          continue;
        IntMatrix m = map * reached.at(cur);
        if (next == cone)
          return m;
        reached.emplace(next, m);
        queue.push_back(next);
      }
    }
    return std::nullopt;
  }

  IntMatrix require_face_map(const std::string &face, const std::string &cone) const {
    auto m = face_map(face, cone);
    if (!m)
      throw DomainError("cone " + face + " is not a face of " + cone);
    return *m;
  }

  bool is_face(const std::string &face, const std::string &cone) const {
    return face_map(face, cone).has_value();
  }

  // basis (columns) of ker(delta) in N_sigma
  IntMatrix delta_kernel(const std::string &id) const {
    return kernel_lattice(IntMatrix::from_rows({delta(id)}));
  }

  std::optional<std::size_t> global_rank() const { return global_rank_; }

  // a cone having every listed cone as a face, smallest rank first
  std::optional<std::string> common_cone(const std::vector<std::string> &ids) const {
    std::optional<std::string> best;
    for (auto &c : cones_) {
      bool ok = true;
      for (auto &id : ids)
        if (!is_face(id, c.id)) {
          ok = false;
          break;
        }
      if (ok && (!best || c.rank() < rank(*best)))
        best = c.id;
    }
    return best;
  }

  // Builds a complex from cones embedded in a common Z^n. Each cone gets the
  // saturated span of its generators as lattice; face relations are detected.
  struct EmbeddedCone {
    std::string id;
    std::vector<IntVector> generators;
    std::vector<std::string> divisors;
  };
  static ConeComplex embedded_fan(std::size_t n, const std::vector<EmbeddedCone> &input,
                                  std::optional<IntVector> global_delta = std::nullopt) {
    ConeComplex cx;
    cx.global_rank_ = n;
    std::vector<Cone> global;
    for (auto &e : input) {
      Cone g(n, e.generators);
      IntMatrix B = g.dim() == n ? IntMatrix::identity(n) : g.span_basis();
      std::vector<IntVector> own;
      for (auto &v : e.generators) {
        auto c = solve_integer(B, v);
        if (!c)
          throw std::logic_error("generator outside its saturated span");
        own.push_back(*c);
      }
      ComplexCone cc{e.id, Cone(B.cols(), own), std::nullopt, e.divisors, B};
      if (!e.divisors.empty() && cc.cone.generators().size() != e.divisors.size())
        throw DomainError("divisor labels of " + e.id +
                          " need one distinct primitive generator each");
      if (global_delta) {
        if (global_delta->size() != n)
          throw DomainError("global delta has wrong length");
        IntVector d(B.cols());
        for (std::size_t j = 0; j < B.cols(); ++j)
          for (std::size_t i = 0; i < n; ++i)
            d[j] += (*global_delta)[i] * B(i, j);
        cc.delta = d;
      }
      cx.add_cone(std::move(cc));
      global.push_back(g);
    }
    for (std::size_t a = 0; a < input.size(); ++a)
      for (std::size_t b = 0; b < input.size(); ++b) {
        if (a == b || global[a].dim() >= global[b].dim())
          continue;
        if (!is_geometric_face(global[a], global[b]))
          continue;
        const IntMatrix &Ba = *cx.cones_[a].embedding, &Bb = *cx.cones_[b].embedding;
        IntMatrix map(Bb.cols(), Ba.cols());
        for (std::size_t j = 0; j < Ba.cols(); ++j) {
          auto c = solve_integer(Bb, Ba.column(j));
          if (!c)
            throw std::logic_error("face lattice not contained in cone lattice");
          for (std::size_t i = 0; i < c->size(); ++i)
            map(i, j) = (*c)[i];
        }
        cx.add_face(input[a].id, input[b].id, map);
      }
    return cx;
  }

  static bool is_geometric_face(const Cone &face, const Cone &cone) {
    for (auto &g : face.generators())
      if (!cone.contains(g))
        return false;
    IntVector r = face.relative_interior_point();
    std::vector<IntVector> tight;
    for (auto &f : cone.facets())
      if (dot(f, r) == 0)
        tight.push_back(f);
    std::vector<IntVector> span;
    for (auto &g : cone.generators()) {
      bool in = true;
      for (auto &f : tight)
        if (dot(f, g) != 0)
          in = false;
      if (in)
        span.push_back(g);
    }
    return Cone(cone.ambient_rank(), span) == face;
  }

  // image of a vector of N_sigma in the global lattice
  IntVector to_global(const std::string &id, const IntVector &v) const {
    const auto &c = get(id);
    if (!c.embedding)
      throw DomainError("complex is not embedded in a global lattice");
    return *c.embedding * v;
  }

private:
  std::vector<ComplexCone> cones_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, std::vector<std::pair<std::string, IntMatrix>>> faces_;
  std::optional<std::size_t> global_rank_;
};

} // namespace tropglue
