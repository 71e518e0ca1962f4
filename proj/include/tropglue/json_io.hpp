#pragma once

// JSON reading and writing for problem files and reports. Objects are read
// strictly: every key must be known to the reader.

#include "tropglue/integer.hpp"
#include "tropglue/formulas.hpp"
#include "tropglue/wall.hpp"

#include "json.hpp"

#include <limits>
#include <regex>

namespace tropglue::io {

using json = nlohmann::json;

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- reading ----

class Fields {
public:
  Fields(const json &j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object())
      throw SchemaError(where_ + ": expected an object");
  }

  const json &req(const std::string &key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end())
      throw SchemaError(where_ + ": missing field \"" + key + "\"");
    return *it;
  }

  const json *opt(const std::string &key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() || it->is_null() ? nullptr : &*it;
  }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw SchemaError(where_ + ": unknown field \"" + it.key() + "\"");
  }

  std::string at(const std::string &key) const { return where_ + "." + key; }

private:
  const json &j_;
  std::string where_;
  std::set<std::string> seen_;
};

inline Integer read_integer(const json &j, const std::string &where) {
  if (j.is_number_integer())
    return j.is_number_unsigned() ? Integer(j.get<unsigned long long>()) : Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const std::invalid_argument &e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  throw SchemaError(where + ": expected an integer");
}

inline long long read_small(const json &j, const std::string &where, long long lo, long long hi) {
  Integer x = read_integer(j, where);
  if (x < lo || x > hi)
    throw SchemaError(where + ": value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<long long>(x);
}

inline Rational read_rational(const json &j, const std::string &where) {
  if (j.is_number_integer())
    return Rational(read_integer(j, where));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument &e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  throw SchemaError(where + ": expected a rational \"p/q\"");
}

inline std::string read_string(const json &j, const std::string &where) {
  if (!j.is_string())
    throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

inline bool read_bool(const json &j, const std::string &where) {
  if (!j.is_boolean())
    throw SchemaError(where + ": expected true or false");
  return j.get<bool>();
}

inline const json &read_array(const json &j, const std::string &where) {
  if (!j.is_array())
    throw SchemaError(where + ": expected an array");
  return j;
}

inline IntVector read_vector(const json &j, const std::string &where, std::optional<std::size_t> len = {}) {
  read_array(j, where);
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(read_integer(j[i], where + "[" + std::to_string(i) + "]"));
  if (len && v.size() != *len)
    throw SchemaError(where + ": expected length " + std::to_string(*len));
  return v;
}

// rows of a rows x cols matrix
inline IntMatrix read_matrix(const json &j, const std::string &where, std::size_t rows, std::size_t cols) {
  read_array(j, where);
  if (j.size() != rows)
    throw SchemaError(where + ": expected " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    IntVector r = read_vector(j[i], where + "[" + std::to_string(i) + "]", cols);
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = r[k];
  }
  return m;
}

inline std::vector<std::string> read_strings(const json &j, const std::string &where) {
  read_array(j, where);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(read_string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

// {"rank": n, "delta": [...]?, "cones": [{"id", "rays", "divisors"?}]}
inline ConeComplex read_complex(const json &j, const std::string &where = "complex") {
  Fields f(j, where);
  auto n = static_cast<std::size_t>(read_small(f.req("rank"), f.at("rank"), 1, 16));
  std::optional<IntVector> delta;
  if (auto d = f.opt("delta"))
    delta = read_vector(*d, f.at("delta"), n);
  const json &cs = read_array(f.req("cones"), f.at("cones"));
  f.done();
  std::vector<ConeComplex::EmbeddedCone> cones;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string w = where + ".cones[" + std::to_string(i) + "]";
    Fields c(cs[i], w);
    ConeComplex::EmbeddedCone e;
    e.id = read_string(c.req("id"), c.at("id"));
    const json &rays = read_array(c.req("rays"), c.at("rays"));
    for (std::size_t r = 0; r < rays.size(); ++r)
      e.generators.push_back(read_vector(rays[r], c.at("rays") + "[" + std::to_string(r) + "]", n));
    if (auto d = c.opt("divisors"))
      e.divisors = read_strings(*d, c.at("divisors"));
    c.done();
    cones.push_back(std::move(e));
  }
  return ConeComplex::embedded_fan(n, cones, delta);
}

// contact orders are read in the frame named by "frame": "local" (coordinates
// of N_sigma) or "global" (the ambient lattice of an embedded complex)
inline DecoratedType read_type(const json &j, const ConeComplex *cx, const std::string &where = "type") {
  Fields f(j, where);
  std::string frame = "local";
  if (auto fr = f.opt("frame"))
    frame = read_string(*fr, f.at("frame"));
  if (frame != "local" && frame != "global")
    throw SchemaError(f.at("frame") + ": expected \"local\" or \"global\"");
  if (frame == "global" && !cx)
    throw SchemaError(where + ": global frame needs a complex");
  const json &vs = read_array(f.req("vertices"), f.at("vertices"));
  const json *es = f.opt("edges");
  const json *ls = f.opt("legs");
  f.done();

  auto known = [&](const std::string &cone, const std::string &w) {
    if (cx && !cx->has(cone))
      throw SchemaError(w + ": unknown cone " + cone);
  };
  auto contact = [&](const json &u, const std::string &cone, const std::string &w) {
    if (frame == "local")
      return read_vector(u, w, cx ? std::optional<std::size_t>(cx->rank(cone)) : std::nullopt);
    IntVector g = read_vector(u, w, *cx->global_rank());
    auto local = solve_integer(*cx->get(cone).embedding, g);
    if (!local)
      throw DomainError(w + ": vector does not lie in the lattice of cone " + cone);
    return *local;
  };

  TropicalType t;
  std::vector<CurveClass> classes;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string w = where + ".vertices[" + std::to_string(i) + "]";
    Fields v(vs[i], w);
    std::string id = read_string(v.req("id"), v.at("id"));
    std::string cone = read_string(v.req("cone"), v.at("cone"));
    unsigned genus = 0;
    if (auto g = v.opt("genus"))
      genus = static_cast<unsigned>(read_small(*g, v.at("genus"), 0, 1000));
    CurveClass cl;
    if (auto c = v.opt("class")) {
      if (!c->is_object())
        throw SchemaError(v.at("class") + ": expected an object");
      for (auto it = c->begin(); it != c->end(); ++it)
        cl.intersections[it.key()] = read_integer(*it, v.at("class") + "." + it.key());
    }
    v.done();
    known(cone, v.at("cone"));
    t.add_vertex(id, cone, genus);
    classes.push_back(std::move(cl));
  }
  auto vertex = [&](const json &x, const std::string &w) {
    std::string id = read_string(x, w);
    auto v = t.find_vertex(id);
    if (!v)
      throw SchemaError(w + ": unknown vertex " + id);
    return *v;
  };
  if (es) {
    read_array(*es, f.at("edges"));
    for (std::size_t i = 0; i < es->size(); ++i) {
      std::string w = where + ".edges[" + std::to_string(i) + "]";
      Fields e((*es)[i], w);
      std::string id = read_string(e.req("id"), e.at("id"));
      std::size_t a = vertex(e.req("tail"), e.at("tail"));
      std::size_t b = vertex(e.req("head"), e.at("head"));
      std::string cone = read_string(e.req("cone"), e.at("cone"));
      known(cone, e.at("cone"));
      IntVector u = contact(e.req("u"), cone, e.at("u"));
      e.done();
      t.add_edge(id, a, b, cone, u);
    }
  }
  if (ls) {
    read_array(*ls, f.at("legs"));
    for (std::size_t i = 0; i < ls->size(); ++i) {
      std::string w = where + ".legs[" + std::to_string(i) + "]";
      Fields l((*ls)[i], w);
      std::string id = read_string(l.req("id"), l.at("id"));
      std::size_t v = vertex(l.req("vertex"), l.at("vertex"));
      std::string cone = read_string(l.req("cone"), l.at("cone"));
      known(cone, l.at("cone"));
      IntVector u = contact(l.req("u"), cone, l.at("u"));
      l.done();
      t.add_leg(id, v, cone, u);
    }
  }
  if (cx)
    t.validate(*cx);
  return DecoratedType(std::move(t), std::move(classes));
}

// "(k,l)"
inline WeightKey read_weight_key(const std::string &s, const std::string &where) {
  static const std::regex re(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  std::smatch m;
  if (!std::regex_match(s, m, re))
    throw SchemaError(where + ": expected a key of the form \"(k,l)\", got \"" + s + "\"");
  try {
    return {std::stoi(m[1]), std::stoi(m[2])};
  } catch (const std::out_of_range &) {
    throw SchemaError(where + ": key out of range: " + s);
  }
}

// ---- writing ----

inline json to_json(const Integer &x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline json to_json(const Rational &q) { return to_string(q); }

inline json to_json(const IntVector &v) {
  json a = json::array();
  for (auto &x : v)
    a.push_back(to_json(x));
  return a;
}

inline json to_json(const RatVector &v) {
  json a = json::array();
  for (auto &x : v)
    a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix &m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      r.push_back(to_json(m(i, k)));
    a.push_back(r);
  }
  return a;
}

inline json to_json(const FGAbelian &g) {
  json f = json::array();
  for (auto &d : g.invariant_factors)
    f.push_back(to_json(d));
  return {{"rank", g.rank}, {"invariant_factors", f}, {"torsion", to_json(torsion_order(g))}};
}

inline json to_json(const Cone &c) {
  json gens = json::array(), facets = json::array();
  for (auto &g : c.generators())
    gens.push_back(to_json(g));
  for (auto &f : c.facets())
    facets.push_back(to_json(f));
  return {{"ambient_rank", c.ambient_rank()}, {"dim", c.dim()}, {"generators", gens}, {"facets", facets}};
}

inline json to_json(const TropicalType &t) {
  json vs = json::array(), es = json::array(), ls = json::array();
  for (auto &v : t.vertices)
    vs.push_back({{"id", v.id}, {"cone", v.sigma}, {"genus", v.genus}});
  for (auto &e : t.edges)
    es.push_back({{"id", e.id},
                  {"tail", t.vertices[e.tail].id},
                  {"head", t.vertices[e.head].id},
                  {"cone", e.sigma},
                  {"u", to_json(e.u)}});
  for (auto &l : t.legs)
    ls.push_back({{"id", l.id}, {"vertex", t.vertices[l.vertex].id}, {"cone", l.sigma}, {"u", to_json(l.u)}});
  return {{"frame", "local"}, {"vertices", vs}, {"edges", es}, {"legs", ls}};
}

inline json to_json(const BasicCone &b) {
  return {{"realizable", b.realizable}, {"dim", b.dim()}, {"lattice", to_json(b.lattice)}, {"cone", to_json(b.cone)}};
}

} // namespace tropglue::io
