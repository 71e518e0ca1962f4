#pragma once

// Small complexes and types shared by the test binaries.

#include "tropglue/gluing.hpp"

#include <random>

namespace fixtures {

using namespace tropglue;

using EC = ConeComplex::EmbeddedCone;

inline IntVector iv(std::initializer_list<long long> x) { return int_vector(x); }

// R>=0^2 with rays r1 = e1, r2 = e2 and the quadrant q
inline ConeComplex quadrant(IntVector delta = int_vector({1, 1})) {
  return ConeComplex::embedded_fan(2,
                                   {{"o", {}, {}},
                                    {"r1", {iv({1, 0})}, {}},
                                    {"r2", {iv({0, 1})}, {}},
                                    {"q", {iv({1, 0}), iv({0, 1})}, {"D1", "D2"}}},
                                   delta);
}

// R>=0^3 with all faces, divisors D1..D3
inline ConeComplex orthant3(IntVector delta = int_vector({1, 1, 1})) {
  std::vector<EC> cs{{"o", {}, {}}};
  IntVector e[3] = {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})};
  for (int i = 0; i < 3; ++i)
    cs.push_back({"e" + std::to_string(i + 1), {e[i]}, {"D" + std::to_string(i + 1)}});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      cs.push_back({"e" + std::to_string(i + 1) + std::to_string(j + 1),
                    {e[i], e[j]},
                    {"D" + std::to_string(i + 1), "D" + std::to_string(j + 1)}});
  cs.push_back({"e123", {e[0], e[1], e[2]}, {"D1", "D2", "D3"}});
  return ConeComplex::embedded_fan(3, cs, delta);
}

// the cone over a square: rays a=(0,0,1) b=(1,0,1) c=(0,1,1) d=(1,1,1)
inline ConeComplex conifold() {
  auto a = iv({0, 0, 1}), b = iv({1, 0, 1}), c = iv({0, 1, 1}), d = iv({1, 1, 1});
  return ConeComplex::embedded_fan(3,
                                   {{"a", {a}, {}},
                                    {"b", {b}, {}},
                                    {"c", {c}, {}},
                                    {"d", {d}, {}},
                                    {"ab", {a, b}, {}},
                                    {"ac", {a, c}, {}},
                                    {"bd", {b, d}, {}},
                                    {"cd", {c, d}, {}},
                                    {"abcd", {a, b, c, d}, {}}},
                                   iv({0, 0, 1}));
}

// star of the ray c=(0,0,1) in the fan over a hexagon at height one
inline const std::vector<IntVector> &hexagon_ring() {
  static const std::vector<IntVector> ring{iv({1, 0, 1}),   iv({1, 1, 1}),   iv({0, 1, 1}),
                                           iv({-1, 0, 1}),  iv({-1, -1, 1}), iv({0, -1, 1})};
  return ring;
}

inline ConeComplex hexagon() {
  const auto &ring = hexagon_ring();
  auto c = iv({0, 0, 1});
  std::vector<EC> cs{{"c", {c}, {}}};
  for (int i = 0; i < 6; ++i)
    cs.push_back({"r" + std::to_string(i), {ring[i]}, {}});
  for (int i = 0; i < 6; ++i) {
    int j = (i + 1) % 6;
    cs.push_back({"c" + std::to_string(i), {c, ring[i]}, {}});
    cs.push_back({"r" + std::to_string(i) + std::to_string(j), {ring[i], ring[j]}, {}});
    cs.push_back({"c" + std::to_string(i) + std::to_string(j), {c, ring[i], ring[j]}, {}});
  }
  return ConeComplex::embedded_fan(3, cs, iv({0, 0, 1}));
}

// two rays v, v' spanning rho, components of multiplicity mu, mu'
inline ConeComplex minus_one_curve(long long mu, long long mu2) {
  return ConeComplex::embedded_fan(2,
                                   {{"v", {iv({1, 0})}, {"Xv"}},
                                    {"v2", {iv({0, 1})}, {"Xv2"}},
                                    {"rho", {iv({1, 0}), iv({0, 1})}, {"Xv", "Xv2"}}},
                                   iv({mu, mu2}));
}

// one vertex on v, one leg into rho with u = (-k mu'/mu, k)
inline DecoratedType minus_one_type(long long mu, long long mu2, long long k) {
  TropicalType t;
  t.add_vertex("w", "v");
  t.add_leg("L", 0, "rho", iv({-k * mu2 / mu, k}));
  return DecoratedType(t);
}

// two vertices on the rays of the quadrant joined by edges of weights w
inline DecoratedType classical_type(const std::vector<long long> &w) {
  TropicalType t;
  t.add_vertex("v1", "r1");
  t.add_vertex("v2", "r2");
  for (std::size_t i = 0; i < w.size(); ++i)
    t.add_edge("E" + std::to_string(i + 1), 0, 1, "q", iv({-w[i], w[i]}));
  return DecoratedType(t);
}

inline GluingProblem two_edge_problem(long long w1, long long w2) {
  return {quadrant(), classical_type({w1, w2}), {"E1", "E2"}};
}

inline GluingProblem conifold_problem() {
  TropicalType t;
  t.add_vertex("v1", "a");
  t.add_vertex("v2", "d");
  t.add_edge("E", 0, 1, "abcd", iv({1, 1, 0}));
  return {conifold(), DecoratedType(t), {"E"}};
}

// Rigid types over a base ray: vertices on two or three rays at delta = 1,
// edges between different rays with vertical contact orders.
struct RigidInstance {
  ConeComplex complex;
  TropicalType type;
};

inline RigidInstance random_rigid(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> coin(0, 1), a_dist(1, 3), w_dist(1, 4), nv_dist(2, 4), extra(0, 2);
  bool three = coin(rng);
  RigidInstance r;
  std::vector<IntVector> rays;
  if (!three) {
    long long a = a_dist(rng);
    rays = {iv({1, 0}), iv({1, a})};
    r.complex = ConeComplex::embedded_fan(
        2, {{"p0", {rays[0]}, {}}, {"p1", {rays[1]}, {}}, {"p01", {rays[0], rays[1]}, {}}}, iv({1, 0}));
  } else {
    long long a = a_dist(rng), b = a_dist(rng);
    rays = {iv({1, 0, 0}), iv({1, a, 0}), iv({1, 0, b})};
    r.complex = ConeComplex::embedded_fan(3,
                                          {{"p0", {rays[0]}, {}},
                                           {"p1", {rays[1]}, {}},
                                           {"p2", {rays[2]}, {}},
                                           {"p01", {rays[0], rays[1]}, {}},
                                           {"p02", {rays[0], rays[2]}, {}},
                                           {"p12", {rays[1], rays[2]}, {}},
                                           {"p012", {rays[0], rays[1], rays[2]}, {}}},
                                          iv({1, 0, 0}));
  }
  const int nrays = three ? 3 : 2;
  int nv = nv_dist(rng);
  std::vector<int> ray_of(nv);
  std::uniform_int_distribution<int> pick_ray(0, nrays - 1);
  for (auto &x : ray_of)
    x = pick_ray(rng);
  if (ray_of[0] == ray_of[1])
    ray_of[1] = (ray_of[0] + 1) % nrays;
  for (int v = 0; v < nv; ++v)
    r.type.add_vertex("v" + std::to_string(v), "p" + std::to_string(ray_of[v]));
  int edge_id = 0;
  auto add = [&](int x, int y) {
    int i = std::min(ray_of[x], ray_of[y]), j = std::max(ray_of[x], ray_of[y]);
    std::string sigma = "p" + std::to_string(i) + std::to_string(j);
    IntVector dir = primitive(rays[ray_of[y]] - rays[ray_of[x]]);
    IntVector local = r.complex.get(sigma).embedding ? *solve_integer(*r.complex.get(sigma).embedding, dir)
                                                     : dir;
    r.type.add_edge("E" + std::to_string(edge_id++), x, y, sigma, Integer(w_dist(rng)) * local);
  };
  add(0, 1);
  for (int v = 2; v < nv; ++v) {
    std::vector<int> partners;
    for (int x = 0; x < v; ++x)
      if (ray_of[x] != ray_of[v])
        partners.push_back(x);
    // vertices 0 and 1 sit on different rays, so a partner always exists
    std::uniform_int_distribution<std::size_t> pp(0, partners.size() - 1);
    add(partners[pp(rng)], v);
  }
  int more = extra(rng);
  std::uniform_int_distribution<int> pv(0, nv - 1);
  for (int k = 0; k < more; ++k) {
    int x = pv(rng), y = pv(rng);
    if (ray_of[x] != ray_of[y])
      add(x, y);
  }
  return r;
}

} // namespace fixtures
