#include "fixtures.hpp"
#include "wall_trees.hpp"
#include "tropglue/formulas.hpp"
#include "tropglue/wall.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace tropglue;
using fixtures::iv;

namespace {

IntVector local(const ConeComplex &cx, const std::string &id, const IntVector &global) {
  const auto &c = cx.get(id);
  return c.embedding ? *solve_integer(*c.embedding, global) : global;
}

// coefficients of exp(sum_{d>=1} (-1)^d x^d / d) up to x^n, by f' = g' f
std::vector<Rational> exp_series(std::size_t n) {
  std::vector<Rational> g(n + 1), f(n + 1);
  for (std::size_t d = 1; d <= n; ++d)
    g[d] = Rational(d % 2 ? -1 : 1, d);
  f[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k; ++j)
      s += Rational(j) * g[j] * f[k - j];
    f[k] = s / Rational(k);
  }
  return f;
}

// number of partitions of n by the usual table
Integer partition_number(unsigned n) {
  std::vector<Integer> p(n + 1);
  p[0] = 1;
  for (unsigned part = 1; part <= n; ++part)
    for (unsigned m = part; m <= n; ++m)
      p[m] += p[m - part];
  return p[n];
}

} // namespace

TEST(MultipleCover, Values) {
  EXPECT_EQ(multiple_cover(1), Rational(1));
  EXPECT_EQ(multiple_cover(2), Rational(-1, 4));
  EXPECT_EQ(multiple_cover(3), Rational(1, 9));
  for (long long k = 1; k <= 10; ++k) {
    Rational expect(1, k * k);
    if (k % 2 == 0)
      expect = -expect;
    EXPECT_EQ(multiple_cover(k), expect);
  }
  EXPECT_THROW(multiple_cover(0), DomainError);
}

TEST(Partitions, Automorphisms) {
  EXPECT_EQ(partition_aut({1, 1, 1}), 6);
  EXPECT_EQ(partition_aut({2, 1}), 1);
  EXPECT_EQ(partition_aut({2, 2, 1}), 2);
  EXPECT_EQ(partition_aut({}), 1);
}

TEST(Partitions, EnumerationOrderAndCount) {
  auto p4 = partitions_of(4);
  std::vector<Partition> expect{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  EXPECT_EQ(p4, expect);
  for (unsigned n = 0; n <= 10; ++n) {
    auto ps = partitions_of(n);
    EXPECT_EQ(Integer(ps.size()), partition_number(n)) << n;
    for (auto &p : ps) {
      EXPECT_EQ(std::accumulate(p.begin(), p.end(), 0u), n);
      EXPECT_TRUE(std::is_sorted(p.rbegin(), p.rend()));
    }
    EXPECT_TRUE(std::is_sorted(ps.rbegin(), ps.rend()));
  }
  EXPECT_EQ(partitions_of(0).size(), 1u);
  EXPECT_TRUE(partitions_of(0)[0].empty());
}

TEST(Partitions, CollectionsAreAProduct) {
  std::map<WeightKey, unsigned> w{{{1, 1}, 3}, {{1, 2}, 0}, {{2, 1}, 4}};
  auto cs = enumerate_collections(w);
  EXPECT_EQ(cs.size(), 3u * 1u * 5u);
  std::set<std::string> names;
  for (auto &c : cs)
    names.insert(to_string(c));
  EXPECT_EQ(names.size(), cs.size());
  EXPECT_EQ(to_string(cs.front()), "(1,1)=[3] (1,2)=[] (2,1)=[4]");
  EXPECT_EQ(enumerate_collections({}).size(), 1u);
}

TEST(Blowup, AllWeightsZero) {
  auto r = blowup_formula({{{1, 1}, 0}}, [](const PartitionCollection &) { return Rational(7, 3); });
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_EQ(r.value, Rational(7, 3));
}

TEST(Blowup, SmallWeightsByHand) {
  std::map<std::string, Rational> table{{"(1,1)=[1]", Rational(5)},
                                        {"(1,1)=[2]", Rational(3)},
                                        {"(1,1)=[1,1]", Rational(11)}};
  auto oracle = [&](const PartitionCollection &c) { return table.at(to_string(c)); };
  EXPECT_EQ(blowup_formula({{{1, 1}, 1}}, oracle).value, Rational(-5));
  // N({2}) (+1)/2 + N({1,1}) (-1)(-1) / 2!
  EXPECT_EQ(blowup_formula({{{1, 1}, 2}}, oracle).value, Rational(3, 2) + Rational(11, 2));
}

TEST(Blowup, ConstantOracleIsGeneratingFunction) {
  auto one = [](const PartitionCollection &) { return Rational(1); };
  auto series = exp_series(8);
  for (unsigned w = 0; w <= 8; ++w) {
    auto r = blowup_formula({{{1, 1}, w}}, one);
    EXPECT_EQ(r.value, series[w]) << w;
    EXPECT_EQ(r.value, Rational(w % 2 ? -1 : 1)) << w;
  }
  // several weights: the sum factors
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; b <= 4; ++b)
      EXPECT_EQ(blowup_formula({{{1, 1}, a}, {{2, 1}, b}}, one).value, series[a] * series[b]);
}

TEST(Covering, Examples) {
  EXPECT_EQ(covering_relation(1, {{1, 1}, {2, 2}}, Rational(5, 7)), Rational(5, 7));
  EXPECT_EQ(covering_relation(2, {{1, 2}}, Rational(3)), Rational(3, 2));
  EXPECT_EQ(covering_relation(2, {{1, 1}}, Rational(3)), Rational(3));
  EXPECT_THROW(covering_relation(2, {{2, 3}}, Rational(1)), DomainError);
  EXPECT_THROW(covering_relation(2, {{1, 4}}, Rational(1)), DomainError);
}

TEST(WallRecursion, Degeneracies) {
  WallRecursionInput leafless{{}, Rational(3, 5), 4, std::nullopt};
  EXPECT_EQ(wall_recursion_step(leafless).kW, Rational(12, 5));
  WallChild a;
  a.k = 2;
  a.W = Rational(1, 3);
  a.key = "A";
  WallRecursionInput twins{{a, a}, Rational(5), 3, std::nullopt};
  auto r = wall_recursion_step(twins);
  EXPECT_EQ(r.aut, 2);
  EXPECT_EQ(r.kW, Rational(3) * Rational(5) * Rational(2, 3) * Rational(2, 3) / 2);
  twins.aut = 5;
  EXPECT_THROW(wall_recursion_step(twins), DomainError);
}

TEST(WallRecursion, AutFromTypes) {
  // children told apart by isomorphism of their decorated types
  WallChild x, y;
  x.W = y.W = 1;
  x.type = fixtures::minus_one_type(1, 1, 1);
  y.type = fixtures::minus_one_type(1, 1, 2);
  WallRecursionInput in{{x, x, y}, Rational(1), 1, std::nullopt};
  EXPECT_EQ(wall_recursion_step(in).aut, 2);
  WallChild bare;
  in.children.push_back(bare);
  EXPECT_THROW(wall_recursion_step(in), DomainError);
}


TEST(WallRecursion, NestedMatchesFlattened) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto t = wall_trees::random_tree(rng, 3);
    EXPECT_EQ(evaluate_wall_tree(t), wall_trees::flattened(t)) << t.canonical();
  }
}

TEST(WallRecursion, ThreeVertexChain) {
  // root -> middle -> leaf with multiple cover value
  WallTree leaf{"leaf", multiple_cover(2), {}, 1, {}};
  WallTree mid{"mid", std::nullopt, Rational(2), 3, {leaf}};
  WallTree root{"root", std::nullopt, Rational(1, 2), 5, {mid, mid}};
  Rational mid_val = Rational(3) * Rational(2) * Rational(-1, 4);
  EXPECT_EQ(evaluate_wall_tree(mid), mid_val);
  EXPECT_EQ(evaluate_wall_tree(root), Rational(5) * Rational(1, 2) * mid_val * mid_val / 2);
}

TEST(WallType, MinusOneCurveIsValid) {
  for (auto [mu, mu2] : {std::pair{1, 1}, {1, 2}, {2, 2}, {2, 4}})
    for (long long k = 1; k <= 6; ++k) {
      if ((k * mu2) % mu)
        continue;
      auto cx = fixtures::minus_one_curve(mu, mu2);
      auto v = validate_wall_type(fixtures::minus_one_type(mu, mu2, k), cx);
      EXPECT_TRUE(v.valid) << mu << " " << mu2 << " " << k;
      EXPECT_EQ(v.dim_tau, 1u);
      EXPECT_EQ(v.dim_out, 2u);
    }
}

TEST(WallType, ClauseFailures) {
  auto q = fixtures::quadrant();
  TropicalType zero;
  zero.add_vertex("v", "r1");
  zero.add_leg("L", 0, "r1", iv({0}));
  auto v1 = validate_wall_type(DecoratedType(zero), q);
  EXPECT_FALSE(v1.clause1);
  EXPECT_TRUE(v1.clause2);
  EXPECT_FALSE(v1.valid);

  auto o = fixtures::orthant3();
  TropicalType wide;
  wide.add_vertex("v1", "e1");
  wide.add_vertex("v2", "e12");
  wide.add_edge("E", 0, 1, "e12", local(o, "e12", iv({0, 1, 0})));
  wide.add_leg("L", 1, "e12", local(o, "e12", iv({0, 1, 0})));
  auto v3 = validate_wall_type(DecoratedType(wide), o);
  EXPECT_TRUE(v3.clause1);
  EXPECT_TRUE(v3.clause2);
  EXPECT_EQ(v3.dim_tau, 2u);
  EXPECT_FALSE(v3.clause3);

  TropicalType two_legs;
  two_legs.add_vertex("v", "r1");
  two_legs.add_leg("L1", 0, "q", iv({0, 1}));
  two_legs.add_leg("L2", 0, "q", iv({1, 1}));
  EXPECT_FALSE(validate_wall_type(DecoratedType(two_legs), q).clause1);

  // a vertex in a codimension one cone has to balance
  TropicalType lone;
  lone.add_vertex("v", "e12");
  lone.add_leg("L", 0, "e123", local(o, "e123", iv({0, 0, 1})));
  auto vb = validate_wall_type(DecoratedType(lone), o);
  EXPECT_FALSE(vb.balanced);
  EXPECT_FALSE(vb.clause2);
}

TEST(KTau, SmallMaps) {
  auto q = fixtures::quadrant();
  for (long long m = 1; m <= 4; ++m) {
    TropicalType t;
    t.add_vertex("v", "r1");
    t.add_leg("L", 0, "q", iv({0, m}));
    EXPECT_EQ(k_tau(DecoratedType(t), q), m);
  }
}

TEST(KTau, MinusOneCurve) {
  for (auto [mu, mu2] : {std::pair{1, 1}, {1, 2}, {2, 2}})
    for (long long k = 1; k <= 6; ++k) {
      if ((k * mu2) % mu)
        continue;
      auto cx = fixtures::minus_one_curve(mu, mu2);
      auto rep = k_tau_report(fixtures::minus_one_type(mu, mu2, k), cx);
      EXPECT_EQ(rep.h, IntMatrix::from_ll({{1, -k * mu2 / mu}, {0, k}}));
      EXPECT_EQ(rep.k, k);
      EXPECT_EQ(determinant(rep.h), k);
    }
}

TEST(KTau, BasisChangeInvariance) {
  // the same fan written in another basis of the lattice
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix g = IntMatrix::identity(2);
    for (int s = 0; s < 4; ++s) {
      IntMatrix e = IntMatrix::identity(2);
      int i = s % 2;
      e(i, 1 - i) = d(rng);
      g = g * e;
    }
    for (long long k = 1; k <= 4; ++k) {
      IntVector v = g * iv({1, 0}), v2 = g * iv({0, 1});
      auto cx = ConeComplex::embedded_fan(2, {{"v", {v}, {}}, {"v2", {v2}, {}}, {"rho", {v, v2}, {}}});
      TropicalType t;
      t.add_vertex("w", "v");
      t.add_leg("L", 0, "rho", local(cx, "rho", g * iv({-k, k})));
      EXPECT_EQ(k_tau(DecoratedType(t), cx), k);
    }
  }
}

TEST(KTau, RejectsNonWallTypes) {
  auto q = fixtures::quadrant();
  TropicalType t;
  t.add_vertex("v", "r1");
  t.add_leg("L", 0, "r1", iv({1}));
  EXPECT_THROW(k_tau(DecoratedType(t), q), DomainError);
}

TEST(TauOut, BalancedTriple) {
  auto hex = fixtures::hexagon();
  TropicalType t;
  t.add_vertex("v", "c");
  t.add_leg("a", 0, "c0", local(hex, "c0", iv({1, 0, 0})));
  t.add_leg("b", 0, "c2", local(hex, "c2", iv({0, 1, 0})));
  t.add_leg("c", 0, "c4", local(hex, "c4", iv({-1, -1, 0})));
  auto out = tau_out_at(t, hex, 0);
  EXPECT_EQ(out.v_x, iv({0, 0, 1}));
  EXPECT_EQ(out.rays.size(), 3u);
  EXPECT_EQ(out.intersections, (std::vector<Integer>{1, 1, 1}));
  EXPECT_TRUE(out.balanced);
  std::set<IntVector> images;
  for (auto &l : out.legs) {
    EXPECT_EQ(l.weight, 1);
    images.insert(l.u);
  }
  // the images are a basis pair and minus their sum, in some basis of Z^3/Z v_x
  IntVector s(2);
  for (auto &u : images)
    s = s + u;
  EXPECT_TRUE(is_zero(s));
  auto it = images.begin();
  IntVector a = *it++, b = *it;
  EXPECT_EQ(abs(a[0] * b[1] - a[1] * b[0]), 1);
}

TEST(TauOut, MinusOneCurve) {
  for (long long k = 1; k <= 6; ++k) {
    auto cx = fixtures::minus_one_curve(1, 2);
    auto out = build_tau_out(fixtures::minus_one_type(1, 2, k), cx);
    ASSERT_EQ(out.legs.size(), 1u);
    EXPECT_EQ(out.rays.size(), 1u);
    EXPECT_EQ(out.legs[0].weight, k);
    EXPECT_EQ(out.intersections, std::vector<Integer>{Integer(k)});
    EXPECT_FALSE(out.balanced);
  }
}

TEST(TauOut, FlatEdgeRejected) {
  auto hex = fixtures::hexagon();
  TropicalType t;
  t.add_vertex("v", "c");
  t.add_leg("a", 0, "c", iv({1}));
  EXPECT_THROW(tau_out_at(t, hex, 0), DomainError);
}

TEST(Classical, CoefficientIsWeightProductOverMTau) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> nw(1, 4), wd(1, 6);
  auto cx = fixtures::quadrant();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long long> w(nw(rng));
    for (auto &x : w)
      x = wd(rng);
    auto c = classical_coefficient(fixtures::classical_type(w).type, cx);
    Integer prod = 1;
    for (auto x : w)
      prod *= x;
    // the vertex positions a e1, a e2 need w_i | a for all i
    long long m = 1;
    while (std::any_of(w.begin(), w.end(), [&](long long x) { return m % x; }))
      ++m;
    EXPECT_EQ(c.rigid.mu_rigid, prod);
    EXPECT_TRUE(c.rigid.snake_ok);
    EXPECT_EQ(c.rigid.m_tau, m);
    EXPECT_EQ(c.weight_product, prod);
    EXPECT_EQ(c.coefficient, Rational(prod, m));
    EXPECT_TRUE(c.transverse);
  }
}

TEST(Classical, SingleEdge) {
  auto cx = fixtures::quadrant();
  for (long long w = 1; w <= 5; ++w) {
    auto c = classical_coefficient(fixtures::classical_type({w}).type, cx);
    EXPECT_EQ(c.rigid.m_tau, w);
    EXPECT_EQ(c.coefficient, 1);
  }
}

TEST(Classical, ShapeViolations) {
  auto cx = fixtures::quadrant();
  TropicalType t;
  t.add_vertex("v1", "r1");
  t.add_vertex("v2", "q");
  t.add_edge("E", 0, 1, "q", iv({0, 1}));
  EXPECT_THROW(classical_coefficient(t, cx), DomainError);
  TropicalType one;
  one.add_vertex("v1", "r1");
  EXPECT_THROW(classical_coefficient(one, cx), DomainError);
}
