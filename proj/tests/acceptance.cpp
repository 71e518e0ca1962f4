// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures (capped at 1).

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wall_trees.hpp"
#include "tropglue/toric_count.hpp"
#include "tropglue/wall.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

using namespace tropglue;
using fixtures::iv;

namespace {

// collects the first few mismatches of a criterion
struct Check {
  bool ok = true;
  std::ostringstream why;
  int reported = 0;

  void expect(bool cond, const std::string &what) {
    if (cond)
      return;
    ok = false;
    if (reported++ < 3)
      why << (reported > 1 ? "; " : "") << what;
  }
};

template <class T> std::string str(const T &x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

void snf_correctness(Check &c) {
  std::mt19937_64 rng(2024);
  int counted = 0;
  for (int rep = 0; rep < 500; ++rep) {
    IntMatrix M = oracle::random_matrix(rng, 5, 5, 6);
    auto s = smith_normal_form(M);
    c.expect(s.U * M * s.V == s.D, "U M V != D at " + str(rep));
    c.expect(abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1, "U or V not unimodular at " + str(rep));
    c.expect(oracle::is_snf_shape(s.D), "D not in normal form at " + str(rep));
    if (is_cokernel_finite(M)) {
      if (auto n = oracle::coset_count(M, 10000)) {
        ++counted;
        c.expect(torsion_order(cokernel(M)) == *n, "torsion differs from coset count at " + str(rep));
      }
    }
  }
  c.expect(counted > 0, "no finite cokernel was sampled");
}

void transpose_duality(Check &c) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 3), entry(0, 3);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = dim(rng), m1 = dim(rng), m2 = dim(rng);
    auto local_map = [&](std::size_t m) {
      IntMatrix t(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          t(i, j) = entry(rng);
      for (std::size_t j = 0; j < n; ++j) {
        bool pos = false;
        for (std::size_t i = 0; i < m; ++i)
          pos = pos || t(i, j) > 0;
        if (!pos)
          t(0, j) = 1;
      }
      return t;
    };
    PointDiagram d{FsSharpMonoid::free(n), FsSharpMonoid::free(m1), FsSharpMonoid::free(m2),
                   local_map(m1), local_map(m2), {}};
    c.expect(fs_point_fibre_components(d) == fs_point_fibre_components_dual(d), "mismatch at " + str(rep));
  }
}

void two_edge(Check &c) {
  for (auto [w1, w2] : {std::pair{2, 3}, {3, 5}, {1, 4}}) {
    auto r = glue_verdict(fixtures::two_edge_problem(w1, w2));
    std::string at = "(" + str(w1) + "," + str(w2) + ")";
    c.expect(r.mu == 1, "mu = " + r.mu.str() + " at " + at);
    c.expect(r.kernel_rank == 1, "kernel rank " + str(r.kernel_rank) + " at " + at);
    c.expect(!r.transverse, "transverse at " + at);
  }
}

void conifold(Check &c) {
  auto p = fixtures::conifold_problem();
  c.expect(!is_transverse(p), "transverse");
  c.expect(cokernel(build_psi(p)).rank == 1, "cokernel rank " + str(cokernel(build_psi(p)).rank));
}

void classical(Check &c) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> nw(1, 4), wd(1, 6);
  auto cx = fixtures::quadrant();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long long> w(nw(rng));
    for (auto &x : w)
      x = wd(rng);
    auto cc = classical_coefficient(fixtures::classical_type(w).type, cx);
    Integer prod = 1;
    for (auto x : w)
      prod *= x;
    // smallest common position a e1 ~ a e2 reachable by all edges
    long long m = 1;
    while (std::any_of(w.begin(), w.end(), [&](long long x) { return m % x; }))
      ++m;
    c.expect(cc.rigid.mu_rigid == prod, "mu = " + cc.rigid.mu_rigid.str() + " for product " + prod.str());
    c.expect(cc.rigid.snake_ok, "snake identity fails at trial " + str(trial));
    c.expect(cc.rigid.m_tau == m, "m_tau = " + cc.rigid.m_tau.str() + ", expected " + str(m));
    c.expect(cc.coefficient == Rational(prod, m), "coefficient " + to_string(cc.coefficient));
  }
}

void snake(Check &c) {
  std::mt19937_64 rng(77);
  int two = 0, three = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = fixtures::random_rigid(rng);
    (inst.complex.global_rank() == 2u ? two : three)++;
    auto r = rigid_report(inst.type, inst.complex);
    c.expect(r.mu_rigid == r.m_tau * r.mu,
             "trial " + str(trial) + ": " + r.mu_rigid.str() + " != " + r.m_tau.str() + " * " + r.mu.str());
  }
  c.expect(two > 0 && three > 0, "both base complexes should occur");
}

void k_tau_examples(Check &c) {
  for (auto [mu, mu2] : {std::pair{1, 1}, {1, 2}})
    for (long long k = 1; k <= 6; ++k) {
      if ((k * mu2) % mu)
        continue;
      auto cx = fixtures::minus_one_curve(mu, mu2);
      auto kt = k_tau(fixtures::minus_one_type(mu, mu2, k), cx);
      c.expect(kt == k, "k = " + str(k) + " gave " + kt.str());
    }
}

void multiple_cover_values(Check &c) {
  for (long long k = 1; k <= 10; ++k) {
    Rational expected(k % 2 ? 1 : -1, k * k);
    c.expect(multiple_cover(k) == expected, "k = " + str(k));
  }
  auto one = [](const PartitionCollection &) { return Rational(1); };
  for (unsigned w = 0; w <= 8; ++w) {
    auto v = blowup_formula({{{1, 1}, w}}, one).value;
    c.expect(v == Rational(w % 2 ? -1 : 1), "w = " + str(w) + " gave " + to_string(v));
  }
}

void wall_recursion(Check &c) {
  WallRecursionInput leafless{{}, Rational(3, 5), 4, std::nullopt};
  c.expect(wall_recursion_step(leafless).kW == Rational(12, 5), "q = 0");
  WallChild a;
  a.k = 2;
  a.W = Rational(1, 3);
  a.key = "A";
  auto twins = wall_recursion_step({{a, a}, Rational(5), 3, std::nullopt});
  c.expect(twins.aut == 2, "Aut of two identical children is " + twins.aut.str());
  c.expect(twins.kW == Rational(3) * Rational(5) * Rational(2, 3) * Rational(2, 3) / 2, "identical children");
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    auto t = wall_trees::random_tree(rng, 3);
    c.expect(evaluate_wall_tree(t) == wall_trees::flattened(t), "tree " + t.canonical());
  }
}

ToricEnd end(long long x, long long y, long long w = 1) { return {iv({x, y}), w}; }

void toric(Check &c) {
  ToricCountProblem line{{}, {end(-1, 0), end(0, -1)}, end(1, 1)};
  c.expect(count(line, 0).count == 1, "line count " + to_string(count(line, 0).count));
  std::vector<ToricCountProblem> problems{
      line,
      {{}, {end(-1, 0), end(-1, 0), end(0, -1), end(0, -1)}, end(1, 1, 2)},
      {{}, {end(-1, 0, 2), end(0, -1), end(0, -1)}, end(1, 1, 2)},
      {{}, {end(-1, 0), end(-1, 0), end(0, -1), end(0, -1), end(0, -1)}, end(2, 3)},
  };
  for (std::size_t i = 0; i < problems.size(); ++i) {
    Rational ref = count(problems[i], 100).count;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      c.expect(count(problems[i], seed).count == ref, "problem " + str(i) + " seed " + str(seed));
  }
  ToricCountProblem coarse{{iv({-1, 0}), iv({0, -1}), iv({1, 1})},
                           {end(-1, 0), end(-1, 0), end(0, -1), end(0, -1)},
                           end(1, 1, 2)};
  auto fine = coarse;
  fine.fan_rays.push_back(iv({1, 0}));
  fine.fan_rays.push_back(iv({0, 1}));
  fine.fan_rays.push_back(iv({-1, -1}));
  c.expect(count(coarse, 3).count == count(fine, 4).count, "refinement changes the count");

  ToricCountProblem base{{}, {end(-1, 0, 2)}, end(1, 1, 2)};
  std::map<WeightKey, IntVector> dirs{{{1, 1}, iv({0, -1})}};
  auto r = blowup_formula({{{1, 1}, 2}}, toric_oracle(base, dirs, 21));
  // [2]: (+1/2) N, Aut 1;  [1,1]: (-1)(-1) N, Aut 2
  ToricCountProblem one_part{{}, {end(-1, 0, 2), end(0, -1, 2)}, end(1, 1, 2)};
  ToricCountProblem two_parts{{}, {end(-1, 0, 2), end(0, -1), end(0, -1)}, end(1, 1, 2)};
  Rational hand = Rational(1, 2) * count(one_part, 21).count + count(two_parts, 21).count / 2;
  c.expect(r.value == hand, "blow-up " + to_string(r.value) + " vs hand sum " + to_string(hand));
}

IntVector local(const ConeComplex &cx, const std::string &id, const IntVector &global) {
  const auto &c = cx.get(id);
  return c.embedding ? *solve_integer(*c.embedding, global) : global;
}

void flatness(Check &c) {
  auto q = fixtures::quadrant();
  for (std::vector<long long> w : {std::vector<long long>{1}, {2, 3}, {1, 1, 2}}) {
    auto s = split(fixtures::classical_type(w), {0});
    for (auto &part : s.parts) {
      std::vector<std::size_t> legs(part.type.legs.size());
      std::iota(legs.begin(), legs.end(), 0);
      c.expect(flatness_check(part.type, q, legs, cone_generizations(part.type, q)).flat, "classical piece");
    }
  }
  auto hex = fixtures::hexagon();
  auto orth = fixtures::orthant3();
  struct Case {
    const ConeComplex *cx;
    std::string vertex, leg;
    IntVector u;
  };
  std::vector<Case> cases{{&hex, "c", "c0", iv({1, 0, 0})},  {&hex, "c", "c3", iv({-2, 0, 0})},
                          {&hex, "r1", "c1", iv({0, 0, 1})}, {&orth, "e1", "e12", iv({0, 1, 0})},
                          {&orth, "e3", "e13", iv({1, 0, 0})}};
  for (auto &k : cases) {
    TropicalType t;
    t.add_vertex("v", k.vertex);
    t.add_leg("L", 0, k.leg, local(*k.cx, k.leg, k.u));
    c.expect(flatness_check(t, *k.cx, {0}, cone_generizations(t, *k.cx)).flat, "single leg at " + k.vertex);
  }
  // two legs out of a ray vertex: moving the vertex into the cone between
  // them keeps dim tau' too small
  TropicalType t;
  t.add_vertex("v", "c");
  t.add_leg("L1", 0, "c0", local(hex, "c0", iv({1, 0, 0})));
  t.add_leg("L2", 0, "c2", local(hex, "c2", iv({0, 1, 0})));
  TropicalType bad = t;
  bad.vertices[0].sigma = "c1";
  bad.legs[0].sigma = "c01";
  bad.legs[0].u = local(hex, "c01", iv({1, 0, 0}));
  bad.legs[1].sigma = "c12";
  bad.legs[1].u = local(hex, "c12", iv({0, 1, 0}));
  auto r = flatness_check(t, hex, {0, 1}, {{bad, identity_contraction(bad)}});
  c.expect(!r.flat, "fabricated candidate passes");
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Check &)> run;
};

} // namespace

int main() {
  std::vector<Criterion> all{
      {1, "Smith normal form on 500 random matrices", 5, snf_correctness},
      {2, "transpose duality on 200 diagrams", 2, transpose_duality},
      {3, "two-edge example", 1, two_edge},
      {4, "conifold example", 1, conifold},
      {5, "classical coefficient on 20 weight tuples", 2, classical},
      {6, "snake identity on 50 rigid types", 5, snake},
      {7, "k_tau of the -1-curve wall type", 1, k_tau_examples},
      {8, "multiple cover and constant-oracle blow-up", 1, multiple_cover_values},
      {9, "wall recursion degeneracies and nesting", 1, wall_recursion},
      {10, "toric oracle", 30, toric},
      {11, "flatness criterion", 1, flatness},
  };
  int failed = 0;
  for (auto &cr : all) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception &e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > cr.limit_s)
      c.expect(false, "took " + str(s) + " s, limit " + str(cr.limit_s) + " s");
    std::printf("%s criterion %d: %s (%.3f s)%s%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name.c_str(), s,
                c.ok ? "" : " -- ", c.why.str().c_str());
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
