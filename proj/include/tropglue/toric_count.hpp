#pragma once

#include "tropglue/formulas.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>

namespace tropglue {

struct ToricEnd {
  IntVector m; // primitive direction
  Integer w = 1;
  IntVector u() const { return w * m; }
};

struct ToricCountProblem {
  std::vector<IntVector> fan_rays; // may be empty: no fan check
  std::vector<ToricEnd> constrained;
  ToricEnd out;

  std::size_t end_count() const { return constrained.size() + 1; }

  void validate() const {
    if (end_count() > 6)
      throw DomainError("toric count is limited to six ends");
    IntVector sum(2);
    auto check = [&](const ToricEnd &e) {
      if (e.m.size() != 2)
        throw DomainError("toric ends live in a rank two lattice");
      if (vector_index(e.m) != 1)
        throw DomainError("end direction is not primitive");
      if (e.w <= 0)
        throw DomainError("end weights must be positive");
      if (!fan_rays.empty() && std::find(fan_rays.begin(), fan_rays.end(), e.m) == fan_rays.end())
        throw DomainError("end direction is not a ray of the fan");
      sum = sum + e.u();
    };
    for (auto &e : constrained)
      check(e);
    check(out);
    if (!is_zero(sum))
      throw DomainError("contact orders do not balance");
  }
};

// labeled trivalent tree: leaves 0..n-1, internal vertices n..2n-3
struct TrivalentTree {
  std::size_t leaves = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

inline std::vector<TrivalentTree> enumerate_types(std::size_t n) {
  if (n > 6)
    throw DomainError("tree enumeration is limited to six leaves");
  std::vector<TrivalentTree> out;
  if (n < 3)
    return out;
  // insert leaf k by subdividing an edge of a tree on leaves 0..k-1; the new
  // internal vertex gets the next free label
  std::function<void(TrivalentTree, std::size_t, std::size_t)> grow = [&](TrivalentTree t, std::size_t k,
                                                                          std::size_t next) {
    if (k == n) {
      out.push_back(t);
      return;
    }
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      TrivalentTree s = t;
      auto [a, b] = s.edges[i];
      s.edges[i] = {a, next};
      s.edges.push_back({next, b});
      s.edges.push_back({k, next});
      grow(s, k + 1, next + 1);
    }
  };
  // internal labels are provisional (counting from 100) and relabeled below
  TrivalentTree t0;
  t0.edges = {{0, 100}, {1, 100}, {2, 100}};
  grow(t0, 3, 101);
  for (auto &t : out) {
    t.leaves = n;
    for (auto &[a, b] : t.edges) {
      if (a >= 100)
        a = a - 100 + n;
      if (b >= 100)
        b = b - 100 + n;
    }
  }
  return out;
}

inline Integer vertex_multiplicity(const IntVector &u1, const IntVector &u2) {
  return abs(u1[0] * u2[1] - u1[1] * u2[0]);
}

struct TropicalSolution {
  std::size_t tree = 0;                          // index into enumerate_types
  std::vector<std::pair<Rational, Rational>> position; // internal vertices
  std::vector<Rational> length;                  // bounded edges, in tree edge order
  Integer multiplicity;
};

struct ToricCountResult {
  Rational count;
  Integer multiplicity_sum;
  std::vector<TropicalSolution> solutions;
  RatVector configuration; // line offsets of the constrained ends
  std::uint64_t seed = 0;
  unsigned attempts = 0;
  std::size_t trees = 0;
};

namespace detail {

// exact solve of a square system; nullopt when singular
inline std::optional<RatVector> solve_square(std::vector<RatVector> a, RatVector b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0)
      ++p;
    if (p == n)
      return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0)
        continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j)
        a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = b[i] / a[i][i];
  return x;
}

struct TreeOutcome {
  enum Kind { None, Found, Degenerate } kind = None;
  TropicalSolution solution;
};

inline TreeOutcome solve_tree(const ToricCountProblem &p, const TrivalentTree &t, const RatVector &offsets) {
  const std::size_t n = t.leaves, nint = n - 2;
  auto u_of = [&](std::size_t leaf) { return leaf + 1 == n ? p.out.u() : p.constrained[leaf].u(); };
  std::vector<std::vector<std::size_t>> adj(2 * n - 2);
  for (auto &[a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // outgoing flow through the directed edge a -> b
  std::function<IntVector(std::size_t, std::size_t)> flow = [&](std::size_t a, std::size_t b) {
    if (b < n)
      return u_of(b);
    IntVector s(2);
    for (auto c : adj[b])
      if (c != a)
        s = s + flow(b, c);
    return s;
  };
  std::vector<std::size_t> bounded;
  for (std::size_t i = 0; i < t.edges.size(); ++i)
    if (t.edges[i].first >= n && t.edges[i].second >= n)
      bounded.push_back(i);
  std::vector<IntVector> dir(t.edges.size());
  for (auto i : bounded) {
    dir[i] = flow(t.edges[i].first, t.edges[i].second);
    if (is_zero(dir[i]))
      return {};
  }
  const std::size_t nvar = 2 * nint + bounded.size();
  std::vector<RatVector> a;
  RatVector b;
  auto xv = [&](std::size_t v) { return 2 * (v - n); };
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    auto [s, e] = t.edges[bounded[k]];
    for (int c = 0; c < 2; ++c) {
      RatVector row(nvar);
      row[xv(e) + c] += 1;
      row[xv(s) + c] -= 1;
      row[2 * nint + k] = Rational(-dir[bounded[k]][c]);
      a.push_back(row);
      b.push_back(0);
    }
  }
  for (auto &[x, y] : t.edges) {
    std::size_t leaf = x < n ? x : y, v = x < n ? y : x;
    if (leaf >= n || leaf + 1 == n)
      continue;
    const IntVector &m = p.constrained[leaf].m;
    RatVector row(nvar);
    row[xv(v)] = Rational(-m[1]);
    row[xv(v) + 1] = Rational(m[0]);
    a.push_back(row);
    b.push_back(offsets[leaf]);
  }
  auto sol = solve_square(a, b);
  if (!sol)
    return {};
  TreeOutcome o;
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    const Rational &l = (*sol)[2 * nint + k];
    if (l == 0)
      o.kind = TreeOutcome::Degenerate;
    else if (l < 0)
      return {};
    o.solution.length.push_back(l);
  }
  if (o.kind == TreeOutcome::Degenerate)
    return o;
  o.kind = TreeOutcome::Found;
  Integer mult = 1;
  for (std::size_t v = n; v < 2 * n - 2; ++v) {
    o.solution.position.push_back({(*sol)[xv(v)], (*sol)[xv(v) + 1]});
    mult *= vertex_multiplicity(flow(v, adj[v][0]), flow(v, adj[v][1]));
  }
  o.solution.multiplicity = mult;
  return o;
}

inline RatVector random_offsets(std::mt19937_64 &rng, std::size_t k) {
  std::uniform_int_distribution<long long> d(-1000000, 1000000);
  RatVector c(k);
  for (auto &x : c)
    x = Rational(d(rng), 997);
  return c;
}

} // namespace detail

// Tropical count through generic lines parallel to the constrained ends:
// the sum of vertex multiplicities divided by the product of constrained
// weights. Offsets are drawn from the seed unless given; a degenerate
// configuration is re-drawn, up to `max_attempts` times.
inline ToricCountResult count(const ToricCountProblem &p, std::uint64_t seed,
                              std::optional<RatVector> offsets = std::nullopt, unsigned max_attempts = 16) {
  p.validate();
  if (offsets && offsets->size() != p.constrained.size())
    throw DomainError("one offset per constrained end expected");
  std::mt19937_64 rng(seed);
  auto trees = enumerate_types(p.end_count());
  ToricCountResult r;
  r.seed = seed;
  r.trees = trees.size();
  RatVector c = offsets ? *offsets : detail::random_offsets(rng, p.constrained.size());
  for (r.attempts = 1; r.attempts <= max_attempts; ++r.attempts) {
    bool degenerate = false;
    r.solutions.clear();
    for (std::size_t i = 0; i < trees.size() && !degenerate; ++i) {
      auto o = detail::solve_tree(p, trees[i], c);
      if (o.kind == detail::TreeOutcome::Degenerate)
        degenerate = true;
      else if (o.kind == detail::TreeOutcome::Found) {
        o.solution.tree = i;
        r.solutions.push_back(std::move(o.solution));
      }
    }
    if (!degenerate) {
      r.configuration = c;
      r.multiplicity_sum = 0;
      for (auto &s : r.solutions)
        r.multiplicity_sum += s.multiplicity;
      Integer wprod = 1;
      for (auto &e : p.constrained)
        wprod *= e.w;
      r.count = Rational(r.multiplicity_sum, wprod);
      return r;
    }
    auto shift = detail::random_offsets(rng, c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] += shift[i] / 1000;
  }
  throw DomainError("no generic configuration found after " + std::to_string(max_attempts) + " attempts");
}

// N_beta(P) for the blow-up formula: the base ends plus one constrained end
// of weight p along the divisor direction of (k,l) for every part p
inline ToricCountProblem problem_for_collection(const ToricCountProblem &base,
                                                const std::map<WeightKey, IntVector> &directions,
                                                const PartitionCollection &c) {
  ToricCountProblem q = base;
  for (auto &[key, parts] : c) {
    auto it = directions.find(key);
    if (it == directions.end())
      throw DomainError("no divisor direction for (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ")");
    for (auto x : parts)
      q.constrained.push_back({it->second, Integer(x)});
  }
  return q;
}

inline PartitionOracle toric_oracle(const ToricCountProblem &base, const std::map<WeightKey, IntVector> &directions,
                                    std::uint64_t seed) {
  return [=](const PartitionCollection &c) { return count(problem_for_collection(base, directions, c), seed).count; };
}

} // namespace tropglue
