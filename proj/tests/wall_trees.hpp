#pragma once

// Random wall trees and a flattened evaluation that never calls the
// recursion step.

#include "tropglue/formulas.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace wall_trees {

using namespace tropglue;

inline WallTree random_tree(std::mt19937_64 &rng, int depth) {
  std::uniform_int_distribution<int> q_dist(0, depth > 0 ? 3 : 0), small(1, 3), lab(0, 1);
  WallTree t;
  t.label = lab(rng) ? "a" : "b";
  int q = q_dist(rng);
  if (q == 0 && small(rng) == 1) {
    t.base_kW = multiple_cover(small(rng));
    return t;
  }
  t.N_out = Rational(small(rng), small(rng));
  t.w_out = small(rng);
  for (int i = 0; i < q; ++i)
    t.children.push_back(random_tree(rng, depth - 1));
  if (q >= 2 && lab(rng))
    t.children[1] = t.children[0];
  return t;
}

// permutations of the children fixing the multiset of their canonical forms
inline Integer brute_aut(const std::vector<WallTree> &cs) {
  std::vector<std::size_t> p(cs.size());
  std::iota(p.begin(), p.end(), 0);
  Integer n = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < p.size(); ++i)
      ok = ok && cs[p[i]].canonical() == cs[i].canonical();
    if (ok)
      ++n;
  } while (std::next_permutation(p.begin(), p.end()));
  return n;
}

// every node contributes w N / Aut; leaves contribute their value
inline Rational flattened(const WallTree &t) {
  if (t.base_kW)
    return *t.base_kW;
  Rational r = Rational(t.w_out) * t.N_out / Rational(brute_aut(t.children));
  for (auto &c : t.children)
    r *= flattened(c);
  return r;
}

} // namespace wall_trees
