#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the Smith normal form code.

#include "tropglue/int_matrix.hpp"

#include <functional>
#include <optional>
#include <random>
#include <set>

namespace oracle {

using tropglue::IntMatrix;
using tropglue::Integer;
using tropglue::IntVector;

inline IntMatrix random_matrix(std::mt19937_64 &rng, int max_rows, int max_cols, int bound) {
  std::uniform_int_distribution<int> rd(1, max_rows), cd(1, max_cols), ed(-bound, bound);
  IntMatrix M(rd(rng), cd(rng));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      M(i, j) = ed(rng);
  return M;
}

inline bool is_snf_shape(const IntMatrix &D) {
  Integer prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j) {
      if (i != j && D(i, j) != 0)
        return false;
      if (i == j) {
        if (D(i, i) < 0)
          return false;
        if (D(i, i) == 0) {
          zero_seen = true;
        } else {
          if (zero_seen || D(i, i) % prev != 0)
            return false;
          prev = D(i, i);
        }
      }
    }
  return true;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t> &)> &f) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (pick.size() == k) {
      f(pick);
      return;
    }
    for (std::size_t i = s; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

// d_k = D_k / D_{k-1}, D_k = gcd of k x k minors
inline std::vector<Integer> determinantal_invariants(const IntMatrix &M) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(M.rows(), M.cols()); ++k) {
    Integer g = 0;
    subsets(M.rows(), k, [&](const std::vector<std::size_t> &rs) {
      subsets(M.cols(), k, [&](const std::vector<std::size_t> &cs) {
        IntMatrix S(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            S(i, j) = M(rs[i], cs[j]);
        g = boost::multiprecision::gcd(g, tropglue::determinant(S));
      });
    });
    if (g == 0)
      break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

// |Z^m / im M| by enumerating cosets with a triangular basis of im M; the
// lattice must have full rank. nullopt when the group exceeds `limit`.
inline std::optional<Integer> coset_count(const IntMatrix &M, std::size_t limit) {
  const std::size_t m = M.rows();
  std::vector<IntVector> cols = M.columns();
  std::vector<IntVector> basis;
  std::size_t c = 0;
  for (std::size_t r = 0; r < m; ++r) {
    // euclid across columns c.. on row r
    for (;;) {
      std::size_t best = cols.size();
      for (std::size_t j = c; j < cols.size(); ++j)
        if (cols[j][r] != 0 && (best == cols.size() || abs(cols[j][r]) < abs(cols[best][r])))
          best = j;
      if (best == cols.size())
        return std::nullopt; // not full rank
      std::swap(cols[c], cols[best]);
      bool done = true;
      for (std::size_t j = c + 1; j < cols.size(); ++j) {
        if (cols[j][r] == 0)
          continue;
        Integer q = cols[j][r] / cols[c][r];
        for (std::size_t i = 0; i < m; ++i)
          cols[j][i] -= q * cols[c][i];
        if (cols[j][r] != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (cols[c][r] < 0)
      for (auto &x : cols[c])
        x = -x;
    basis.push_back(cols[c]);
    ++c;
  }
  auto reduce = [&](IntVector x) {
    for (std::size_t k = 0; k < m; ++k) {
      Integer q = floor_div(x[k], basis[k][k]);
      if (q != 0)
        for (std::size_t i = 0; i < m; ++i)
          x[i] -= q * basis[k][i];
    }
    return x;
  };
  std::set<IntVector> seen{IntVector(m)};
  std::vector<IntVector> frontier{IntVector(m)};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (auto &x : frontier)
      for (std::size_t i = 0; i < m; ++i) {
        IntVector y = x;
        y[i] += 1;
        y = reduce(y);
        if (seen.insert(y).second) {
          if (seen.size() > limit)
            return std::nullopt;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return Integer(seen.size());
}

} // namespace oracle
