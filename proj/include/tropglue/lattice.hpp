#pragma once

#include "tropglue/int_matrix.hpp"

#include <optional>

namespace tropglue {

struct SNFDecomposition {
  IntMatrix D, U, V;
  IntMatrix U_inv; // U^{-1}, kept for saturation and solving
  std::vector<Integer> diagonal; // all nonzero diagonal entries, d_1 | d_2 | ...
  std::size_t rank() const { return diagonal.size(); }
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (auto &d : diagonal)
      if (d != 1)
        out.push_back(d);
    return out;
  }
};

// U * M * V = D. Pivot: nonzero entry of least absolute value, ties broken by
// (row, col) order, so the output is a function of M alone.
inline SNFDecomposition smith_normal_form(const IntMatrix &M) {
  const std::size_t m = M.rows(), n = M.cols();
  IntMatrix A = M, U = IntMatrix::identity(m), Ui = IntMatrix::identity(m),
            V = IntMatrix::identity(n);

  auto row_swap = [&](std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    U.swap_rows(a, b);
    Ui.swap_cols(a, b);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_cols(a, b);
  };
  // row_dst += c * row_src
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer &c) {
    A.add_row(dst, src, c);
    U.add_row(dst, src, c);
    Ui.add_col(src, dst, -c);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer &c) {
    A.add_col(dst, src, c);
    V.add_col(dst, src, c);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // global pivot choice over the remaining block
    bool found = false;
    std::size_t pr = 0, pc = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (A(i, j) != 0 && (!found || abs(A(i, j)) < abs(A(pr, pc)))) {
          found = true;
          pr = i;
          pc = j;
        }
    if (!found)
      break;
    row_swap(t, pr);
    col_swap(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0)
          continue;
        Integer q = A(i, t) / A(t, t);
        row_add(i, t, -q);
        if (A(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0)
          continue;
        Integer q = A(t, j) / A(t, t);
        col_add(j, t, -q);
        if (A(t, j) != 0)
          clean = false;
      }
      if (!clean) {
        // move the smallest remainder in row t / column t onto the pivot
        std::size_t br = t, bc = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < abs(A(br, bc))) {
            br = i;
            bc = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < abs(A(br, bc))) {
            br = t;
            bc = j;
          }
        row_swap(t, br);
        col_swap(t, bc);
        continue;
      }
      // divisibility of the remaining block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (A(t, t) < 0) {
      A.negate_row(t);
      U.negate_row(t);
      Ui.negate_col(t);
    }
  }

  SNFDecomposition s{A, U, V, Ui, {}};
  for (std::size_t i = 0; i < std::min(m, n) && A(i, i) != 0; ++i)
    s.diagonal.push_back(A(i, i));
  return s;
}

inline std::size_t rank(const IntMatrix &M) { return smith_normal_form(M).rank(); }

struct FGAbelian {
  std::size_t rank = 0;
  std::vector<Integer> invariant_factors; // each >= 2, divisibility chain

  bool operator==(const FGAbelian &) const = default;
  bool is_finite() const { return rank == 0; }
};

inline Integer torsion_order(const FGAbelian &G) {
  Integer t = 1;
  for (auto &d : G.invariant_factors)
    t *= d;
  return t;
}

inline FGAbelian cokernel(const IntMatrix &M) {
  auto s = smith_normal_form(M);
  return FGAbelian{M.rows() - s.rank(), s.invariant_factors()};
}

inline bool is_cokernel_finite(const IntMatrix &M) { return rank(M) == M.rows(); }

// columns: a basis of the (automatically saturated) kernel lattice
inline IntMatrix kernel_lattice(const IntMatrix &M) {
  auto s = smith_normal_form(M);
  return s.V.select_columns(s.rank(), M.cols());
}

// integral solution of M x = b, if any
inline std::optional<IntVector> solve_integer(const IntMatrix &M, const IntVector &b) {
  if (b.size() != M.rows())
    throw std::invalid_argument("solve_integer: size mismatch");
  auto s = smith_normal_form(M);
  IntVector y = s.U * b;
  IntVector z(M.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < s.rank()) {
      if (y[i] % s.diagonal[i] != 0)
        return std::nullopt;
      z[i] = y[i] / s.diagonal[i];
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * z;
}

// basis (columns) of the saturation (R-span ∩ Z^n) of the column span of B
inline IntMatrix saturate_sublattice(const IntMatrix &B) {
  auto s = smith_normal_form(B);
  return s.U_inv.select_columns(0, s.rank());
}

// basis (columns) of the column span of B itself
inline IntMatrix lattice_basis(const IntMatrix &B) {
  auto s = smith_normal_form(B);
  IntMatrix out = s.U_inv.select_columns(0, s.rank());
  for (std::size_t j = 0; j < s.rank(); ++j)
    for (std::size_t i = 0; i < out.rows(); ++i)
      out(i, j) *= s.diagonal[j];
  return out;
}

// [L_sup : L_sub] for lattices given by generating columns in a common Z^n
inline Integer lattice_index(const IntMatrix &sub, const IntMatrix &sup) {
  if (sub.rows() != sup.rows())
    throw DomainError("lattice_index: ambient mismatch");
  IntMatrix basis = lattice_basis(sup);
  std::vector<IntVector> coords;
  for (std::size_t j = 0; j < sub.cols(); ++j) {
    auto c = solve_integer(basis, sub.column(j));
    if (!c)
      throw DomainError("lattice_index: sublattice not contained");
    coords.push_back(*c);
  }
  IntMatrix C = IntMatrix::from_columns(coords, basis.cols());
  auto s = smith_normal_form(C);
  if (s.rank() != basis.cols())
    throw DomainError("lattice_index: ranks differ");
  Integer idx = 1;
  for (auto &d : s.diagonal)
    idx *= d;
  return idx;
}

// quotient map Z^n -> Z^{n-1} killing a primitive vector v, as an (n-1) x n
// matrix, together with a section: lift * quotient-coordinates.
struct QuotientByVector {
  IntMatrix quotient; // (n-1) x n
  IntMatrix lift;     // n x (n-1), quotient * lift = identity
};

inline QuotientByVector quotient_by_vector(const IntVector &v) {
  if (vector_index(v) != 1)
    throw DomainError("quotient_by_vector: vector not primitive");
  IntMatrix col = IntMatrix::from_columns({v});
  auto s = smith_normal_form(col);
  // U v = e_1 (up to the 1x1 V, which is ±1)
  std::size_t n = v.size();
  return {s.U.select_rows(1, n), s.U_inv.select_columns(1, n)};
}

} // namespace tropglue
