#pragma once

#include "tropglue/cone.hpp"

namespace tropglue {

// P = dual_cone^vee ∩ M, with M = Hom(N, Z); P^gp = M = Z^rank.
struct FsSharpMonoid {
  Cone dual_cone;

  explicit FsSharpMonoid(Cone c) : dual_cone(std::move(c)) {}
  static FsSharpMonoid free(std::size_t n) { return FsSharpMonoid(Cone::orthant(n)); }

  std::size_t rank() const { return dual_cone.ambient_rank(); }
  bool is_sharp() const { return dual_cone.is_full_dimensional() && dual_cone.is_strictly_convex(); }
};

// theta: P -> Q given as a (rank Q) x (rank P) matrix on groups; its
// transpose maps Q^vee into P^vee.
inline bool maps_monoid_into(const FsSharpMonoid &P, const FsSharpMonoid &Q, const IntMatrix &theta) {
  IntMatrix tt = theta.transpose();
  for (auto &g : Q.dual_cone.generators())
    if (!P.dual_cone.contains(tt * g))
      return false;
  return true;
}

inline bool is_local_hom(const FsSharpMonoid &P, const FsSharpMonoid &Q, const IntMatrix &theta) {
  if (theta.rows() != Q.rank() || theta.cols() != P.rank())
    throw DomainError("homomorphism has wrong shape");
  if (!maps_monoid_into(P, Q, theta))
    throw DomainError("homomorphism does not map P into Q");
  // the image of a relative interior point of Q^vee lies in the relative
  // interior of theta^t(Q^vee), which meets Int(P^vee) iff it lies inside it
  return P.dual_cone.contains(theta.transpose() * Q.dual_cone.relative_interior_point(), true);
}

// same question decided by exact LP over the image cone
inline bool is_local_hom_lp(const FsSharpMonoid &P, const FsSharpMonoid &Q, const IntMatrix &theta) {
  Cone image = Q.dual_cone.image(theta.transpose());
  if (P.dual_cone.facets().empty())
    return true;
  return cone_meets_open_halfspaces(image, P.dual_cone.facets());
}

inline Integer saturation_components(const FGAbelian &qgp) { return torsion_order(qgp); }

struct PrimedDiagram {
  FsSharpMonoid P, Q1, Q2;
  IntMatrix theta1, theta2;
  IntMatrix g_P, g_Q1, g_Q2; // groups of the primed monoids into the unprimed ones
  bool nonempty = false;     // condition (1), supplied by the caller

  static PrimedDiagram trivial(std::size_t p, std::size_t q1, std::size_t q2) {
    return {FsSharpMonoid::free(0), FsSharpMonoid::free(0), FsSharpMonoid::free(0),
            IntMatrix(0, 0), IntMatrix(0, 0), IntMatrix(p, 0), IntMatrix(q1, 0),
            IntMatrix(q2, 0), true};
  }
};

struct PointDiagram {
  FsSharpMonoid P, Q1, Q2;
  IntMatrix theta1, theta2; // (rank Q_i) x (rank P)
  std::optional<PrimedDiagram> primed;

  // theta = (theta1, -theta2)^T : P^gp -> Q1^gp ⊕ Q2^gp
  IntMatrix theta() const { return IntMatrix::vstack(theta1, -theta2); }
};

inline void check_local(const PointDiagram &d) {
  if (!is_local_hom(d.P, d.Q1, d.theta1) || !is_local_hom(d.P, d.Q2, d.theta2))
    throw DomainError("diagram maps are not local homomorphisms");
}

inline Integer fs_point_fibre_components(const PointDiagram &d) {
  check_local(d);
  return torsion_order(cokernel(d.theta()));
}

// the same count through the transposed map Q1^* ⊕ Q2^* -> P^*
inline Integer fs_point_fibre_components_dual(const PointDiagram &d) {
  check_local(d);
  return torsion_order(cokernel(d.theta().transpose()));
}

enum class Nonemptiness { GuaranteedNonempty, Unknown };

inline const char *to_string(Nonemptiness n) {
  return n == Nonemptiness::GuaranteedNonempty ? "GuaranteedNonempty" : "Unknown";
}

struct NonemptinessReport {
  Nonemptiness verdict = Nonemptiness::Unknown;
  bool condition1 = false, condition2 = false, condition3 = false;
};

// Does the fibre product cone {(a,b) in Q1^vee x Q2^vee : theta1^t a = theta2^t b}
// contain a point with both coordinates in the interiors?
inline bool fibre_cone_meets_interiors(const PointDiagram &d) {
  const std::size_t m1 = d.Q1.rank(), m2 = d.Q2.rank();
  LinearSystem sys;
  sys.num_vars = m1 + m2;
  auto pad = [&](const IntVector &f, std::size_t offset) {
    IntVector r(m1 + m2);
    for (std::size_t i = 0; i < f.size(); ++i)
      r[offset + i] = f[i];
    return r;
  };
  for (auto &f : d.Q1.dual_cone.facets())
    sys.add_ge(pad(f, 0), 1);
  for (auto &e : d.Q1.dual_cone.equations())
    sys.add_eq(pad(e, 0));
  for (auto &f : d.Q2.dual_cone.facets())
    sys.add_ge(pad(f, m1), 1);
  for (auto &e : d.Q2.dual_cone.equations())
    sys.add_eq(pad(e, m1));
  IntMatrix t1 = d.theta1.transpose(), t2 = d.theta2.transpose();
  for (std::size_t r = 0; r < d.P.rank(); ++r) {
    IntVector row(m1 + m2);
    for (std::size_t j = 0; j < m1; ++j)
      row[j] = t1(r, j);
    for (std::size_t j = 0; j < m2; ++j)
      row[m1 + j] = -t2(r, j);
    sys.add_eq(row);
  }
  return is_feasible(sys);
}

// is the map A/im(gA) -> B/im(gB) induced by f injective?
inline bool induced_quotient_map_injective(const IntMatrix &f, const IntMatrix &gA, const IntMatrix &gB) {
  // x with f x ∈ im gB, modulo im gA
  IntMatrix stacked = IntMatrix::hstack(f, -gB);
  IntMatrix K = kernel_lattice(stacked);
  for (std::size_t j = 0; j < K.cols(); ++j) {
    IntVector x(f.cols());
    for (std::size_t i = 0; i < f.cols(); ++i)
      x[i] = K(i, j);
    if (is_zero(x))
      continue;
    if (gA.cols() == 0 || !solve_integer(gA, x))
      return false;
  }
  return true;
}

inline NonemptinessReport nonempty_sufficient(const PointDiagram &d) {
  check_local(d);
  if (!d.primed)
    throw DomainError("nonempty_sufficient needs the primed diagram");
  const auto &pr = *d.primed;
  // squares must commute: theta_i ∘ g_P == g_Qi ∘ theta_i'
  if (pr.g_P.rows() != d.P.rank() || pr.g_Q1.rows() != d.Q1.rank() ||
      pr.g_Q2.rows() != d.Q2.rank())
    throw DomainError("primed inclusion maps have wrong shape");
  if (pr.theta1.rows() != pr.g_Q1.cols() || pr.theta1.cols() != pr.g_P.cols() ||
      pr.theta2.rows() != pr.g_Q2.cols() || pr.theta2.cols() != pr.g_P.cols())
    throw DomainError("primed maps have wrong shape");
  if (!(d.theta1 * pr.g_P == pr.g_Q1 * pr.theta1) || !(d.theta2 * pr.g_P == pr.g_Q2 * pr.theta2))
    throw DomainError("primed diagram does not commute");

  NonemptinessReport r;
  r.condition1 = pr.nonempty;
  r.condition2 = fibre_cone_meets_interiors(d);
  auto injective = [](const IntMatrix &g) { return rank(g) == g.cols(); };
  IntMatrix gQ = IntMatrix(d.Q1.rank() + d.Q2.rank(), pr.g_Q1.cols() + pr.g_Q2.cols());
  gQ.set_block(0, 0, pr.g_Q1);
  gQ.set_block(d.Q1.rank(), pr.g_Q1.cols(), pr.g_Q2);
  r.condition3 = injective(pr.g_P) && injective(pr.g_Q1) && injective(pr.g_Q2) &&
                 induced_quotient_map_injective(d.theta(), pr.g_P, gQ);
  if (r.condition1 && r.condition2 && r.condition3)
    r.verdict = Nonemptiness::GuaranteedNonempty;
  return r;
}

} // namespace tropglue
