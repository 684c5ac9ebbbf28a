#pragma once

#include <map>
#include <set>
#include <string>

#include "dca/connection.hpp"
#include "dca/hull.hpp"
#include "dca/linalg.hpp"
#include "dca/surface.hpp"

namespace dca {

enum class Family { black, white, both };

// First order operator from vertex functions to functions on a family of
// n-simplices: (Q psi)(T) = sum_{P in T} b_{T:P} psi(P).
template <class S>
struct TriangleOperator {
  const TriangulatedSurface* surf = nullptr;
  std::vector<int> family;             // simplex indices, row order
  std::vector<std::vector<S>> coeff;   // per row, aligned with the sorted tuple

  SparseMatrix<S> matrix() const {
    SparseMatrix<S> m(static_cast<int>(family.size()), surf->num_vertices());
    for (size_t r = 0; r < family.size(); ++r) {
      const auto& sx = surf->simplices[family[r]];
      for (size_t i = 0; i < sx.size(); ++i)
        m.add_entry(static_cast<int>(r), surf->vindex(sx[i]), coeff[r][i]);
    }
    m.finalize();
    return m;
  }
};

template <class S>
using SimplexFunction = std::map<int, S>;  // simplex index -> value

template <class S>
TriangleOperator<S> build_Q(const TriangulatedSurface& s, const Coloring& col,
                            Family fam, const Connection<S>& conn) {
  if (static_cast<int>(col.color.size()) != s.num_simplices())
    throw Error(ErrorCode::missing_coloring, "coloring does not cover the surface");
  conn.check_nonzero();
  TriangleOperator<S> op;
  op.surf = &s;
  for (int t = 0; t < s.num_simplices(); ++t) {
    bool take = fam == Family::both ||
                (fam == Family::black && col.color[t] == Color::black) ||
                (fam == Family::white && col.color[t] == Color::white);
    if (take) {
      op.family.push_back(t);
      op.coeff.push_back(conn.coeff[t]);
    }
  }
  if (op.family.empty())
    throw Error(ErrorCode::empty_input, "selected triangle family is empty");
  return op;
}

template <class S>
SimplexFunction<S> apply(const TriangleOperator<S>& op, const VertexFunction<S>& psi) {
  if (psi.surf != op.surf)
    throw Error(ErrorCode::domain_mismatch, "function lives on a different surface");
  SimplexFunction<S> out;
  for (size_t r = 0; r < op.family.size(); ++r) {
    const auto& sx = op.surf->simplices[op.family[r]];
    S acc(0);
    for (size_t i = 0; i < sx.size(); ++i)
      acc += op.coeff[r][i] * psi.values[op.surf->vindex(sx[i])];
    out[op.family[r]] = std::move(acc);
  }
  return out;
}

template <class S>
VertexFunction<S> adjoint_apply(const TriangleOperator<S>& op, const SimplexFunction<S>& phi) {
  VertexFunction<S> out(*op.surf);
  for (size_t r = 0; r < op.family.size(); ++r) {
    auto it = phi.find(op.family[r]);
    if (it == phi.end())
      throw Error(ErrorCode::domain_mismatch, "simplex function misses a family member");
    const auto& sx = op.surf->simplices[op.family[r]];
    for (size_t i = 0; i < sx.size(); ++i)
      out.values[op.surf->vindex(sx[i])] += op.coeff[r][i] * it->second;
  }
  return out;
}

// ---- exact identity and kernel machinery (Rat scalars) ----

struct IdentityClaim {
  std::string identity;
  int lhs_dim = 0;
  int rhs_dim = 0;
  bool pass = false;
  std::string max_discrepancy = "0";
};

struct LaplaceReport {
  std::vector<IdentityClaim> claims;
  int interior_vertices = 0;
  bool pass = false;
};

// Verifies Q*Q = 2 Qb*Qb = 2 Qw*Qw and Q*Q = -2*Delta + 3*m_P on rows indexed
// by interior vertices, with the canonical connection.
LaplaceReport laplace_identity_check(const TriangulatedSurface& s, const Coloring& col);

struct KernelResult {
  std::vector<VertexId> support;               // vertex ids of the domain
  std::vector<VertexFunction<Rat>> basis;      // zero off the support
  int dim = 0;
};

// Exact basis of { psi on the domain's vertices : Qb psi = 0 on the domain }.
KernelResult dholomorphic_kernel(const TriangulatedSurface& s, const Coloring& col,
                                 const std::vector<int>& domain_blacks);

struct BoundaryValueResult {
  bool consistent = false;
  int witness_simplex = -1;      // a black triangle certifying infeasibility
  VertexFunction<Rat> psi;
  int nullity = 0;               // residual freedom; 0 means unique
};

BoundaryValueResult solve_boundary_value(const TriangulatedSurface& s, const Coloring& col,
                                         const std::vector<int>& domain_blacks,
                                         const std::map<VertexId, Rat>& constraints);

// Coordinates of the covariant constant agreeing with psi on black triangle t.
std::pair<Rat, Rat> evaluate(const TriangulatedSurface& s,
                             const std::vector<VertexFunction<Rat>>& cc_basis,
                             const VertexFunction<Rat>& psi, int t);

struct LiouvilleReport {
  bool closed = false;
  bool flat = false;
  int kernel_dim = -1;
  int covariant_dim = -1;
  bool constants_in_kernel = false;
  bool pass = false;
};

LiouvilleReport liouville_check(const TriangulatedSurface& s, const Coloring& col);

struct MaxPrincipleReport {
  int interior_triangles = 0;
  int boundary_triangles = 0;
  std::vector<int> failures;         // interior triangles outside the hull
  bool domain_connected = true;
  bool simply_connected_proxy = true;  // Euler characteristic == #components
  bool pass = false;
};

// Every interior evaluation must lie in the exact convex hull of the boundary
// triangle evaluations (Definition 12 boundary detection: a triangle of D is
// boundary when it shares a vertex with a black triangle outside D).
MaxPrincipleReport maximum_principle_check(const TriangulatedSurface& s, const Coloring& col,
                                           const std::vector<int>& domain_blacks,
                                           const std::vector<VertexFunction<Rat>>& cc_basis,
                                           const VertexFunction<Rat>& psi);

}  // namespace dca
