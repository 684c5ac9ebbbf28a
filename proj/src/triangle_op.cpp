#include "dca/triangle_op.hpp"

#include <algorithm>
#include <functional>

namespace dca {

namespace {

// Restrict matrix rows to the given indices (cols untouched).
SparseMatrix<Rat> restrict_rows(const SparseMatrix<Rat>& m, const std::vector<int>& rows) {
  SparseMatrix<Rat> out(static_cast<int>(rows.size()), m.ncols);
  for (size_t i = 0; i < rows.size(); ++i) out.rows[i] = m.rows[rows[i]];
  return out;
}

Rat max_abs_entry(const SparseMatrix<Rat>& m) {
  Rat best(0);
  for (const auto& row : m.rows)
    for (const auto& [c, v] : row) best = std::max(best, rat_abs(v));
  return best;
}

}  // namespace

LaplaceReport laplace_identity_check(const TriangulatedSurface& s, const Coloring& col) {
  auto conn = Connection<Rat>::canonical(s);
  auto q = build_Q(s, col, Family::both, conn).matrix();
  auto qb = build_Q(s, col, Family::black, conn).matrix();
  auto qw = build_Q(s, col, Family::white, conn).matrix();

  auto l = q.transpose().multiply(q);
  auto lb = qb.transpose().multiply(qb).scaled(Rat(2));
  auto lw = qw.transpose().multiply(qw).scaled(Rat(2));

  std::vector<int> interior;
  for (int vi = 0; vi < s.num_vertices(); ++vi)
    if (s.vertex_is_interior(vi)) interior.push_back(vi);

  // -2*Delta + 3*m_P with Delta the graph Laplacian: row P has diagonal
  // m_P and off-diagonal +2 at each neighbor.
  SparseMatrix<Rat> rhs(s.num_vertices(), s.num_vertices());
  for (int vi : interior) {
    auto nbr = s.vertex_neighbors(vi);
    rhs.add_entry(vi, vi, Rat(static_cast<long>(nbr.size())));
    for (VertexId u : nbr) rhs.add_entry(vi, s.vindex(u), Rat(2));
  }
  rhs.finalize();

  LaplaceReport rep;
  rep.interior_vertices = static_cast<int>(interior.size());
  auto check = [&](const std::string& name, const SparseMatrix<Rat>& a,
                   const SparseMatrix<Rat>& b) {
    auto diff = restrict_rows(a, interior).subtract(restrict_rows(b, interior));
    IdentityClaim c;
    c.identity = name;
    c.lhs_dim = static_cast<int>(interior.size());
    c.rhs_dim = a.ncols;
    Rat d = max_abs_entry(diff);
    c.max_discrepancy = rat_to_string(d);
    c.pass = is_zero(d);
    rep.claims.push_back(std::move(c));
  };
  check("Q*Q == 2 Qb*Qb", l, lb);
  check("Q*Q == 2 Qw*Qw", l, lw);
  check("Q*Q == -2*Delta + 3*m_P", l, rhs);

  rep.pass = true;
  for (const auto& c : rep.claims) rep.pass = rep.pass && c.pass;
  return rep;
}

KernelResult dholomorphic_kernel(const TriangulatedSurface& s, const Coloring& col,
                                 const std::vector<int>& domain_blacks) {
  if (domain_blacks.empty())
    throw Error(ErrorCode::empty_input, "empty domain");
  for (int t : domain_blacks)
    if (col.color[t] != Color::black)
      throw Error(ErrorCode::invalid_argument, "domain contains a white triangle");

  std::set<VertexId> sup;
  for (int t : domain_blacks)
    for (VertexId v : s.simplices[t]) sup.insert(v);
  std::vector<VertexId> support(sup.begin(), sup.end());
  std::map<VertexId, int> colidx;
  for (size_t i = 0; i < support.size(); ++i) colidx[support[i]] = static_cast<int>(i);

  SparseMatrix<Rat> m(static_cast<int>(domain_blacks.size()),
                      static_cast<int>(support.size()));
  for (size_t r = 0; r < domain_blacks.size(); ++r)
    for (VertexId v : s.simplices[domain_blacks[r]])
      m.add_entry(static_cast<int>(r), colidx[v], Rat(1));
  m.finalize();

  KernelResult res;
  res.support = support;
  for (auto& vec : nullspace(m)) {
    VertexFunction<Rat> f(s);
    for (size_t i = 0; i < support.size(); ++i) f.at(support[i]) = std::move(vec[i]);
    res.basis.push_back(std::move(f));
  }
  res.dim = static_cast<int>(res.basis.size());
  return res;
}

BoundaryValueResult solve_boundary_value(const TriangulatedSurface& s, const Coloring& col,
                                         const std::vector<int>& domain_blacks,
                                         const std::map<VertexId, Rat>& constraints) {
  std::set<VertexId> sup;
  for (int t : domain_blacks)
    for (VertexId v : s.simplices[t]) sup.insert(v);

  std::vector<VertexId> unknowns;
  for (VertexId v : sup)
    if (!constraints.count(v)) unknowns.push_back(v);
  std::map<VertexId, int> colidx;
  for (size_t i = 0; i < unknowns.size(); ++i) colidx[unknowns[i]] = static_cast<int>(i);

  SparseMatrix<Rat> m(static_cast<int>(domain_blacks.size()),
                      static_cast<int>(unknowns.size()));
  std::vector<Rat> b(domain_blacks.size(), Rat(0));
  for (size_t r = 0; r < domain_blacks.size(); ++r) {
    for (VertexId v : s.simplices[domain_blacks[r]]) {
      auto it = constraints.find(v);
      if (it != constraints.end())
        b[r] -= it->second;
      else
        m.add_entry(static_cast<int>(r), colidx[v], Rat(1));
    }
  }
  m.finalize();

  auto sol = solve(m, b);
  BoundaryValueResult out;
  out.consistent = sol.consistent;
  out.nullity = sol.nullity;
  if (!sol.consistent) {
    out.witness_simplex = domain_blacks[sol.witness_row];
    return out;
  }
  out.psi = VertexFunction<Rat>(s);
  for (const auto& [v, x] : constraints)
    if (sup.count(v)) out.psi.at(v) = x;
  for (size_t i = 0; i < unknowns.size(); ++i) out.psi.at(unknowns[i]) = sol.particular[i];
  return out;
}

std::pair<Rat, Rat> evaluate(const TriangulatedSurface& s,
                             const std::vector<VertexFunction<Rat>>& cc_basis,
                             const VertexFunction<Rat>& psi, int t) {
  if (cc_basis.size() != 2)
    throw Error(ErrorCode::invalid_argument, "need a 2-element covariant basis");
  const auto& sx = s.simplices[t];
  // solve c1*e1 + c2*e2 = psi on the three vertices (2 unknowns, consistent)
  SparseMatrix<Rat> m(3, 2);
  std::vector<Rat> b(3);
  for (int i = 0; i < 3; ++i) {
    m.add_entry(i, 0, cc_basis[0].at(sx[i]));
    m.add_entry(i, 1, cc_basis[1].at(sx[i]));
    b[i] = psi.at(sx[i]);
  }
  m.finalize();
  auto sol = solve(m, b);
  if (!sol.consistent || sol.nullity != 0)
    throw Error(ErrorCode::internal,
                "evaluation system degenerate: psi is not in the covariant span on the triangle");
  return {sol.particular[0], sol.particular[1]};
}

LiouvilleReport liouville_check(const TriangulatedSurface& s, const Coloring& col) {
  LiouvilleReport rep;
  rep.closed = s.is_closed();
  if (!rep.closed) throw Error(ErrorCode::not_closed, "surface has boundary");

  auto conn = Connection<Rat>::canonical(s);
  std::vector<VertexFunction<Rat>> cc;
  try {
    cc = covariant_constant_basis(s, conn);
    rep.flat = true;
  } catch (const NotFlatError&) {
    rep.flat = false;
    throw;
  }
  rep.covariant_dim = static_cast<int>(cc.size());

  std::vector<int> blacks;
  for (int t = 0; t < s.num_simplices(); ++t)
    if (col.color[t] == Color::black) blacks.push_back(t);
  auto ker = dholomorphic_kernel(s, col, blacks);
  rep.kernel_dim = ker.dim;

  // membership: each covariant constant annihilates every black triangle
  auto conn_op = build_Q(s, col, Family::black, conn);
  rep.constants_in_kernel = true;
  for (const auto& f : cc) {
    for (auto& [t, val] : apply(conn_op, f))
      if (!is_zero(val)) rep.constants_in_kernel = false;
  }
  rep.pass = rep.flat && rep.constants_in_kernel && rep.kernel_dim == rep.covariant_dim &&
             rep.kernel_dim == s.dim;
  return rep;
}

MaxPrincipleReport maximum_principle_check(const TriangulatedSurface& s, const Coloring& col,
                                           const std::vector<int>& domain_blacks,
                                           const std::vector<VertexFunction<Rat>>& cc_basis,
                                           const VertexFunction<Rat>& psi) {
  MaxPrincipleReport rep;
  std::set<int> dom(domain_blacks.begin(), domain_blacks.end());

  // vertices touching black triangles outside the domain
  std::set<VertexId> outside_touch;
  for (int t = 0; t < s.num_simplices(); ++t) {
    if (col.color[t] != Color::black || dom.count(t)) continue;
    for (VertexId v : s.simplices[t]) outside_touch.insert(v);
  }

  std::vector<int> boundary, interior;
  for (int t : domain_blacks) {
    bool is_boundary = false;
    for (VertexId v : s.simplices[t])
      if (outside_touch.count(v)) is_boundary = true;
    (is_boundary ? boundary : interior).push_back(t);
  }
  rep.boundary_triangles = static_cast<int>(boundary.size());
  rep.interior_triangles = static_cast<int>(interior.size());

  std::vector<Point2> hull_pts;
  for (int t : boundary) {
    auto [c1, c2] = evaluate(s, cc_basis, psi, t);
    hull_pts.push_back({c1, c2});
  }
  std::vector<Point2> hull = convex_hull(hull_pts);
  auto inside = [&](const Point2& p) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return p == hull[0];
    if (hull.size() == 2) {
      if (orientation2(hull[0], hull[1], p) != 0) return false;
      Rat lo1 = std::min(hull[0].first, hull[1].first);
      Rat hi1 = std::max(hull[0].first, hull[1].first);
      Rat lo2 = std::min(hull[0].second, hull[1].second);
      Rat hi2 = std::max(hull[0].second, hull[1].second);
      return p.first >= lo1 && p.first <= hi1 && p.second >= lo2 && p.second <= hi2;
    }
    for (size_t i = 0; i < hull.size(); ++i)
      if (orientation2(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
    return true;
  };
  for (int t : interior) {
    auto [c1, c2] = evaluate(s, cc_basis, psi, t);
    if (!inside({c1, c2})) rep.failures.push_back(t);
  }

  // connectivity / Euler characteristic of the union subcomplex
  {
    std::map<VertexId, int> comp;
    std::set<std::pair<VertexId, VertexId>> edges;
    int ncomp = 0;
    std::map<VertexId, VertexId> uf;
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::set<VertexId> verts;
    for (int t : domain_blacks)
      for (VertexId v : s.simplices[t]) {
        if (!uf.count(v)) uf[v] = v;
        verts.insert(v);
      }
    for (int t : domain_blacks) {
      const auto& sx = s.simplices[t];
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          edges.insert({sx[i], sx[j]});
          VertexId a = find(sx[i]), bb = find(sx[j]);
          if (a != bb) uf[a] = bb;
        }
    }
    std::set<VertexId> roots;
    for (VertexId v : verts) roots.insert(find(v));
    ncomp = static_cast<int>(roots.size());
    long chi = static_cast<long>(verts.size()) - static_cast<long>(edges.size()) +
               static_cast<long>(domain_blacks.size());
    rep.domain_connected = ncomp <= 1;
    rep.simply_connected_proxy = chi == ncomp;
  }

  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace dca
