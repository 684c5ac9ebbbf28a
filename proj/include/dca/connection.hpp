#pragma once

#include <algorithm>
#include <map>
#include <queue>

#include "dca/rational.hpp"
#include "dca/surface.hpp"

namespace dca {

// Vertex function with values aligned to the surface's vertex index order.
template <class S>
struct VertexFunction {
  const TriangulatedSurface* surf = nullptr;
  std::vector<S> values;

  VertexFunction() = default;
  explicit VertexFunction(const TriangulatedSurface& s)
      : surf(&s), values(s.num_vertices(), S(0)) {}

  S& at(VertexId v) { return values[surf->vindex(v)]; }
  const S& at(VertexId v) const { return values[surf->vindex(v)]; }
};

// Discrete GL_n connection: one nonzero coefficient per (simplex, vertex).
// Only the in-simplex ratios are semantically meaningful; raw values are kept
// because the gauge action is simplest on them.
template <class S>
struct Connection {
  const TriangulatedSurface* surf = nullptr;
  std::vector<std::vector<S>> coeff;  // per simplex, aligned with the sorted tuple

  static Connection canonical(const TriangulatedSurface& s) {
    Connection c;
    c.surf = &s;
    c.coeff.assign(s.num_simplices(), std::vector<S>(s.dim + 1, S(1)));
    return c;
  }

  const S& b(int simplex, int local) const { return coeff[simplex][local]; }

  S ratio(int simplex, VertexId p, VertexId pp) const {
    const auto& sx = surf->simplices[simplex];
    auto pos = [&](VertexId v) {
      auto it = std::lower_bound(sx.begin(), sx.end(), v);
      if (it == sx.end() || *it != v)
        throw Error(ErrorCode::domain_mismatch, "vertex not in simplex");
      return static_cast<int>(it - sx.begin());
    };
    return coeff[simplex][pos(p)] / coeff[simplex][pos(pp)];
  }

  void check_nonzero() const {
    for (const auto& row : coeff)
      for (const auto& v : row)
        if (is_zero(v))
          throw Error(ErrorCode::invalid_argument, "connection coefficient is zero");
  }
};

// b'_{T:P} = b_{T:P} * f(P). Throws ZeroGaugeValue if f vanishes anywhere.
template <class S>
Connection<S> gauge_conjugate(const Connection<S>& conn, const VertexFunction<S>& f) {
  for (const auto& v : f.values)
    if (is_zero(v))
      throw Error(ErrorCode::zero_gauge_value, "gauge function vanishes at a vertex");
  Connection<S> out = conn;
  const auto& s = *conn.surf;
  for (int t = 0; t < s.num_simplices(); ++t)
    for (int i = 0; i <= s.dim; ++i)
      out.coeff[t][i] = conn.coeff[t][i] * f.values[s.vindex(s.simplices[t][i])];
  return out;
}

namespace detail {

// Values known on all vertices of `face` inside simplex t; the remaining
// vertex is forced by sum b_{T:P} psi(P) = 0.
template <class S>
void solve_simplex(const Connection<S>& conn, int t,
                   std::map<VertexId, S>& vals) {
  const auto& sx = conn.surf->simplices[t];
  int missing = -1;
  for (int i = 0; i < static_cast<int>(sx.size()); ++i)
    if (!vals.count(sx[i])) {
      if (missing >= 0) throw Error(ErrorCode::internal, "more than one unknown in simplex");
      missing = i;
    }
  if (missing < 0) return;  // everything known already
  S acc(0);
  for (int i = 0; i < static_cast<int>(sx.size()); ++i)
    if (i != missing) acc += conn.coeff[t][i] * vals.at(sx[i]);
  vals[sx[missing]] = -acc / conn.coeff[t][missing];
}

}  // namespace detail

// Transports the n values on `in_face` (a facet of the first simplex) through
// the path; returns the values on the final shared face (the path's out-face).
// For a single-simplex path this is the identity on in_face.
template <class S>
std::vector<S> parallel_transport(const Connection<S>& conn, const ThickPath& path,
                                  const Facet& in_face, const std::vector<S>& in_values) {
  conn.check_nonzero();
  const auto& s = *conn.surf;
  if (in_face.size() != static_cast<size_t>(s.dim) ||
      in_values.size() != in_face.size())
    throw Error(ErrorCode::domain_mismatch, "in-face values must cover n vertices");
  {
    const auto& first = s.simplices[path.simplices[0]];
    for (VertexId v : in_face)
      if (!std::binary_search(first.begin(), first.end(), v))
        throw Error(ErrorCode::domain_mismatch, "in-face is not a facet of the first simplex");
  }
  for (size_t j = 0; j + 1 < path.shared.size(); ++j)
    if (path.shared[j] == path.shared[j + 1])
      throw Error(ErrorCode::degenerate_path, "repeated shared face in thick path");

  std::map<VertexId, S> vals;
  for (size_t i = 0; i < in_face.size(); ++i) vals[in_face[i]] = in_values[i];

  if (path.simplices.size() == 1) return in_values;

  Facet current = in_face;
  for (size_t j = 0; j + 1 < path.simplices.size(); ++j) {
    int t = path.simplices[j];
    // values on `current` determine all of t, then restrict to the shared face
    std::map<VertexId, S> local;
    for (VertexId v : current) local[v] = vals.at(v);
    detail::solve_simplex(conn, t, local);
    const Facet& nxt = path.shared[j];
    vals.clear();
    for (VertexId v : nxt) vals[v] = local.at(v);
    current = nxt;
  }
  std::vector<S> out;
  for (VertexId v : current) out.push_back(vals.at(v));
  return out;
}

template <class S>
struct Holonomy {
  Facet base_face;                     // sorted; matrix acts on values in this order
  std::vector<std::vector<S>> matrix;  // n x n
  std::vector<int> permutation;        // S_{n+1} label on the base simplex, or empty

  bool is_identity() const {
    int n = static_cast<int>(matrix.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!((i == j && matrix[i][j] == S(1)) || (i != j && is_zero(matrix[i][j]))))
          return false;
    return true;
  }
};

// Holonomy of a closed thick path, based at the final shared face (a facet of
// the first simplex). For a flat canonical connection the values transported
// around the loop are a permutation of the initial ones; the permutation is
// extracted when it exists.
template <class S>
Holonomy<S> holonomy(const Connection<S>& conn, const ThickPath& path) {
  if (!path.closed())
    throw Error(ErrorCode::not_closed, "holonomy requires a closed thick path");
  const auto& s = *conn.surf;
  Holonomy<S> h;
  h.base_face = path.shared.back();

  int n = s.dim;
  h.matrix.assign(n, std::vector<S>(n, S(0)));
  for (int j = 0; j < n; ++j) {
    std::vector<S> e(n, S(0));
    e[j] = S(1);
    std::vector<S> out = parallel_transport(conn, path, h.base_face, e);
    for (int i = 0; i < n; ++i) h.matrix[i][j] = out[i];
  }

  // Permutation label: transport distinct values; the vertex of the base
  // simplex off the base face is resolved by that simplex's equation, before
  // and after the loop. Only meaningful (and only produced) when the final
  // tuple is a permutation of the initial one.
  int t0 = path.simplices[0];
  const auto& sx = s.simplices[t0];
  std::map<VertexId, S> init;
  for (int i = 0; i < n; ++i) init[h.base_face[i]] = S(i + 1);
  detail::solve_simplex(conn, t0, init);
  bool distinct = true;
  for (VertexId a : sx)
    for (VertexId b : sx)
      if (a < b && init.at(a) == init.at(b)) distinct = false;
  if (distinct) {
    std::vector<S> in;
    for (VertexId v : h.base_face) in.push_back(init.at(v));
    std::vector<S> out = parallel_transport(conn, path, h.base_face, in);
    std::map<VertexId, S> fin;
    for (size_t i = 0; i < h.base_face.size(); ++i) fin[h.base_face[i]] = out[i];
    detail::solve_simplex(conn, t0, fin);
    std::vector<int> perm(sx.size());
    bool ok = true;
    for (size_t p = 0; p < sx.size() && ok; ++p) {
      int src = -1;
      for (size_t q = 0; q < sx.size(); ++q)
        if (fin.at(sx[p]) == init.at(sx[q])) {
          src = static_cast<int>(q);
          break;
        }
      if (src < 0) ok = false;
      else perm[p] = src;
    }
    if (ok) h.permutation = std::move(perm);
  }
  return h;
}

// Holonomies around every (n-2)-face of St(P) containing P. For n = 2 this is
// the single loop around the vertex. Flat at P iff all are the identity.
template <class S>
std::vector<Holonomy<S>> vertex_curvature(const Connection<S>& conn, VertexId p) {
  const auto& s = *conn.surf;
  if (s.dim == 2) {
    ThickPath loop = star_loop(s, p);
    return {holonomy(conn, loop)};
  }
  throw Error(ErrorCode::invalid_argument,
              "vertex curvature loops implemented for n = 2");
}

struct NotFlatError : Error {
  std::vector<int> witness;  // closed thick path with nontrivial holonomy
  NotFlatError(std::vector<int> w)
      : Error(ErrorCode::not_flat, "connection is not flat"), witness(std::move(w)) {}
};

// Propagates a symbolic basis from a base facet across the dual graph; checks
// every simplex equation. Returns exactly n covariant constants or throws
// NotFlat with a witness loop.
template <class S>
std::vector<VertexFunction<S>> covariant_constant_basis(const TriangulatedSurface& s,
                                                        const Connection<S>& conn) {
  conn.check_nonzero();
  int n = s.dim;
  int nv = s.num_vertices();

  // vertex -> linear form over the n initial values (dense length-n rows)
  std::vector<std::vector<S>> form(nv);
  std::vector<int> parent(s.num_simplices(), -1);
  std::vector<char> seen(s.num_simplices(), 0);

  auto witness_loop = [&](int a, int b) {
    std::vector<int> pa, pb;
    for (int x = a; x >= 0; x = parent[x]) pa.push_back(x);
    for (int x = b; x >= 0; x = parent[x]) pb.push_back(x);
    while (pa.size() >= 2 && pb.size() >= 2 && pa[pa.size() - 1] == pb[pb.size() - 1] &&
           pa[pa.size() - 2] == pb[pb.size() - 2]) {
      pa.pop_back();
      pb.pop_back();
    }
    std::vector<int> loop(pa.rbegin(), pa.rend());
    loop.insert(loop.end(), pb.begin(), pb.end());
    loop.push_back(loop.front());
    return loop;
  };

  const auto& sx0 = s.simplices[0];
  for (int i = 0; i < n; ++i) {
    std::vector<S> e(n, S(0));
    e[i] = S(1);
    form[s.vindex(sx0[i])] = std::move(e);
  }

  auto solve_form = [&](int t) {
    const auto& sx = s.simplices[t];
    int missing = -1;
    for (int i = 0; i <= n; ++i)
      if (form[s.vindex(sx[i])].empty()) {
        if (missing >= 0) return;  // cannot resolve yet
        missing = i;
      }
    if (missing < 0) return;
    std::vector<S> acc(n, S(0));
    for (int i = 0; i <= n; ++i) {
      if (i == missing) continue;
      const auto& f = form[s.vindex(sx[i])];
      for (int j = 0; j < n; ++j) acc[j] += conn.coeff[t][i] * f[j];
    }
    for (int j = 0; j < n; ++j) acc[j] = -acc[j] / conn.coeff[t][missing];
    form[s.vindex(sx[missing])] = std::move(acc);
  };

  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  solve_form(0);
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int i = 0; i <= n; ++i) {
      int u = s.neighbor_across(t, s.facet_of(t, i));
      if (u < 0 || seen[u]) continue;
      seen[u] = 1;
      parent[u] = t;
      solve_form(u);
      q.push(u);
    }
  }
  for (int t = 0; t < s.num_simplices(); ++t)
    if (!seen[t])
      throw Error(ErrorCode::invalid_argument, "dual graph is disconnected");

  // check every simplex equation; on failure hunt a non-tree dual edge whose
  // loop has nontrivial holonomy and report it as witness
  bool flat = true;
  for (int t = 0; t < s.num_simplices() && flat; ++t) {
    const auto& sx = s.simplices[t];
    for (int j = 0; j < n && flat; ++j) {
      S acc(0);
      for (int i = 0; i <= n; ++i) {
        const auto& f = form[s.vindex(sx[i])];
        if (f.empty()) throw Error(ErrorCode::internal, "unassigned vertex form");
        acc += conn.coeff[t][i] * f[j];
      }
      if (!is_zero(acc)) flat = false;
    }
  }
  if (!flat) {
    for (int t = 0; t < s.num_simplices(); ++t) {
      for (int i = 0; i <= n; ++i) {
        int u = s.neighbor_across(t, s.facet_of(t, i));
        if (u < 0 || parent[u] == t || parent[t] == u || u < t) continue;
        std::vector<int> loop = witness_loop(t, u);
        try {
          Holonomy<S> h = holonomy(conn, make_thick_path(s, loop));
          if (!h.is_identity()) throw NotFlatError(std::move(loop));
        } catch (const Error& e) {
          if (e.code == ErrorCode::not_flat) throw;
          // degenerate candidate loop; keep searching
        }
      }
    }
    throw NotFlatError({});
  }

  std::vector<VertexFunction<S>> basis;
  for (int j = 0; j < n; ++j) {
    VertexFunction<S> f(s);
    for (int v = 0; v < nv; ++v) f.values[v] = form[v][j];
    basis.push_back(std::move(f));
  }
  return basis;
}

}  // namespace dca
