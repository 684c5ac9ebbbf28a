#include "dca/hyperbolic.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "dca/linalg.hpp"

namespace dca::hyper {

namespace {

constexpr int kDegree = 8;  // m = 8 lattice

struct Builder {
  std::vector<std::array<VertexId, 3>> tris;  // oriented
  std::vector<int> tri_count;                 // per vertex
  std::vector<std::vector<VertexId>> layers;
  std::vector<std::vector<VertexId>> cycles;  // cycles[k], k >= 1
  std::vector<int> layer_of;
  int seed_size = 1;

  VertexId new_vertex(int layer) {
    VertexId v = static_cast<VertexId>(tri_count.size());
    tri_count.push_back(0);
    layer_of.push_back(layer);
    return v;
  }

  void add_tri(VertexId a, VertexId b, VertexId c) {
    tris.push_back({a, b, c});
    tri_count[a]++;
    tri_count[b]++;
    tri_count[c]++;
  }

  // One annulus: every boundary vertex is completed to degree 8 by one
  // down-triangle per boundary edge plus a fan of new triangles.
  void grow_annulus() {
    const std::vector<VertexId> cycle = cycles.back();
    int L = static_cast<int>(cycle.size());
    int new_layer = layer_of[cycle[0]] + 1;

    std::vector<VertexId> apex(L);
    for (int i = 0; i < L; ++i) apex[i] = new_vertex(new_layer);

    // down-triangle outside edge (b_i, b_{i+1}); oriented so the interior
    // stays on the left of the new boundary
    for (int i = 0; i < L; ++i) {
      VertexId bi = cycle[i], bj = cycle[(i + 1) % L];
      add_tri(apex[i], bj, bi);
    }

    std::vector<VertexId> next_cycle;
    for (int i = 0; i < L; ++i) {
      // fan around b_{i+1} between apex[i] and apex[i+1]
      VertexId b = cycle[(i + 1) % L];
      int fan = kDegree - tri_count[b];
      if (fan < 1)
        throw Error(ErrorCode::internal, "boundary vertex already saturated");
      std::vector<VertexId> ys;
      for (int j = 0; j < fan - 1; ++j) ys.push_back(new_vertex(new_layer));
      VertexId prev = apex[i];
      for (int j = 0; j < fan; ++j) {
        VertexId nxt = (j + 1 == fan) ? apex[(i + 1) % L] : ys[j];
        add_tri(b, prev, nxt);
        prev = nxt;
      }
      next_cycle.push_back(apex[i]);
      next_cycle.insert(next_cycle.end(), ys.begin(), ys.end());
    }

    std::vector<VertexId> layer_vertices(apex);
    for (VertexId v : next_cycle)
      if (std::find(apex.begin(), apex.end(), v) == apex.end()) layer_vertices.push_back(v);
    std::sort(layer_vertices.begin(), layer_vertices.end());
    layers.push_back(layer_vertices);
    cycles.push_back(std::move(next_cycle));
  }

  Ball finish(int radius) const {
    Ball b;
    b.radius = radius;
    b.seed_size = seed_size;
    std::vector<std::vector<VertexId>> tuples;
    tuples.reserve(tris.size());
    for (const auto& t : tris) tuples.push_back({t[0], t[1], t[2]});
    b.surface = build_surface(std::move(tuples));
    b.oriented = tris;
    b.layers = layers;
    b.cycles = cycles;
    b.layer_of = layer_of;
    b.coloring = find_bw_coloring(b.surface);
    if (b.coloring.color[0] != Color::black)
      for (auto& c : b.coloring.color)
        c = (c == Color::black) ? Color::white : Color::black;
    for (int t = 0; t < b.surface.num_simplices(); ++t)
      if (b.coloring.color[t] == Color::black) b.blacks.push_back(t);
    for (size_t t = 0; t < tris.size(); ++t) {
      const auto& tr = tris[t];
      for (int e = 0; e < 3; ++e) {
        VertexId u = tr[e], v = tr[(e + 1) % 3];
        b.dir_edge[(u << 32) | v] = static_cast<int>(t);
      }
    }
    return b;
  }
};

Builder seed_center() {
  Builder bd;
  VertexId c = bd.new_vertex(0);
  bd.layers.push_back({c});
  bd.cycles.push_back({});  // no layer-0 cycle
  std::vector<VertexId> ring;
  for (int i = 0; i < kDegree; ++i) ring.push_back(bd.new_vertex(1));
  for (int i = 0; i < kDegree; ++i)
    bd.add_tri(c, ring[i], ring[(i + 1) % kDegree]);
  std::vector<VertexId> sorted_ring = ring;
  std::sort(sorted_ring.begin(), sorted_ring.end());
  bd.layers.push_back(sorted_ring);
  bd.cycles.push_back(ring);
  return bd;
}

Builder seed_triangle() {
  Builder bd;
  bd.seed_size = 3;
  VertexId a = bd.new_vertex(0), b = bd.new_vertex(0), c = bd.new_vertex(0);
  bd.add_tri(a, b, c);
  bd.layers.push_back({a, b, c});
  bd.cycles.push_back({a, b, c});  // the seed boundary is the layer-0 cycle
  return bd;
}

Builder resume_from(const Ball& b) {
  Builder bd;
  bd.seed_size = b.seed_size;
  bd.tri_count.assign(b.surface.num_vertices(), 0);
  bd.layer_of = b.layer_of;
  for (const auto& t : b.oriented) {
    bd.tris.push_back(t);
    bd.tri_count[t[0]]++;
    bd.tri_count[t[1]]++;
    bd.tri_count[t[2]]++;
  }
  bd.layers = b.layers;
  bd.cycles = b.cycles;
  return bd;
}

}  // namespace

std::unordered_map<VertexId, VertexId> Ball::ccw_successor(VertexId v) const {
  std::unordered_map<VertexId, VertexId> succ;
  int vi = surface.vindex(v);
  for (int t : surface.vertex_simplices[vi]) {
    const auto& tr = oriented[t];
    for (int e = 0; e < 3; ++e)
      if (tr[e] == v) {
        succ[tr[(e + 1) % 3]] = tr[(e + 2) % 3];
        break;
      }
  }
  return succ;
}

Ball build_ball(int radius) {
  if (radius < 1) throw Error(ErrorCode::invalid_argument, "radius must be >= 1");
  Builder bd = seed_center();
  for (int k = 1; k < radius; ++k) bd.grow_annulus();
  return bd.finish(radius);
}

Ball build_triangle_domain(int radius) {
  if (radius < 0) throw Error(ErrorCode::invalid_argument, "radius must be >= 0");
  Builder bd = seed_triangle();
  if (radius == 0) {
    Ball b = bd.finish(0);
    return b;
  }
  for (int k = 0; k < radius; ++k) bd.grow_annulus();
  return bd.finish(radius);
}

Ball extend_ball(const Ball& b, int extra) {
  if (extra < 0) throw Error(ErrorCode::invalid_argument, "extra must be >= 0");
  Builder bd = resume_from(b);
  for (int k = 0; k < extra; ++k) bd.grow_annulus();
  return bd.finish(b.radius + extra);
}

std::vector<VertexId> domain_around(const Ball& ambient, const std::vector<VertexId>& seed,
                                    int r) {
  if (seed.empty()) throw Error(ErrorCode::empty_input, "empty seed");
  // connectivity of the seed in the 1-skeleton
  {
    std::set<VertexId> sset(seed.begin(), seed.end());
    std::set<VertexId> visited;
    std::queue<VertexId> q;
    q.push(seed[0]);
    visited.insert(seed[0]);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId u : ambient.surface.vertex_neighbors(ambient.surface.vindex(v)))
        if (sset.count(u) && !visited.count(u)) {
          visited.insert(u);
          q.push(u);
        }
    }
    if (visited.size() != sset.size())
      throw Error(ErrorCode::disconnected_seed, "seed set is not connected");
  }
  std::unordered_map<VertexId, int> dist;
  std::queue<VertexId> q;
  for (VertexId v : seed) {
    dist[v] = 0;
    q.push(v);
  }
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    if (dist[v] >= r) continue;
    for (VertexId u : ambient.surface.vertex_neighbors(ambient.surface.vindex(v)))
      if (!dist.count(u)) {
        dist[u] = dist[v] + 1;
        q.push(u);
      }
  }
  std::vector<VertexId> out;
  for (const auto& [v, d] : dist) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

words::Word boundary_word(const Ball& b, int layer) {
  if (layer < 1 || layer > b.radius)
    throw Error(ErrorCode::invalid_argument, "layer out of range");
  const auto& cycle = b.cycles[layer];
  words::Word w;
  w.cyclic = true;
  // walk reversed (interior on the right); the inside triangle of edge
  // {c_i, c_{i+1}} holds the directed edge (c_i -> c_{i+1})
  int L = static_cast<int>(cycle.size());
  for (int i = L - 1; i >= 0; --i) {
    int t = b.inside_triangle(cycle[i], cycle[(i + 1) % L]);
    if (t < 0) throw Error(ErrorCode::internal, "missing inside triangle on cycle");
    w.letters += (b.coloring.color[t] == Color::black) ? 'b' : 'w';
  }
  return w;
}

CountsReport equation_count(const Ball& b) {
  CountsReport rep;
  rep.radius = b.radius;
  rep.vertex_counts.push_back(static_cast<long>(b.layers[0].size()));
  for (int k = 1; k <= b.radius; ++k) {
    auto w = boundary_word(b, k);
    long bl = std::count(w.letters.begin(), w.letters.end(), 'b');
    long wl = static_cast<long>(w.letters.size()) - bl;
    rep.boundary_sizes.push_back(static_cast<long>(w.letters.size()));
    rep.black_letters.push_back(bl);
    rep.white_letters.push_back(wl);
    rep.vertex_counts.push_back(rep.vertex_counts.back() +
                                static_cast<long>(b.layers[k].size()));
    if (bl != wl) rep.balanced = false;
  }
  rep.eq = static_cast<long>(b.blacks.size());
  int r = b.radius;
  // Eq_r = B_r + N_{r-1} - 1 for center balls; the triangle seed contributes
  // one more seed equation and three seed letters, shifting the constant
  rep.eq_formula = rep.black_letters[r - 1] + rep.vertex_counts[r - 1] -
                   (b.seed_size == 1 ? 1 : 2);
  rep.dof_formula = rep.boundary_sizes[r - 1] / 2 + 1;

  // strip census: black triangles of annulus k with one inner vertex are the
  // b letters of the outer word; those with an inner edge are the w letters
  // of the inner word
  rep.strip_counts_match = true;
  for (int k = 1; k <= b.radius; ++k) {
    long fans = 0, downs = 0;
    for (int t : b.blacks) {
      const auto& tr = b.surface.simplices[t];
      int mx = 0, inner = 0;
      for (VertexId v : tr) mx = std::max(mx, b.layer_of[v]);
      if (mx != k) continue;
      for (VertexId v : tr)
        if (b.layer_of[v] < k) inner++;
      if (inner == 1) fans++;
      if (inner == 2) downs++;
    }
    long expect_fans = rep.black_letters[k - 1];
    long expect_downs = 0;
    if (k >= 2)
      expect_downs = rep.white_letters[k - 2];
    else if (b.seed_size == 3) {
      // layer-0 word of the seed triangle: the three edges of one triangle
      words::Word w0;
      const auto& cyc0 = b.cycles[0];
      for (int i = 2; i >= 0; --i) {
        int t = b.inside_triangle(cyc0[i], cyc0[(i + 1) % 3]);
        w0.letters += (b.coloring.color[t] == Color::black) ? 'b' : 'w';
      }
      expect_downs = std::count(w0.letters.begin(), w0.letters.end(), 'w');
    }
    if (fans != expect_fans || downs != expect_downs) rep.strip_counts_match = false;
  }

  rep.pass = rep.balanced && rep.strip_counts_match && rep.eq == rep.eq_formula;
  return rep;
}

RankReport dof_rank_check(const Ball& b, long size_cap) {
  RankReport rep;
  rep.radius = b.radius;
  rep.vertices = b.surface.num_vertices();
  rep.equations = static_cast<long>(b.blacks.size());
  if (rep.vertices > size_cap)
    throw Error(ErrorCode::too_large, "ball exceeds the exact-rank size cap");
  auto ker = dholomorphic_kernel(b.surface, b.coloring, b.blacks);
  rep.kernel_dim = ker.dim;
  rep.rank = static_cast<long>(ker.support.size()) - ker.dim;
  rep.equations_independent = rep.rank == rep.equations;
  rep.dof_formula = static_cast<long>(b.cycles[b.radius].size()) / 2 + 1;
  rep.pass = rep.kernel_dim == rep.dof_formula && rep.equations_independent;
  return rep;
}

namespace {

// CCW step count from u to w around v; -1 when the chain breaks first.
int ccw_steps(const std::unordered_map<VertexId, VertexId>& succ, VertexId u, VertexId w,
              int cap) {
  VertexId cur = u;
  for (int s = 1; s <= cap; ++s) {
    auto it = succ.find(cur);
    if (it == succ.end()) return -1;
    cur = it->second;
    if (cur == w) return s;
  }
  return -1;
}

}  // namespace

bool right_convex_check(const Ball& b, const std::vector<VertexId>& path, bool cyclic) {
  if (path.size() < 2) throw Error(ErrorCode::not_a_path, "path too short");
  int L = static_cast<int>(path.size());
  int from = cyclic ? 0 : 1;
  int to = cyclic ? L : L - 1;
  for (int i = from; i < to; ++i) {
    VertexId v = path[i % L];
    VertexId u = path[(i - 1 + L) % L];
    VertexId w = path[(i + 1) % L];
    auto succ = b.ccw_successor(v);
    int s = ccw_steps(succ, u, w, kDegree + 1);
    if (s < 0) continue;  // open fan at the domain boundary, not measurable
    if (s != 2 && s != 3) return false;
  }
  return true;
}

ZeroSetReport zero_set_components(const Ball& b, const VertexFunction<Rat>& psi) {
  if (psi.surf != &b.surface)
    throw Error(ErrorCode::domain_mismatch, "function lives on a different surface");
  ZeroSetReport rep;
  int nv = b.surface.num_vertices();
  std::vector<char> zero(nv, 0);
  for (int vi = 0; vi < nv; ++vi)
    if (is_zero(psi.values[vi])) {
      zero[vi] = 1;
      rep.zero_count++;
    }

  // boundary set: nonzero vertices adjacent to a zero vertex
  std::vector<char> bnd(nv, 0);
  for (int vi = 0; vi < nv; ++vi) {
    if (zero[vi]) continue;
    for (VertexId u : b.surface.vertex_neighbors(vi))
      if (zero[b.surface.vindex(u)]) bnd[vi] = 1;
  }

  std::vector<int> comp(nv, -1);
  int ncomp = 0;
  for (int vi = 0; vi < nv; ++vi) {
    if (!bnd[vi] || comp[vi] >= 0) continue;
    std::queue<int> q;
    q.push(vi);
    comp[vi] = ncomp;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (VertexId u : b.surface.vertex_neighbors(x)) {
        int ui = b.surface.vindex(u);
        if (bnd[ui] && comp[ui] < 0) {
          comp[ui] = ncomp;
          q.push(ui);
        }
      }
    }
    ncomp++;
  }

  for (int c = 0; c < ncomp; ++c) {
    ZeroComponent zc;
    std::vector<int> members;
    for (int vi = 0; vi < nv; ++vi)
      if (comp[vi] == c) members.push_back(vi);

    // induced adjacency
    std::unordered_map<int, std::vector<int>> adj;
    for (int vi : members)
      for (VertexId u : b.surface.vertex_neighbors(vi)) {
        int ui = b.surface.vindex(u);
        if (comp[ui] == c) adj[vi].push_back(ui);
      }
    int endpoints = 0, bad = 0;
    for (int vi : members) {
      size_t d = adj[vi].size();
      if (d == 1) endpoints++;
      if (d > 2) bad++;
    }
    bool path_like = members.size() == 1 || (bad == 0 && endpoints == 2) ||
                     (bad == 0 && endpoints == 0 && members.size() >= 3);
    if (!path_like) {
      zc.is_path = false;
      for (int vi : members) zc.path.push_back(b.surface.vertex_ids[vi]);
      zc.right_convex = false;
      rep.all_right_convex = false;
      rep.components.push_back(std::move(zc));
      continue;
    }
    // order into a path or cycle
    zc.cyclic = endpoints == 0 && members.size() > 1;
    int start = members[0];
    if (!zc.cyclic)
      for (int vi : members)
        if (adj[vi].size() == 1) start = vi;
    std::vector<int> order{start};
    std::set<int> used{start};
    while (order.size() < members.size()) {
      int cur = order.back();
      int nxt = -1;
      for (int u : adj[cur])
        if (!used.count(u)) {
          nxt = u;
          break;
        }
      if (nxt < 0) break;
      order.push_back(nxt);
      used.insert(nxt);
    }
    if (order.size() != members.size()) {
      zc.is_path = false;
      for (int vi : members) zc.path.push_back(b.surface.vertex_ids[vi]);
      zc.right_convex = false;
      rep.all_right_convex = false;
      rep.components.push_back(std::move(zc));
      continue;
    }
    for (int vi : order) zc.path.push_back(b.surface.vertex_ids[vi]);

    // convexity toward the zero side at interior vertices
    zc.right_convex = true;
    int L = static_cast<int>(order.size());
    int from = zc.cyclic ? 0 : 1;
    int to = zc.cyclic ? L : L - 1;
    for (int i = from; i < to; ++i) {
      VertexId v = zc.path[(i) % L];
      VertexId u = zc.path[(i - 1 + L) % L];
      VertexId w = zc.path[(i + 1) % L];
      auto succ = b.ccw_successor(v);
      if (succ.size() < kDegree) continue;  // boundary vertex: skip
      int s_uw = ccw_steps(succ, u, w, kDegree + 1);
      if (s_uw < 0) continue;
      int s_wu = kDegree - s_uw;
      // which fan holds the zero neighbors?
      auto fan_has_zero = [&](VertexId a, VertexId bb, int steps) {
        VertexId cur = a;
        for (int s = 1; s < steps; ++s) {
          cur = succ.at(cur);
          if (zero[b.surface.vindex(cur)]) return true;
        }
        return false;
      };
      bool zl = fan_has_zero(u, w, s_uw);
      bool zr = fan_has_zero(w, u, s_wu);
      zc.checked_vertices++;
      int side = -1;
      if (zl && !zr) side = s_uw;
      if (zr && !zl) side = s_wu;
      if (side < 0 || (side != 2 && side != 3)) {
        zc.right_convex = false;
        break;
      }
    }
    if (!zc.right_convex) rep.all_right_convex = false;
    rep.components.push_back(std::move(zc));
  }
  return rep;
}

// ---- special functions ----

namespace {

// Affine solution set x = x0 + B t, progressively restricted per layer.
struct AffineSolutions {
  std::vector<Rat> x0;                  // particular, over unknown indices
  std::vector<std::vector<Rat>> basis;  // columns of B (each length = unknowns)
};

// minimise ||x_L|| over the affine set, layer coordinates given by idxs;
// returns the restricted affine set
void project_min_norm(AffineSolutions& a, const std::vector<int>& idxs) {
  size_t q = a.basis.size();
  if (q == 0) return;
  // M s = rows idxs of basis; minimise ||c + M s||
  SparseMatrix<Rat> m(static_cast<int>(idxs.size()), static_cast<int>(q));
  std::vector<Rat> c(idxs.size());
  for (size_t r = 0; r < idxs.size(); ++r) {
    c[r] = a.x0[idxs[r]];
    for (size_t j = 0; j < q; ++j) {
      const Rat& v = a.basis[j][idxs[r]];
      if (!is_zero(v)) m.add_entry(static_cast<int>(r), static_cast<int>(j), v);
    }
  }
  m.finalize();
  // normal equations  (M^T M) s = -M^T c
  auto mt = m.transpose();
  auto mtm = mt.multiply(m);
  std::vector<Rat> rhs = mt.apply(c);
  for (auto& v : rhs) v = -v;
  auto sol = solve(mtm, rhs);
  if (!sol.consistent) throw Error(ErrorCode::internal, "normal equations inconsistent");
  // x0 <- x0 + B s
  for (size_t i = 0; i < a.x0.size(); ++i) {
    Rat acc(0);
    for (size_t j = 0; j < q; ++j) acc += a.basis[j][i] * sol.particular[j];
    a.x0[i] += acc;
  }
  // remaining freedom: B <- B * ker(M)
  auto kerM = nullspace(m);
  std::vector<std::vector<Rat>> nb;
  for (const auto& kv : kerM) {
    std::vector<Rat> col(a.x0.size(), Rat(0));
    for (size_t i = 0; i < a.x0.size(); ++i) {
      Rat acc(0);
      for (size_t j = 0; j < q; ++j) acc += a.basis[j][i] * kv[j];
      col[i] = std::move(acc);
    }
    nb.push_back(std::move(col));
  }
  a.basis = std::move(nb);
}

// force as many layer coordinates to zero as remain feasible (greedy, in
// index order)
void project_sparse(AffineSolutions& a, const std::vector<int>& idxs) {
  for (int idx : idxs) {
    size_t q = a.basis.size();
    // coordinate already forced?
    bool movable = false;
    for (size_t j = 0; j < q; ++j)
      if (!is_zero(a.basis[j][idx])) movable = true;
    if (!movable) continue;
    // want row . s = -x0[idx]; one elimination step: use a basis column with
    // nonzero coefficient to absorb the constraint
    size_t pick = 0;
    for (size_t j = 0; j < q; ++j)
      if (!is_zero(a.basis[j][idx])) {
        pick = j;
        break;
      }
    Rat piv = a.basis[pick][idx];
    Rat alpha = -a.x0[idx] / piv;
    for (size_t i = 0; i < a.x0.size(); ++i) a.x0[i] += a.basis[pick][i] * alpha;
    std::vector<std::vector<Rat>> nb;
    for (size_t j = 0; j < q; ++j) {
      if (j == pick) continue;
      Rat f = a.basis[j][idx] / piv;
      std::vector<Rat> col(a.x0.size());
      for (size_t i = 0; i < a.x0.size(); ++i)
        col[i] = a.basis[j][i] - f * a.basis[pick][i];
      nb.push_back(std::move(col));
    }
    a.basis = std::move(nb);
  }
}

SpecialFunction extend_dholomorphic(const Ball& b, const std::map<VertexId, Rat>& fixed,
                                    const std::vector<VertexId>& anchor_set,
                                    ExtensionPolicy policy, SpecialKind kind) {
  // unknowns: vertices not fixed; layered by BFS distance from the anchor set
  std::unordered_map<VertexId, int> dist;
  {
    std::queue<VertexId> q;
    for (VertexId v : anchor_set) {
      dist[v] = 0;
      q.push(v);
    }
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId u : b.surface.vertex_neighbors(b.surface.vindex(v)))
        if (!dist.count(u)) {
          dist[u] = dist[v] + 1;
          q.push(u);
        }
    }
  }

  std::vector<VertexId> unknowns;
  for (VertexId v : b.surface.vertex_ids)
    if (!fixed.count(v)) unknowns.push_back(v);
  std::sort(unknowns.begin(), unknowns.end(), [&](VertexId a, VertexId c) {
    int da = dist.count(a) ? dist.at(a) : 1 << 20;
    int dc = dist.count(c) ? dist.at(c) : 1 << 20;
    return da != dc ? da < dc : a < c;
  });
  std::unordered_map<VertexId, int> uidx;
  for (size_t i = 0; i < unknowns.size(); ++i) uidx[unknowns[i]] = static_cast<int>(i);

  SparseMatrix<Rat> m(static_cast<int>(b.blacks.size()), static_cast<int>(unknowns.size()));
  std::vector<Rat> rhs(b.blacks.size(), Rat(0));
  for (size_t r = 0; r < b.blacks.size(); ++r) {
    for (VertexId v : b.surface.simplices[b.blacks[r]]) {
      auto it = fixed.find(v);
      if (it != fixed.end())
        rhs[r] -= it->second;
      else
        m.add_entry(static_cast<int>(r), uidx[v], Rat(1));
    }
  }
  m.finalize();
  auto sol = solve(m, rhs);
  if (!sol.consistent)
    throw Error(ErrorCode::infeasible_anchor,
                "anchor pattern inconsistent with the d-holomorphy equations");

  AffineSolutions aff;
  aff.x0 = sol.particular;
  {
    // nullspace needs the same column order
    aff.basis = nullspace(m);
  }

  // group unknown indices per layer
  std::map<int, std::vector<int>> per_layer;
  for (size_t i = 0; i < unknowns.size(); ++i) {
    int d = dist.count(unknowns[i]) ? dist.at(unknowns[i]) : (1 << 20);
    per_layer[d].push_back(static_cast<int>(i));
  }
  for (const auto& [d, idxs] : per_layer) {
    if (aff.basis.empty()) break;
    if (policy == ExtensionPolicy::least_norm)
      project_min_norm(aff, idxs);
    else
      project_sparse(aff, idxs);
  }

  SpecialFunction sf;
  sf.kind = kind;
  sf.values = VertexFunction<Rat>(b.surface);
  for (const auto& [v, x] : fixed) sf.values.at(v) = x;
  for (size_t i = 0; i < unknowns.size(); ++i) sf.values.at(unknowns[i]) = aff.x0[i];

  std::map<int, double> prof;
  for (VertexId v : b.surface.vertex_ids) {
    int d = dist.count(v) ? dist.at(v) : -1;
    if (d < 0) continue;
    double a = std::abs(sf.values.at(v).get_d());
    prof[d] = std::max(prof[d], a);
  }
  for (const auto& [d, m2] : prof) sf.layer_profile.push_back(m2);
  return sf;
}

}  // namespace

SpecialFunction construct_special_psi(const Ball& b, VertexId x, VertexId l,
                                      ExtensionPolicy policy) {
  // the right triangle of (x -> l) holds the directed edge (l -> x)
  int t0 = b.inside_triangle(l, x);
  if (t0 < 0 || b.coloring.color[t0] != Color::black)
    throw Error(ErrorCode::infeasible_anchor,
                "anchor edge has no black triangle on its right");

  // forward: w = third ccw successor of the incoming neighbour
  std::deque<VertexId> path{x, l};
  while (true) {
    VertexId v = path.back(), u = path[path.size() - 2];
    auto succ = b.ccw_successor(v);
    if (succ.size() < kDegree) break;  // boundary: stop
    VertexId w = u;
    bool ok = true;
    for (int s = 0; s < 3; ++s) {
      auto it = succ.find(w);
      if (it == succ.end()) {
        ok = false;
        break;
      }
      w = it->second;
    }
    if (!ok) break;
    path.push_back(w);
  }
  // backward: predecessor via the inverse successor map
  while (true) {
    VertexId v = path.front(), u = path[1];
    auto succ = b.ccw_successor(v);
    if (succ.size() < kDegree) break;
    std::unordered_map<VertexId, VertexId> pred;
    for (const auto& [a, c] : succ) pred[c] = a;
    VertexId w = u;
    bool ok = true;
    for (int s = 0; s < 3; ++s) {
      auto it = pred.find(w);
      if (it == pred.end()) {
        ok = false;
        break;
      }
      w = it->second;
    }
    if (!ok) break;
    path.push_front(w);
  }

  // Zero region: the side of the path carrying the black right triangles.
  // The outer cycle is blocked during the flood (the path ends on it, and
  // vertex fans would otherwise leak around the endpoints); the outer-arc
  // part of the right side is then collected by closure.
  std::set<VertexId> on_path(path.begin(), path.end());
  std::set<VertexId> outer(b.cycles[b.radius].begin(), b.cycles[b.radius].end());
  std::set<VertexId> zero_side;
  std::queue<VertexId> q;
  auto seed = [&](VertexId v) {
    if (!on_path.count(v) && !outer.count(v) && !zero_side.count(v)) {
      zero_side.insert(v);
      q.push(v);
    }
  };
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    int t = b.inside_triangle(path[i + 1], path[i]);  // right of path[i]->path[i+1]
    if (t < 0) continue;
    for (VertexId v : b.surface.simplices[t]) seed(v);
  }
  // right-side fans at the endpoints: one or two ccw steps from the incoming
  // neighbour (three steps would continue the path itself)
  auto seed_endpoint = [&](VertexId v, VertexId u) {
    auto succ = b.ccw_successor(v);
    VertexId cur = u;
    for (int s = 1; s <= 2; ++s) {
      auto it = succ.find(cur);
      if (it == succ.end()) break;
      cur = it->second;
      seed(cur);
    }
  };
  seed_endpoint(path.back(), path[path.size() - 2]);
  {
    // at the front the walk enters via path[1] -> path[0] reversed: the right
    // side of the forward walk sits clockwise from path[1], i.e. ccw from the
    // incoming neighbour in the reversed traversal is the wrong side; use the
    // predecessor chain instead
    auto succ = b.ccw_successor(path.front());
    std::unordered_map<VertexId, VertexId> pred;
    for (const auto& [a, c] : succ) pred[c] = a;
    VertexId cur = path[1];
    for (int s = 1; s <= 2; ++s) {
      auto it = pred.find(cur);
      if (it == pred.end()) break;
      cur = it->second;
      seed(cur);
    }
  }
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (VertexId u : b.surface.vertex_neighbors(b.surface.vindex(v)))
      if (!on_path.count(u) && !outer.count(u) && !zero_side.count(u)) {
        zero_side.insert(u);
        q.push(u);
      }
  }
  // closure over the outer cycle: boundary vertices adjacent to the interior
  // right region (never crossing path vertices) are also strictly right
  {
    bool grew = true;
    while (grew) {
      grew = false;
      for (VertexId v : outer) {
        if (on_path.count(v) || zero_side.count(v)) continue;
        for (VertexId u : b.surface.vertex_neighbors(b.surface.vindex(v)))
          if (zero_side.count(u)) {
            zero_side.insert(v);
            grew = true;
            break;
          }
      }
    }
  }

  std::map<VertexId, Rat> fixed;
  int sign = 1;
  for (VertexId v : path) {
    fixed[v] = Rat(sign);
    sign = -sign;
  }
  for (VertexId v : zero_side) fixed[v] = Rat(0);

  std::vector<VertexId> anchor(path.begin(), path.end());
  anchor.insert(anchor.end(), zero_side.begin(), zero_side.end());
  SpecialFunction sf = extend_dholomorphic(b, fixed, anchor, policy, SpecialKind::psi_xl);
  sf.path.assign(path.begin(), path.end());
  return sf;
}

SpecialFunction construct_special_z(const Ball& b, int r, int boundary_index,
                                    ExtensionPolicy policy) {
  if (r < 1 || r > b.radius)
    throw Error(ErrorCode::invalid_argument, "inner radius out of range");
  const auto& cycle = b.cycles[r];
  int L = static_cast<int>(cycle.size());

  auto inside_count = [&](VertexId v) {
    int c = 0;
    for (int t : b.surface.vertex_simplices[b.surface.vindex(v)]) {
      int mx = 0;
      for (VertexId u : b.surface.simplices[t]) mx = std::max(mx, b.layer_of[u]);
      if (mx <= r) c++;
    }
    return c;
  };

  int found = -1;
  for (int s = 0; s < L; ++s) {
    int i = (boundary_index + s) % L;
    VertexId u = cycle[i], v = cycle[(i + 1) % L];
    int t = b.inside_triangle(u, v);
    if (t < 0 || b.coloring.color[t] != Color::black) continue;
    if (inside_count(u) == 2 && inside_count(v) == 2) {
      found = i;
      break;
    }
  }
  if (found < 0)
    throw Error(ErrorCode::infeasible_anchor, "no admissible boundary pair found");
  VertexId u = cycle[found], v = cycle[(found + 1) % L];

  std::map<VertexId, Rat> fixed;
  std::vector<VertexId> anchor;
  for (VertexId w : b.surface.vertex_ids)
    if (b.layer_of[w] <= r) {
      fixed[w] = Rat(0);
      anchor.push_back(w);
    }
  fixed[u] = Rat(1);
  fixed[v] = Rat(-1);

  SpecialFunction sf = extend_dholomorphic(b, fixed, anchor, policy, SpecialKind::z_pr);
  sf.path = {u, v};
  return sf;
}

HalfDataResult reconstruct_from_halfdata(const Ball& b,
                                         const std::vector<std::pair<VertexId, Rat>>& data) {
  auto ker = dholomorphic_kernel(b.surface, b.coloring, b.blacks);
  HalfDataResult out;

  SparseMatrix<Rat> m(static_cast<int>(data.size()), ker.dim);
  std::vector<Rat> rhs(data.size());
  for (size_t r = 0; r < data.size(); ++r) {
    rhs[r] = data[r].second;
    for (int j = 0; j < ker.dim; ++j) {
      const Rat& val = ker.basis[j].at(data[r].first);
      if (!is_zero(val)) m.add_entry(static_cast<int>(r), j, val);
    }
  }
  m.finalize();

  auto ns = nullspace(m);
  if (!ns.empty()) {
    out.independent = false;
    out.certificate = VertexFunction<Rat>(b.surface);
    for (int j = 0; j < ker.dim; ++j)
      for (int vi = 0; vi < b.surface.num_vertices(); ++vi)
        out.certificate.values[vi] += ns[0][j] * ker.basis[j].values[vi];
    throw Error(ErrorCode::dependent_data,
                "data set does not determine the function (certificate available)");
  }
  out.independent = true;
  auto sol = solve(m, rhs);
  if (!sol.consistent)
    throw Error(ErrorCode::inconsistent, "data not realizable by a d-holomorphic function");
  out.psi = VertexFunction<Rat>(b.surface);
  for (int j = 0; j < ker.dim; ++j)
    for (int vi = 0; vi < b.surface.num_vertices(); ++vi)
      out.psi.values[vi] += sol.particular[j] * ker.basis[j].values[vi];
  return out;
}

std::vector<VertexId> independent_boundary_set(const Ball& b) {
  auto ker = dholomorphic_kernel(b.surface, b.coloring, b.blacks);
  const auto& boundary = b.cycles[b.radius];
  // rows = kernel index, cols = boundary position; pivot columns select points
  SparseMatrix<Rat> m(ker.dim, static_cast<int>(boundary.size()));
  for (int j = 0; j < ker.dim; ++j)
    for (size_t i = 0; i < boundary.size(); ++i) {
      const Rat& val = ker.basis[j].at(boundary[i]);
      if (!is_zero(val)) m.add_entry(j, static_cast<int>(i), val);
    }
  m.finalize();
  auto elim = eliminate(m);
  if (elim.rank != ker.dim)
    throw Error(ErrorCode::dependent_data,
                "boundary values do not determine d-holomorphic functions here");
  std::vector<VertexId> out;
  for (int c : elim.pivot_cols) out.push_back(boundary[c]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dca::hyper
