#include "dca/surface.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace dca {

namespace {

// Position of v in the sorted tuple of simplex s.
int local_position(const std::vector<VertexId>& simplex, VertexId v) {
  auto it = std::lower_bound(simplex.begin(), simplex.end(), v);
  if (it == simplex.end() || *it != v) return -1;
  return static_cast<int>(it - simplex.begin());
}

}  // namespace

TriangulatedSurface build_surface(std::vector<std::vector<VertexId>> simplex_list) {
  if (simplex_list.empty())
    throw Error(ErrorCode::empty_input, "no simplices given");

  TriangulatedSurface s;
  size_t arity = simplex_list[0].size();
  if (arity < 2)
    throw Error(ErrorCode::invalid_argument, "simplices need at least 2 vertices");
  s.dim = static_cast<int>(arity) - 1;

  std::set<VertexId> vset;
  for (auto& sx : simplex_list) {
    if (sx.size() != arity)
      throw Error(ErrorCode::invalid_argument, "simplices have mixed arity");
    std::sort(sx.begin(), sx.end());
    if (std::adjacent_find(sx.begin(), sx.end()) != sx.end())
      throw Error(ErrorCode::invalid_argument, "simplex with repeated vertex");
    for (VertexId v : sx) vset.insert(v);
  }
  s.simplices = std::move(simplex_list);
  s.vertex_ids.assign(vset.begin(), vset.end());
  for (size_t i = 0; i < s.vertex_ids.size(); ++i)
    s.vertex_index[s.vertex_ids[i]] = static_cast<int>(i);

  s.vertex_simplices.assign(s.vertex_ids.size(), {});
  for (int t = 0; t < s.num_simplices(); ++t)
    for (VertexId v : s.simplices[t])
      s.vertex_simplices[s.vertex_index[v]].push_back(t);

  for (int t = 0; t < s.num_simplices(); ++t) {
    for (int i = 0; i <= s.dim; ++i) {
      Facet f = s.facet_of(t, i);
      auto [it, inserted] = s.facet_cofaces.try_emplace(f, std::array<int, 2>{t, -1});
      if (!inserted) {
        if (it->second[1] >= 0)
          throw Error(ErrorCode::non_manifold,
                      "a face belongs to more than two simplices");
        if (it->second[0] == t)
          throw Error(ErrorCode::invalid_argument, "duplicate simplex");
        it->second[1] = t;
      }
    }
  }

  // Orientation: propagate signs over the dual graph. Two cofaces of a facet
  // are consistent when the induced facet orientations are opposite, i.e.
  // sign_u * (-1)^{pos_u} = -sign_v * (-1)^{pos_v}.
  s.orientation.assign(s.num_simplices(), 0);
  s.orientable = true;
  for (int start = 0; start < s.num_simplices(); ++start) {
    if (s.orientation[start] != 0) continue;
    s.orientation[start] = 1;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      for (int i = 0; i <= s.dim; ++i) {
        Facet f = s.facet_of(t, i);
        int u = s.neighbor_across(t, f);
        if (u < 0) continue;
        VertexId missing_u = 0;
        for (VertexId v : s.simplices[u])
          if (!std::binary_search(f.begin(), f.end(), v)) missing_u = v;
        int j = local_position(s.simplices[u], missing_u);
        int want = -s.orientation[t] * ((i % 2 == 0) ? 1 : -1) * ((j % 2 == 0) ? 1 : -1);
        if (s.orientation[u] == 0) {
          s.orientation[u] = want;
          q.push(u);
        } else if (s.orientation[u] != want) {
          s.orientable = false;
        }
      }
    }
  }
  if (!s.orientable) s.orientation.clear();

  return s;
}

int TriangulatedSurface::vertex_edge_degree(int vi) const {
  if (dim != 2)
    throw Error(ErrorCode::invalid_argument, "edge degree defined for n = 2");
  std::set<VertexId> nbr;
  for (int t : vertex_simplices[vi])
    for (VertexId v : simplices[t])
      if (v != vertex_ids[vi]) nbr.insert(v);
  return static_cast<int>(nbr.size());
}

bool TriangulatedSurface::vertex_is_interior(int vi) const {
  if (dim != 2)
    throw Error(ErrorCode::invalid_argument, "interior test defined for n = 2");
  VertexId p = vertex_ids[vi];
  for (int t : vertex_simplices[vi]) {
    for (VertexId v : simplices[t]) {
      if (v == p) continue;
      Facet e{std::min(p, v), std::max(p, v)};
      auto it = facet_cofaces.find(e);
      if (it == facet_cofaces.end() || it->second[1] < 0) return false;
    }
  }
  return true;
}

std::vector<VertexId> TriangulatedSurface::vertex_neighbors(int vi) const {
  std::set<VertexId> nbr;
  for (int t : vertex_simplices[vi])
    for (VertexId v : simplices[t])
      if (v != vertex_ids[vi]) nbr.insert(v);
  return {nbr.begin(), nbr.end()};
}

ThickPath make_thick_path(const TriangulatedSurface& s, std::vector<int> simplex_indices) {
  if (simplex_indices.empty())
    throw Error(ErrorCode::not_a_path, "empty thick path");
  ThickPath p;
  p.surf = &s;
  p.simplices = std::move(simplex_indices);
  for (size_t i = 0; i + 1 < p.simplices.size(); ++i) {
    const auto& a = s.simplices[p.simplices[i]];
    const auto& b = s.simplices[p.simplices[i + 1]];
    Facet inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(inter));
    if (static_cast<int>(inter.size()) != s.dim)
      throw Error(ErrorCode::not_a_path,
                  "consecutive simplices do not share an (n-1)-face");
    p.shared.push_back(std::move(inter));
  }
  return p;
}

int phi2(const ThickPath& path) {
  if (!path.closed())
    throw Error(ErrorCode::not_closed, "phi2 requires a closed thick path");
  return path.length() % 2;
}

Coloring find_bw_coloring(const TriangulatedSurface& s) {
  Coloring c;
  c.color.assign(s.num_simplices(), Color::black);
  std::vector<int> state(s.num_simplices(), -1);  // -1 unseen, else 0/1
  std::vector<int> parent(s.num_simplices(), -1);

  for (int start = 0; start < s.num_simplices(); ++start) {
    if (state[start] >= 0) continue;
    state[start] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      for (int i = 0; i <= s.dim; ++i) {
        int u = s.neighbor_across(t, s.facet_of(t, i));
        if (u < 0) continue;
        if (state[u] < 0) {
          state[u] = 1 - state[t];
          parent[u] = t;
          q.push(u);
        } else if (state[u] == state[t]) {
          // odd dual cycle: tree path t..root, u..root, trimmed at the fork
          std::vector<int> pt, pu;
          for (int x = t; x >= 0; x = parent[x]) pt.push_back(x);
          for (int x = u; x >= 0; x = parent[x]) pu.push_back(x);
          while (pt.size() >= 2 && pu.size() >= 2 &&
                 pt[pt.size() - 1] == pu[pu.size() - 1] &&
                 pt[pt.size() - 2] == pu[pu.size() - 2]) {
            pt.pop_back();
            pu.pop_back();
          }
          std::vector<int> loop(pt.rbegin(), pt.rend());
          loop.insert(loop.end(), pu.begin(), pu.end());
          loop.push_back(loop.front());
          throw NotColorableError(std::move(loop));
        }
      }
    }
  }
  for (int t = 0; t < s.num_simplices(); ++t)
    c.color[t] = state[t] == 0 ? Color::black : Color::white;
  return c;
}

bool coloring_valid(const TriangulatedSurface& s, const Coloring& c) {
  if (static_cast<int>(c.color.size()) != s.num_simplices()) return false;
  for (const auto& [f, cf] : s.facet_cofaces)
    if (cf[1] >= 0 && c.color[cf[0]] == c.color[cf[1]]) return false;
  return true;
}

ThickPath star_loop(const TriangulatedSurface& s, VertexId center) {
  if (s.dim != 2)
    throw Error(ErrorCode::invalid_argument, "star_loop implemented for n = 2");
  int vi = s.vindex(center);
  const auto& star = s.vertex_simplices[vi];
  if (star.empty())
    throw Error(ErrorCode::boundary_vertex, "vertex has empty star");

  // Walk triangles around the vertex; each triangle of a closed star has
  // exactly two edges containing it, entry and exit.
  std::vector<int> loop;
  int t0 = star[0];
  int cur = t0;
  Facet entry;  // edge used to enter cur
  loop.push_back(cur);
  while (true) {
    int next = -1;
    Facet exit_edge;
    for (VertexId v : s.simplices[cur]) {
      if (v == center) continue;
      Facet e{std::min(center, v), std::max(center, v)};
      if (e == entry) continue;
      int u = s.neighbor_across(cur, e);
      if (u >= 0) {
        next = u;
        exit_edge = e;
        break;
      }
    }
    if (next < 0) throw Error(ErrorCode::boundary_vertex, "open star (boundary vertex)");
    entry = exit_edge;
    cur = next;
    loop.push_back(cur);
    if (cur == t0) break;
    if (loop.size() > 2 * star.size() + 2)
      throw Error(ErrorCode::internal, "star walk did not close");
  }
  return make_thick_path(s, loop);
}

}  // namespace dca
