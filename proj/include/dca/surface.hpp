#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dca/errors.hpp"

namespace dca {

using VertexId = long long;

// Sorted tuple of n vertex ids identifying an (n-1)-face.
using Facet = std::vector<VertexId>;

struct FacetHash {
  size_t operator()(const Facet& f) const {
    size_t h = f.size();
    for (VertexId v : f)
      h ^= std::hash<long long>()(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

// Combinatorial pseudomanifold of dimension n: every (n-1)-face lies in at
// most two n-simplices. Simplices are stored as sorted vertex tuples with a
// separate orientation sign when a consistent orientation exists.
struct TriangulatedSurface {
  int dim = 2;
  std::vector<VertexId> vertex_ids;                    // sorted, unique
  std::vector<std::vector<VertexId>> simplices;        // sorted tuples, size dim+1
  bool orientable = false;
  std::vector<int> orientation;                        // per simplex, +1/-1 (if orientable)

  std::unordered_map<Facet, std::array<int, 2>, FacetHash> facet_cofaces;  // -1 = none
  std::unordered_map<VertexId, int> vertex_index;
  std::vector<std::vector<int>> vertex_simplices;      // per vertex index

  int n() const { return dim; }
  int num_vertices() const { return static_cast<int>(vertex_ids.size()); }
  int num_simplices() const { return static_cast<int>(simplices.size()); }

  int vindex(VertexId v) const {
    auto it = vertex_index.find(v);
    if (it == vertex_index.end())
      throw Error(ErrorCode::domain_mismatch, "unknown vertex id");
    return it->second;
  }

  // The facet of simplex s omitting local position i, as a sorted tuple.
  Facet facet_of(int s, int omit) const {
    Facet f;
    const auto& sx = simplices[s];
    for (int i = 0; i < static_cast<int>(sx.size()); ++i)
      if (i != omit) f.push_back(sx[i]);
    return f;
  }

  // Simplex adjacent to s across facet f, or -1.
  int neighbor_across(int s, const Facet& f) const {
    auto it = facet_cofaces.find(f);
    if (it == facet_cofaces.end()) return -1;
    if (it->second[0] == s) return it->second[1];
    if (it->second[1] == s) return it->second[0];
    return -1;
  }

  bool is_closed() const {
    for (const auto& [f, cf] : facet_cofaces)
      if (cf[1] < 0) return false;
    return true;
  }

  std::vector<Facet> boundary_facets() const {
    std::vector<Facet> out;
    for (const auto& [f, cf] : facet_cofaces)
      if (cf[1] < 0) out.push_back(f);
    return out;
  }

  // n = 2 helpers.
  int vertex_edge_degree(int vi) const;      // number of edges at the vertex
  bool vertex_is_interior(int vi) const;     // every incident edge has 2 cofaces
  std::vector<VertexId> vertex_neighbors(int vi) const;
};

// Builds adjacency, checks the pseudomanifold condition, detects
// orientability. Throws NonManifold / EmptyInput.
TriangulatedSurface build_surface(std::vector<std::vector<VertexId>> simplex_list);

// Sequence of n-simplices where consecutive ones share an (n-1)-face.
// Construction checks facet sharing; immediate backtracking is permitted here
// and rejected by parallel transport (DegeneratePath).
struct ThickPath {
  const TriangulatedSurface* surf = nullptr;
  std::vector<int> simplices;   // simplex indices, length k
  std::vector<Facet> shared;    // length k-1

  bool closed() const {
    return simplices.size() >= 2 && simplices.front() == simplices.back();
  }
  int length() const { return static_cast<int>(simplices.size()) - 1; }
};

ThickPath make_thick_path(const TriangulatedSurface& s, std::vector<int> simplex_indices);

// Number of n-simplices traversed mod 2. Throws NotClosed.
int phi2(const ThickPath& path);

enum class Color : uint8_t { black = 0, white = 1 };

struct Coloring {
  std::vector<Color> color;  // per simplex
};

struct NotColorableError : Error {
  std::vector<int> witness;  // closed thick path (simplex indices) with odd phi2
  NotColorableError(std::vector<int> w)
      : Error(ErrorCode::not_colorable, "no black/white coloring exists"),
        witness(std::move(w)) {}
};

// 2-colors the dual graph; facet-adjacent simplices get opposite colors.
// On failure throws NotColorableError carrying an odd closed thick path.
Coloring find_bw_coloring(const TriangulatedSurface& s);

bool coloring_valid(const TriangulatedSurface& s, const Coloring& c);

// Closed thick path around the star of a vertex (n = 2), or around an
// (n-2)-face in general. Used by curvature and tests.
ThickPath star_loop(const TriangulatedSurface& s, VertexId center);

}  // namespace dca
