#pragma once

#include <unordered_map>

#include "dca/surface.hpp"
#include "dca/triangle_op.hpp"
#include "dca/words.hpp"

namespace dca::hyper {

// Layered realization of a ball in the {3,8} lattice. Triangles keep their
// construction orientation (counterclockwise, interior of the disk on the
// left of boundary cycles walked forward).
struct Ball {
  int radius = 0;
  int seed_size = 1;  // 1 = standard ball, 3 = triangle seed
  TriangulatedSurface surface;
  Coloring coloring;
  std::vector<std::array<VertexId, 3>> oriented;     // per simplex
  std::vector<std::vector<VertexId>> layers;         // [0..radius]
  std::vector<std::vector<VertexId>> cycles;         // [k], k = 1..radius; [0] empty
  std::vector<int> layer_of;                         // per vertex id
  std::vector<int> blacks;                           // black simplex indices

  std::unordered_map<long long, int> dir_edge;       // (u<<32|v) -> simplex

  long long nvertices() const { return surface.num_vertices(); }
  int inside_triangle(VertexId u, VertexId v) const {  // left of u->v
    auto it = dir_edge.find((u << 32) | v);
    return it == dir_edge.end() ? -1 : it->second;
  }
  // counterclockwise successor map of neighbors around v
  std::unordered_map<VertexId, VertexId> ccw_successor(VertexId v) const;
};

// Standard ball D_r around a single vertex; every interior vertex gets
// degree 8, colors validated by the generic 2-coloring.
Ball build_ball(int radius);

// D_{T,r}: seed is one triangle.
Ball build_triangle_domain(int radius);

// Composition law support: grow an existing domain by extra layers.
Ball extend_ball(const Ball& b, int extra);

// Vertex set { x : d(x, K) <= r } inside an ambient ball, via BFS.
// Throws DisconnectedSeed when K is not connected in the 1-skeleton.
std::vector<VertexId> domain_around(const Ball& ambient, const std::vector<VertexId>& seed,
                                    int r);

// Boundary word of layer k: walk the cycle with the interior on the right;
// the letter is the color of the inside triangle of each edge.
words::Word boundary_word(const Ball& b, int layer);

struct CountsReport {
  int radius = 0;
  std::vector<long> boundary_sizes;  // |dD_k|, k = 1..r
  std::vector<long> black_letters;   // B_k
  std::vector<long> white_letters;   // W_k
  std::vector<long> vertex_counts;   // N_k, k = 0..r
  long eq = 0;                       // number of Qb equations in D_r
  long eq_formula = 0;               // B_r + N_{r-1} - 1
  long dof_formula = 0;              // |dD_r|/2 + 1
  bool balanced = true;              // B_k == W_k for all k
  bool strip_counts_match = true;    // strip triangle census matches letters
  bool pass = false;
};

CountsReport equation_count(const Ball& b);

struct RankReport {
  int radius = 0;
  long equations = 0;
  long vertices = 0;
  long kernel_dim = 0;
  long dof_formula = 0;
  long rank = 0;
  bool equations_independent = false;
  bool pass = false;
};

// Exact nullspace of Qb on the ball; checks kernel dim == |dD_r|/2 + 1 and
// that the equations are independent. size_cap guards the exact elimination.
RankReport dof_rank_check(const Ball& b, long size_cap = 5000);

// Right-side triangle count at each interior vertex of the path must be 2 or
// 3. The path is walked as given; "right" is measured with the stored disk
// orientation (so a cycle with the interior on the right is the reversed
// stored cycle).
bool right_convex_check(const Ball& b, const std::vector<VertexId>& path, bool cyclic);

struct ZeroComponent {
  std::vector<VertexId> path;  // ordered path or cycle
  bool is_path = true;
  bool cyclic = false;
  bool right_convex = false;   // measured toward the zero side
  int checked_vertices = 0;    // interior vertices actually tested
};

struct ZeroSetReport {
  long zero_count = 0;
  std::vector<ZeroComponent> components;
  bool all_right_convex = true;
};

// Connected components of the nearest-neighbour boundary of the zero set,
// each tested for right convexity with zeros inside.
ZeroSetReport zero_set_components(const Ball& b, const VertexFunction<Rat>& psi);

enum class SpecialKind { psi_xl, z_pr };
enum class ExtensionPolicy { least_norm, sparse };

struct SpecialFunction {
  SpecialKind kind;
  VertexFunction<Rat> values;
  std::vector<VertexId> path;        // psi_xl: the gamma path; z_pr: the pair P
  std::vector<double> layer_profile; // max |value| per extension layer
};

// psi_xl: anchor is a directed edge (x, l) with a black triangle on its
// right; the maximal all-b path through x is forced, values alternate +-1 on
// it, zero strictly to its right, extended to the rest by the policy.
SpecialFunction construct_special_psi(const Ball& b, VertexId x, VertexId l,
                                      ExtensionPolicy policy);

// z_pr: zero on D_{r-1} and on dD_r except a pair P of adjacent boundary
// vertices carried by a black triangle of the outer strip.
SpecialFunction construct_special_z(const Ball& b, int r, int boundary_index,
                                    ExtensionPolicy policy);

struct HalfDataResult {
  bool independent = false;
  VertexFunction<Rat> certificate;  // kernel element vanishing on the data set
  VertexFunction<Rat> psi;
};

// Reconstructs the unique d-holomorphic function from values on a certified
// independent boundary set.
HalfDataResult reconstruct_from_halfdata(const Ball& b,
                                         const std::vector<std::pair<VertexId, Rat>>& data);

// Greedy pivot selection of |dD_r|/2 + 1 boundary vertices that determine
// every d-holomorphic function on the ball.
std::vector<VertexId> independent_boundary_set(const Ball& b);

}  // namespace dca::hyper
