#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dca/surface.hpp"
#include "dca/triangle_op.hpp"

namespace dca::euclid {

// Lattice vertex (m, n); shifts t1 (m+1, n) and t2 (m, n+1). The black (up)
// triangle rooted at (m, n) has vertices (m,n), (m+1,n), (m,n+1).
using Point = std::pair<int, int>;

struct PointHash {
  size_t operator()(const Point& p) const {
    return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^
                                  static_cast<unsigned>(p.second));
  }
};

// Graph distance in the triangular lattice (unit shifts t1, t2, t1 t2^{-1}).
inline int graph_dist(const Point& p) {
  long m = p.first, n = p.second;
  return static_cast<int>((std::abs(m) + std::abs(n) + std::abs(m + n)) / 2);
}

// Euclidean length in the equilateral embedding: |m w1 + n w2|, 60 deg basis.
inline double embed_dist(const Point& p) {
  double m = p.first, n = p.second;
  return std::sqrt(m * m + m * n + n * n);
}

struct Window {
  std::vector<Point> pts;                         // sorted
  std::unordered_set<Point, PointHash> set;

  bool contains(const Point& p) const { return set.count(p) != 0; }
  static Window from_points(std::vector<Point> pts);
};

Window rect_window(int m0, int n0, int m1, int n1);
Window hex_window(int radius);                    // graph_dist <= radius
Window tri_window(Point anchor, int side);        // (m-m0)+(n-n0) <= side, >= anchor

template <class S>
struct LatticeFn {
  std::unordered_map<Point, S, PointHash> v;

  bool has(const Point& p) const { return v.count(p) != 0; }
  S value_or_zero(const Point& p) const {
    auto it = v.find(p);
    return it == v.end() ? S(0) : it->second;
  }
};

// (Qb psi)(m,n) = psi(m,n) + psi(m+1,n) + psi(m,n+1), on points whose stencil
// stays inside the function's support window.
LatticeFn<Rat> qb_apply(const LatticeFn<Rat>& f);
LatticeFn<Rat> qw_apply(const LatticeFn<Rat>& f);

// Pol_k = { Qb psi = 0, (Qw)^{k+1} psi = 0 }. Basis on a square window
// [0,W]^2 with W = 2k+3 by default; the dimension is certified stable by
// recomputing on W+2.
struct PolBasis {
  int k = 0;
  int window = 0;
  int dim = 0;
  bool stable = false;
  std::vector<LatticeFn<Rat>> basis;
};

PolBasis pol_space_basis(int k, int window = -1);

// Canonical k-polynomials on the anchored triangle T_k (2k+2 points per
// edge): zero on T_k except one boundary edge carrying alternating +-1.
// Edge order (bottom, left, hypotenuse) with starting signs (+1, -1, +1),
// which makes psi_1 + psi_2 + psi_3 land in Pol_{k-1}.
struct CanonicalPolys {
  std::array<LatticeFn<Rat>, 3> psi;
  bool sum_in_lower = false;  // (Qw)^k of the sum vanishes
  int window = 0;
};

CanonicalPolys canonical_polynomials(int k, Point anchor = {0, 0});

// Unique phi in Pol_k agreeing with psi on T_k (Taylor step).
LatticeFn<Rat> taylor_step(const LatticeFn<Rat>& psi, int k, Point anchor = {0, 0});

// Integer fundamental solution of Qb supported in the cone {m<=0, n<=0}:
// G0(-a,-b) = (-1)^{a+b} C(a+b, a), computed by the forward recursion from
// the delta row. Window covers a+b <= depth.
LatticeFn<Rat> pascal_kernel(int depth);

// d-holomorphic functions on a window: exact kernel basis of Qb rows.
std::vector<LatticeFn<Rat>> dholo_basis(const Window& w);

// Bridge to the simplicial modules: vertices are packed (m,n), triangles are
// the up/down triangles with all corners in the window; up = black.
struct LatticeComplex {
  TriangulatedSurface surface;
  Coloring coloring;
  std::vector<int> black_up;  // up-triangle simplex indices in root order
};

VertexId pack_point(const Point& p);
Point unpack_point(VertexId v);
LatticeComplex window_to_surface(const Window& w);

// ---- Green function (see green.cpp) ----

struct QuadratureSpec {
  int grid = 768;          // base midpoint resolution per axis (multiple of 3)
  int refine_levels = 28;  // dyadic refinement depth near the singular points
  double grade = 4.0;      // refine cells with dist <= grade * cellsize
  double tol = 1e-6;       // Richardson target for the last-level delta
  enum class Mode { dyadic, contour } mode = Mode::dyadic;
};

struct GreenResult {
  LatticeFn<double> values;
  double err_estimate = 0.0;
};

// G(m,n) = (2pi)^{-2} int int e^{i m k1 + i n k2} / (1 + e^{ik1} + e^{ik2});
// normalization fixed by Qb G = delta. Throws QuadratureNotConverged when the
// refinement estimate stays above spec.tol.
GreenResult green_function(const std::vector<Point>& pts, const QuadratureSpec& spec);

// (Qw)^k G by differencing (trims the window by k).
LatticeFn<double> rational_analog(const LatticeFn<double>& g, int k);

struct SlopeFit {
  double slope = 0.0;
  int bins = 0;
  double dmin = 0.0, dmax = 0.0;
};

// Least squares on the log-log shell maxima (shells log-spaced in embedded
// distance).
SlopeFit decay_slope(const LatticeFn<double>& f, double dmin, double dmax);

// ---- Cauchy formula ----

enum class KernelChoice { pascal, fourier };

struct CauchyReport {
  bool strip_interior_zero = false;  // Qb psibar vanishes on interior rows
  int strip_rows = 0;
  std::string max_exact_residual = "0";  // pascal kernel: exact rational
  double max_float_residual = 0.0;       // fourier kernel
  bool pass = false;
};

// Reconstructs psi(x) = sum_y [Qb psibar](y) K(x - y) over the domain of a
// hex window, with psi d-holomorphic there. The pascal kernel must reproduce
// exactly; the fourier kernel within float_tol.
CauchyReport cauchy_reconstruct(const Window& domain, const LatticeFn<Rat>& psi,
                                KernelChoice kernel, double float_tol = 1e-5);

}  // namespace dca::euclid
