#pragma once

#include <string>
#include <vector>

#include "dca/euclid.hpp"
#include "dca/hyperbolic.hpp"
#include "dca/surface.hpp"
#include "dca/triangle_op.hpp"

namespace dca::io {

// Surface schema:
// {"dimension": 2, "vertices": [...], "simplices": [[...]...],
//  "colors": ["b"|"w"...]?, "orientation": [+1|-1...]?}
std::string surface_to_json(const TriangulatedSurface& s, const Coloring* col = nullptr);

struct ParsedSurface {
  TriangulatedSurface surface;
  bool has_coloring = false;
  Coloring coloring;
};

ParsedSurface surface_from_json(const std::string& text);

// Ball schema extends the surface schema with "layers" and "boundary_cycles".
std::string ball_to_json(const hyper::Ball& b);

// LatticeFunction CSV: header "m,n,value"; exact values as p/q, floats as
// decimals.
std::string lattice_csv(const euclid::LatticeFn<Rat>& f);
std::string lattice_csv(const euclid::LatticeFn<double>& f);
euclid::LatticeFn<Rat> lattice_from_csv(const std::string& text);

// Sparse operator triplets: "row,col,value".
std::string triplets_csv(const SparseMatrix<Rat>& m);

}  // namespace dca::io

namespace dca {

// Machine-readable claim report. Serialization is key-sorted and timing-free
// so identical runs emit identical bytes; wall-clock timing goes to stderr.
struct Claim {
  std::string id;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct Report {
  std::string command;
  std::vector<Claim> claims;

  bool pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }
  void add(const std::string& id, const std::string& expected, const std::string& computed) {
    claims.push_back({id, expected, computed, expected == computed});
  }
  void add_bool(const std::string& id, bool ok) {
    claims.push_back({id, "true", ok ? "true" : "false", ok});
  }
  std::string to_json() const;
};

}  // namespace dca
