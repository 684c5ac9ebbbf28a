#include "dca/euclid.hpp"

#include <algorithm>
#include <cmath>

#include "dca/linalg.hpp"

namespace dca::euclid {

Window Window::from_points(std::vector<Point> pts) {
  Window w;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  w.pts = std::move(pts);
  for (const auto& p : w.pts) w.set.insert(p);
  return w;
}

Window rect_window(int m0, int n0, int m1, int n1) {
  std::vector<Point> pts;
  for (int m = m0; m <= m1; ++m)
    for (int n = n0; n <= n1; ++n) pts.push_back({m, n});
  return Window::from_points(std::move(pts));
}

Window hex_window(int radius) {
  std::vector<Point> pts;
  for (int m = -radius; m <= radius; ++m)
    for (int n = -radius; n <= radius; ++n)
      if (graph_dist({m, n}) <= radius) pts.push_back({m, n});
  return Window::from_points(std::move(pts));
}

Window tri_window(Point anchor, int side) {
  std::vector<Point> pts;
  for (int i = 0; i <= side; ++i)
    for (int j = 0; j <= side - i; ++j)
      pts.push_back({anchor.first + i, anchor.second + j});
  return Window::from_points(std::move(pts));
}

LatticeFn<Rat> qb_apply(const LatticeFn<Rat>& f) {
  LatticeFn<Rat> out;
  for (const auto& [p, v] : f.v) {
    Point p1{p.first + 1, p.second}, p2{p.first, p.second + 1};
    if (f.has(p1) && f.has(p2)) out.v[p] = v + f.v.at(p1) + f.v.at(p2);
  }
  return out;
}

LatticeFn<Rat> qw_apply(const LatticeFn<Rat>& f) {
  LatticeFn<Rat> out;
  for (const auto& [p, v] : f.v) {
    Point p1{p.first - 1, p.second}, p2{p.first, p.second - 1};
    if (f.has(p1) && f.has(p2)) out.v[p] = v + f.v.at(p1) + f.v.at(p2);
  }
  return out;
}

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Basis of { Qb psi = 0, (Qw)^{k+1} psi = 0 } restricted to the window.
std::vector<LatticeFn<Rat>> pol_basis_on(int k, const Window& w) {
  std::unordered_map<Point, int, PointHash> idx;
  for (size_t i = 0; i < w.pts.size(); ++i) idx[w.pts[i]] = static_cast<int>(i);

  std::vector<std::vector<std::pair<int, Rat>>> rows;
  for (const auto& p : w.pts) {
    Point p1{p.first + 1, p.second}, p2{p.first, p.second + 1};
    if (w.contains(p1) && w.contains(p2))
      rows.push_back({{idx[p], Rat(1)}, {idx[p1], Rat(1)}, {idx[p2], Rat(1)}});
  }
  int K = k + 1;
  for (const auto& p : w.pts) {
    std::vector<std::pair<int, Rat>> row;
    bool ok = true;
    for (int a = 0; a <= K && ok; ++a)
      for (int b = 0; b <= K - a; ++b) {
        Point q{p.first - a, p.second - b};
        if (!w.contains(q)) {
          ok = false;
          break;
        }
        row.push_back({idx[q], Rat(binom(K, a) * binom(K - a, b))});
      }
    if (ok) rows.push_back(std::move(row));
  }

  SparseMatrix<Rat> m(static_cast<int>(rows.size()), static_cast<int>(w.pts.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (auto& [c, v] : rows[r]) m.add_entry(static_cast<int>(r), c, v);
  m.finalize();

  std::vector<LatticeFn<Rat>> basis;
  for (auto& vec : nullspace(m)) {
    LatticeFn<Rat> f;
    for (size_t i = 0; i < w.pts.size(); ++i)
      if (!is_zero(vec[i])) f.v[w.pts[i]] = std::move(vec[i]);
    // keep explicit zeros too: the support is the whole window
    for (const auto& p : w.pts)
      if (!f.v.count(p)) f.v[p] = Rat(0);
    basis.push_back(std::move(f));
  }
  return basis;
}

// (Qw)^j f on all applicable points of f's support; true if identically zero.
bool qw_power_vanishes(const LatticeFn<Rat>& f, int j) {
  LatticeFn<Rat> cur = f;
  for (int i = 0; i < j; ++i) cur = qw_apply(cur);
  for (const auto& [p, v] : cur.v)
    if (!is_zero(v)) return false;
  return true;
}

std::vector<Point> tk_points(int k, Point anchor) {
  std::vector<Point> pts;
  int side = 2 * k + 1;
  for (int i = 0; i <= side; ++i)
    for (int j = 0; j <= side - i; ++j)
      pts.push_back({anchor.first + i, anchor.second + j});
  return pts;
}

}  // namespace

PolBasis pol_space_basis(int k, int window) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "k must be >= 0");
  int W = window > 0 ? window : 2 * k + 3;
  if (W < 2 * k + 2)
    throw Error(ErrorCode::window_too_small, "window cannot pin Pol_k");
  PolBasis pb;
  pb.k = k;
  pb.window = W;
  auto basis = pol_basis_on(k, rect_window(0, 0, W, W));
  auto check = pol_basis_on(k, rect_window(0, 0, W + 2, W + 2));
  pb.stable = basis.size() == check.size();
  if (!pb.stable)
    throw Error(ErrorCode::window_too_small, "Pol_k dimension not stable under window growth");
  pb.dim = static_cast<int>(basis.size());
  pb.basis = std::move(basis);
  return pb;
}

CanonicalPolys canonical_polynomials(int k, Point anchor) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "canonical polynomials need k >= 1");
  int side = 2 * k + 1;
  int m0 = anchor.first, n0 = anchor.second;
  Window w = rect_window(m0 - 2, n0 - 2, m0 + side + 4, n0 + side + 4);
  auto basis = pol_basis_on(k, w);

  auto tk = tk_points(k, anchor);
  std::unordered_map<Point, int, PointHash> tk_idx;
  for (size_t i = 0; i < tk.size(); ++i) tk_idx[tk[i]] = static_cast<int>(i);

  // edges with their traversal order and starting signs
  std::array<std::vector<Point>, 3> edges;
  for (int i = 0; i <= side; ++i) {
    edges[0].push_back({m0 + i, n0});         // bottom, +1 first
    edges[1].push_back({m0, n0 + i});         // left, -1 first
    edges[2].push_back({m0 + side - i, n0 + i});  // hypotenuse, +1 first
  }
  std::array<int, 3> start_sign{1, -1, 1};

  CanonicalPolys out;
  out.window = w.pts.empty() ? 0 : 1;
  for (int e = 0; e < 3; ++e) {
    std::vector<Rat> target(tk.size(), Rat(0));
    for (size_t i = 0; i < edges[e].size(); ++i)
      target[tk_idx.at(edges[e][i])] = Rat(start_sign[e] * ((i % 2 == 0) ? 1 : -1));

    SparseMatrix<Rat> m(static_cast<int>(tk.size()), static_cast<int>(basis.size()));
    for (size_t r = 0; r < tk.size(); ++r)
      for (size_t j = 0; j < basis.size(); ++j) {
        const Rat& val = basis[j].v.at(tk[r]);
        if (!is_zero(val)) m.add_entry(static_cast<int>(r), static_cast<int>(j), val);
      }
    m.finalize();
    auto sol = solve(m, target);
    if (!sol.consistent)
      throw Error(ErrorCode::inconsistent,
                  "NoSuchPolynomial: edge data is not realizable in Pol_k");
    LatticeFn<Rat> f;
    for (const auto& p : w.pts) {
      Rat acc(0);
      for (size_t j = 0; j < basis.size(); ++j)
        acc += sol.particular[j] * basis[j].v.at(p);
      f.v[p] = std::move(acc);
    }
    out.psi[e] = std::move(f);
  }

  LatticeFn<Rat> sum;
  for (const auto& p : w.pts)
    sum.v[p] = out.psi[0].v.at(p) + out.psi[1].v.at(p) + out.psi[2].v.at(p);
  out.sum_in_lower = qw_power_vanishes(sum, k);
  return out;
}

LatticeFn<Rat> taylor_step(const LatticeFn<Rat>& psi, int k, Point anchor) {
  // psi must be d-holomorphic on its support and cover T_k
  for (const auto& [p, v] : psi.v) {
    Point p1{p.first + 1, p.second}, p2{p.first, p.second + 1};
    if (psi.has(p1) && psi.has(p2))
      if (!is_zero(v + psi.v.at(p1) + psi.v.at(p2)))
        throw Error(ErrorCode::domain_mismatch, "input is not d-holomorphic on its window");
  }
  auto tk = tk_points(k, anchor);
  for (const auto& p : tk)
    if (!psi.has(p))
      throw Error(ErrorCode::window_too_small, "psi does not cover T_k");

  int side = 2 * k + 1;
  int m0 = anchor.first, n0 = anchor.second;
  Window w = rect_window(m0 - 2, n0 - 2, m0 + side + 4, n0 + side + 4);
  auto basis = pol_basis_on(k, w);

  SparseMatrix<Rat> m(static_cast<int>(tk.size()), static_cast<int>(basis.size()));
  std::vector<Rat> b(tk.size());
  for (size_t r = 0; r < tk.size(); ++r) {
    for (size_t j = 0; j < basis.size(); ++j) {
      const Rat& val = basis[j].v.at(tk[r]);
      if (!is_zero(val)) m.add_entry(static_cast<int>(r), static_cast<int>(j), val);
    }
    b[r] = psi.v.at(tk[r]);
  }
  m.finalize();
  auto sol = solve(m, b);
  if (!sol.consistent || sol.nullity != 0)
    throw Error(ErrorCode::internal, "RankDeficient: T_k interpolation system degenerate");

  LatticeFn<Rat> phi;
  for (const auto& p : w.pts) {
    Rat acc(0);
    for (size_t j = 0; j < basis.size(); ++j)
      acc += sol.particular[j] * basis[j].v.at(p);
    phi.v[p] = std::move(acc);
  }
  return phi;
}

LatticeFn<Rat> pascal_kernel(int depth) {
  if (depth < 0) throw Error(ErrorCode::invalid_argument, "depth must be >= 0");
  LatticeFn<Rat> g;
  g.v[{0, 0}] = Rat(1);
  for (int d = 1; d <= depth; ++d) {
    for (int a = 0; a <= d; ++a) {
      int b = d - a;
      Point p{-a, -b};
      // Qb row at p: g(p) + g(p + e1) + g(p + e2) = 0
      Rat acc(0);
      acc += g.value_or_zero({p.first + 1, p.second});
      acc += g.value_or_zero({p.first, p.second + 1});
      g.v[p] = -acc;
    }
  }
  return g;
}

std::vector<LatticeFn<Rat>> dholo_basis(const Window& w) {
  std::unordered_map<Point, int, PointHash> idx;
  for (size_t i = 0; i < w.pts.size(); ++i) idx[w.pts[i]] = static_cast<int>(i);
  SparseMatrix<Rat> m(0, static_cast<int>(w.pts.size()));
  std::vector<std::vector<std::pair<int, Rat>>> rows;
  for (const auto& p : w.pts) {
    Point p1{p.first + 1, p.second}, p2{p.first, p.second + 1};
    if (w.contains(p1) && w.contains(p2))
      rows.push_back({{idx[p], Rat(1)}, {idx[p1], Rat(1)}, {idx[p2], Rat(1)}});
  }
  m.nrows = static_cast<int>(rows.size());
  m.rows = std::move(rows);
  m.finalize();
  std::vector<LatticeFn<Rat>> basis;
  for (auto& vec : nullspace(m)) {
    LatticeFn<Rat> f;
    for (size_t i = 0; i < w.pts.size(); ++i) f.v[w.pts[i]] = std::move(vec[i]);
    basis.push_back(std::move(f));
  }
  return basis;
}

VertexId pack_point(const Point& p) {
  return (static_cast<long long>(static_cast<unsigned int>(p.first)) << 32) |
         static_cast<unsigned int>(p.second);
}

Point unpack_point(VertexId v) {
  int m = static_cast<int>(static_cast<unsigned int>(v >> 32));
  int n = static_cast<int>(static_cast<unsigned int>(v & 0xffffffffu));
  return {m, n};
}

LatticeComplex window_to_surface(const Window& w) {
  std::vector<std::vector<VertexId>> tris;
  std::vector<Color> colors;
  std::vector<int> ups;
  for (const auto& p : w.pts) {
    Point p1{p.first + 1, p.second}, p2{p.first, p.second + 1};
    Point p3{p.first + 1, p.second + 1};
    if (w.contains(p1) && w.contains(p2)) {
      tris.push_back({pack_point(p), pack_point(p1), pack_point(p2)});
      colors.push_back(Color::black);
    }
    if (w.contains(p1) && w.contains(p2) && w.contains(p3)) {
      tris.push_back({pack_point(p1), pack_point(p2), pack_point(p3)});
      colors.push_back(Color::white);
    }
  }
  LatticeComplex lc;
  lc.surface = build_surface(std::move(tris));
  lc.coloring.color.resize(lc.surface.num_simplices());
  // build_surface keeps the input order
  for (size_t t = 0; t < colors.size(); ++t) lc.coloring.color[t] = colors[t];
  if (!coloring_valid(lc.surface, lc.coloring))
    throw Error(ErrorCode::internal, "up/down coloring failed validation");
  for (int t = 0; t < lc.surface.num_simplices(); ++t)
    if (lc.coloring.color[t] == Color::black) lc.black_up.push_back(t);
  return lc;
}

LatticeFn<double> rational_analog(const LatticeFn<double>& g, int k) {
  LatticeFn<double> cur = g;
  for (int i = 0; i < k; ++i) {
    LatticeFn<double> nxt;
    for (const auto& [p, v] : cur.v) {
      Point p1{p.first - 1, p.second}, p2{p.first, p.second - 1};
      if (cur.has(p1) && cur.has(p2)) nxt.v[p] = v + cur.v.at(p1) + cur.v.at(p2);
    }
    if (nxt.v.empty())
      throw Error(ErrorCode::window_too_small, "window exhausted by differencing");
    cur = std::move(nxt);
  }
  return cur;
}

SlopeFit decay_slope(const LatticeFn<double>& f, double dmin, double dmax) {
  std::unordered_map<int, std::pair<double, double>> shells;  // bin -> (d, max)
  for (const auto& [p, v] : f.v) {
    double d = embed_dist(p);
    if (d < dmin || d > dmax) continue;
    int b = static_cast<int>(std::lround(std::log(d) * 8.0));
    double a = std::abs(v);
    auto it = shells.find(b);
    if (it == shells.end() || a > it->second.second) shells[b] = {d, a};
  }
  SlopeFit fit;
  fit.dmin = dmin;
  fit.dmax = dmax;
  fit.bins = static_cast<int>(shells.size());
  if (shells.size() < 3)
    throw Error(ErrorCode::invalid_argument, "too few shells for a slope fit");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [b, dv] : shells) {
    if (dv.second <= 0) continue;
    double x = std::log(dv.first), y = std::log(dv.second);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

CauchyReport cauchy_reconstruct(const Window& domain, const LatticeFn<Rat>& psi,
                                KernelChoice kernel, double float_tol) {
  CauchyReport rep;
  for (const auto& p : domain.pts)
    if (!psi.has(p))
      throw Error(ErrorCode::domain_mismatch, "psi does not cover the domain");

  // psibar = psi on the domain, 0 outside; Qb psibar supported near the domain
  LatticeFn<Rat> qbar;
  int m_lo = 1 << 30, n_lo = 1 << 30, m_hi = -(1 << 30), n_hi = -(1 << 30);
  for (const auto& p : domain.pts) {
    m_lo = std::min(m_lo, p.first - 1);
    n_lo = std::min(n_lo, p.second - 1);
    m_hi = std::max(m_hi, p.first);
    n_hi = std::max(n_hi, p.second);
  }
  auto psibar = [&](const Point& p) -> Rat {
    return domain.contains(p) ? psi.v.at(p) : Rat(0);
  };
  for (int m = m_lo; m <= m_hi; ++m)
    for (int n = n_lo; n <= n_hi; ++n) {
      Rat v = psibar({m, n}) + psibar({m + 1, n}) + psibar({m, n + 1});
      if (!is_zero(v)) qbar.v[{m, n}] = std::move(v);
    }
  rep.strip_rows = static_cast<int>(qbar.v.size());

  // rows whose whole stencil lies inside the domain must vanish
  rep.strip_interior_zero = true;
  for (const auto& [y, v] : qbar.v)
    if (domain.contains(y) && domain.contains({y.first + 1, y.second}) &&
        domain.contains({y.first, y.second + 1}))
      rep.strip_interior_zero = false;

  if (kernel == KernelChoice::pascal) {
    // difference depth covers x - y over the domain and strip
    int depth = 0;
    for (const auto& x : domain.pts)
      for (const auto& [y, v] : qbar.v) {
        int a = y.first - x.first + 1, b = y.second - x.second + 1;
        depth = std::max(depth, a + b + 2);
      }
    auto g0 = pascal_kernel(depth);
    Rat worst(0);
    for (const auto& x : domain.pts) {
      Rat acc(0);
      for (const auto& [y, qv] : qbar.v) {
        Point d{x.first - y.first, x.second - y.second};
        acc += qv * g0.value_or_zero(d);
      }
      worst = std::max(worst, rat_abs(acc - psi.v.at(x)));
    }
    rep.max_exact_residual = rat_to_string(worst);
    rep.pass = rep.strip_interior_zero && is_zero(worst);
  } else {
    std::set<Point> diffs;
    for (const auto& x : domain.pts)
      for (const auto& [y, qv] : qbar.v)
        diffs.insert({x.first - y.first, x.second - y.second});
    QuadratureSpec spec;
    spec.mode = QuadratureSpec::Mode::contour;
    auto green = green_function({diffs.begin(), diffs.end()}, spec);
    double worst = 0;
    for (const auto& x : domain.pts) {
      double acc = 0;
      for (const auto& [y, qv] : qbar.v) {
        Point d{x.first - y.first, x.second - y.second};
        acc += qv.get_d() * green.values.v.at(d);
      }
      worst = std::max(worst, std::abs(acc - psi.v.at(x).get_d()));
    }
    rep.max_float_residual = worst;
    rep.pass = rep.strip_interior_zero && worst < float_tol;
  }
  return rep;
}

}  // namespace dca::euclid
