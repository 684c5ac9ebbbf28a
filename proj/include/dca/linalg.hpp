#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dca/rational.hpp"

namespace dca {

// Sparse rows of exact scalars. Rows are kept sorted by column with no
// explicit zeros after finalize().
template <class F>
struct SparseMatrix {
  int nrows = 0;
  int ncols = 0;
  std::vector<std::vector<std::pair<int, F>>> rows;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : nrows(r), ncols(c), rows(r) {}

  static SparseMatrix identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.rows[i].push_back({i, F(1)});
    return m;
  }

  void add_entry(int r, int c, F v) { rows[r].push_back({c, std::move(v)}); }

  // Sort each row, merge duplicate columns, drop zeros.
  void finalize() {
    for (auto& row : rows) {
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<std::pair<int, F>> out;
      for (auto& e : row) {
        if (!out.empty() && out.back().first == e.first)
          out.back().second += e.second;
        else
          out.push_back(std::move(e));
      }
      out.erase(std::remove_if(out.begin(), out.end(),
                               [](const auto& e) { return is_zero(e.second); }),
                out.end());
      row = std::move(out);
    }
  }

  SparseMatrix transpose() const {
    SparseMatrix t(ncols, nrows);
    for (int r = 0; r < nrows; ++r)
      for (const auto& [c, v] : rows[r]) t.rows[c].push_back({r, v});
    t.finalize();
    return t;
  }

  SparseMatrix multiply(const SparseMatrix& o) const {
    if (ncols != o.nrows) throw std::invalid_argument("sparse multiply: shape mismatch");
    SparseMatrix p(nrows, o.ncols);
    for (int r = 0; r < nrows; ++r) {
      for (const auto& [k, v] : rows[r])
        for (const auto& [c, w] : o.rows[k]) p.rows[r].push_back({c, v * w});
    }
    p.finalize();
    return p;
  }

  SparseMatrix scaled(const F& s) const {
    SparseMatrix m = *this;
    for (auto& row : m.rows)
      for (auto& e : row) e.second *= s;
    m.finalize();
    return m;
  }

  SparseMatrix subtract(const SparseMatrix& o) const {
    if (nrows != o.nrows || ncols != o.ncols)
      throw std::invalid_argument("sparse subtract: shape mismatch");
    SparseMatrix m(nrows, ncols);
    for (int r = 0; r < nrows; ++r) {
      m.rows[r] = rows[r];
      for (const auto& [c, v] : o.rows[r]) m.rows[r].push_back({c, -v});
    }
    m.finalize();
    return m;
  }

  std::vector<F> apply(const std::vector<F>& x) const {
    std::vector<F> y(nrows, F(0));
    for (int r = 0; r < nrows; ++r)
      for (const auto& [c, v] : rows[r]) y[r] += v * x[c];
    return y;
  }

  bool is_zero_matrix() const {
    for (const auto& row : rows)
      if (!row.empty()) return false;
    return true;
  }

  size_t nnz() const {
    size_t n = 0;
    for (const auto& row : rows) n += row.size();
    return n;
  }
};

namespace detail {

// One elimination engine shared by rank / nullspace / solve. Rows carry an
// optional right-hand side and their original index for certificates.
template <class F>
struct ElimRow {
  std::vector<std::pair<int, F>> cols;  // sorted
  F rhs;
  int origin;
};

template <class F>
const F* row_find(const ElimRow<F>& r, int c) {
  auto it = std::lower_bound(r.cols.begin(), r.cols.end(), c,
                             [](const auto& e, int cc) { return e.first < cc; });
  if (it != r.cols.end() && it->first == c) return &it->second;
  return nullptr;
}

// dst -= f * src  (merged sparse update)
template <class F>
void row_axpy(ElimRow<F>& dst, const ElimRow<F>& src, const F& f) {
  std::vector<std::pair<int, F>> out;
  out.reserve(dst.cols.size() + src.cols.size());
  auto a = dst.cols.begin(), ae = dst.cols.end();
  auto b = src.cols.begin(), be = src.cols.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == ae || b->first < a->first) {
      out.push_back({b->first, -f * b->second});
      ++b;
    } else {
      F v = a->second - f * b->second;
      if (!is_zero(v)) out.push_back({a->first, std::move(v)});
      ++a;
      ++b;
    }
  }
  dst.cols = std::move(out);
  dst.rhs -= f * src.rhs;
}

}  // namespace detail

template <class F>
struct Elimination {
  int rank = 0;
  int ncols = 0;
  std::vector<int> pivot_cols;                 // in elimination order
  std::vector<detail::ElimRow<F>> pivot_rows;  // aligned with pivot_cols
  bool consistent = true;                      // only meaningful with rhs
  int witness_row = -1;                        // original row index of a 0 = c row

  bool is_pivot(int c) const {
    return std::find(pivot_cols.begin(), pivot_cols.end(), c) != pivot_cols.end();
  }

  std::vector<int> free_cols() const {
    std::vector<char> piv(ncols, 0);
    for (int c : pivot_cols) piv[c] = 1;
    std::vector<int> out;
    for (int c = 0; c < ncols; ++c)
      if (!piv[c]) out.push_back(c);
    return out;
  }
};

// Sparse exact Gaussian elimination with min-column-count pivoting.
// rhs may be empty (pure rank/nullspace use).
template <class F>
Elimination<F> eliminate(const SparseMatrix<F>& A, const std::vector<F>* rhs = nullptr) {
  using detail::ElimRow;
  Elimination<F> res;
  res.ncols = A.ncols;

  std::vector<ElimRow<F>> active;
  active.reserve(A.nrows);
  for (int r = 0; r < A.nrows; ++r) {
    ElimRow<F> row;
    row.cols = A.rows[r];
    row.rhs = rhs ? (*rhs)[r] : F(0);
    row.origin = r;
    if (row.cols.empty()) {
      if (rhs && !is_zero(row.rhs)) {
        res.consistent = false;
        if (res.witness_row < 0) res.witness_row = r;
      }
      continue;
    }
    active.push_back(std::move(row));
  }

  std::vector<int> col_count(A.ncols, 0);
  for (const auto& r : active)
    for (const auto& [c, v] : r.cols) col_count[c]++;

  while (!active.empty()) {
    // pivot column: fewest active entries
    int best_c = -1;
    for (int c = 0; c < A.ncols; ++c)
      if (col_count[c] > 0 && (best_c < 0 || col_count[c] < col_count[best_c]))
        best_c = c;
    if (best_c < 0) break;

    // pivot row: sparsest row containing best_c
    int best_r = -1;
    size_t best_nnz = 0;
    for (size_t i = 0; i < active.size(); ++i) {
      if (detail::row_find(active[i], best_c)) {
        if (best_r < 0 || active[i].cols.size() < best_nnz) {
          best_r = static_cast<int>(i);
          best_nnz = active[i].cols.size();
        }
      }
    }

    ElimRow<F> pivot = std::move(active[best_r]);
    active.erase(active.begin() + best_r);
    for (const auto& [c, v] : pivot.cols) col_count[c]--;
    const F& pv = *detail::row_find(pivot, best_c);

    for (size_t i = 0; i < active.size();) {
      const F* e = detail::row_find(active[i], best_c);
      if (!e) {
        ++i;
        continue;
      }
      for (const auto& [c, v] : active[i].cols) col_count[c]--;
      F f = *e / pv;
      detail::row_axpy(active[i], pivot, f);
      if (active[i].cols.empty()) {
        if (rhs && !is_zero(active[i].rhs)) {
          res.consistent = false;
          if (res.witness_row < 0) res.witness_row = active[i].origin;
        }
        active.erase(active.begin() + i);
      } else {
        for (const auto& [c, v] : active[i].cols) col_count[c]++;
        ++i;
      }
    }

    res.pivot_cols.push_back(best_c);
    res.pivot_rows.push_back(std::move(pivot));
    res.rank++;
  }
  return res;
}

template <class F>
int rank_of(const SparseMatrix<F>& A) {
  return eliminate(A).rank;
}

// Back substitution: x given on free columns, pivots resolved in reverse
// elimination order (each pivot row only references columns eliminated later
// or free columns).
template <class F>
void back_substitute(const Elimination<F>& e, std::vector<F>& x, bool use_rhs) {
  for (int i = static_cast<int>(e.pivot_rows.size()) - 1; i >= 0; --i) {
    int pc = e.pivot_cols[i];
    const auto& row = e.pivot_rows[i];
    F s = use_rhs ? row.rhs : F(0);
    F pv(0);
    for (const auto& [c, v] : row.cols) {
      if (c == pc)
        pv = v;
      else
        s -= v * x[c];
    }
    x[pc] = s / pv;
  }
}

template <class F>
std::vector<std::vector<F>> nullspace(const SparseMatrix<F>& A) {
  Elimination<F> e = eliminate(A);
  std::vector<std::vector<F>> basis;
  for (int f : e.free_cols()) {
    std::vector<F> x(A.ncols, F(0));
    x[f] = F(1);
    back_substitute(e, x, false);
    basis.push_back(std::move(x));
  }
  return basis;
}

template <class F>
struct LinearSolve {
  bool consistent = false;
  int witness_row = -1;  // original row index certifying 0 = c
  std::vector<F> particular;
  int nullity = 0;
};

template <class F>
LinearSolve<F> solve(const SparseMatrix<F>& A, const std::vector<F>& b) {
  Elimination<F> e = eliminate(A, &b);
  LinearSolve<F> out;
  out.consistent = e.consistent;
  out.witness_row = e.witness_row;
  out.nullity = A.ncols - e.rank;
  if (!e.consistent) return out;
  std::vector<F> x(A.ncols, F(0));
  back_substitute(e, x, true);
  out.particular = std::move(x);
  return out;
}

// Minimum Euclidean norm solution of a consistent system, via x = A^T y with
// (A A^T) y = b. Over the rationals range(A A^T) = range(A), so consistency
// carries over.
inline LinearSolve<Rat> solve_min_norm(const SparseMatrix<Rat>& A, const std::vector<Rat>& b) {
  SparseMatrix<Rat> M = A.multiply(A.transpose());
  LinearSolve<Rat> inner = solve(M, b);
  LinearSolve<Rat> out;
  out.consistent = inner.consistent;
  out.witness_row = inner.witness_row;
  out.nullity = 0;
  if (!inner.consistent) return out;
  out.particular = A.transpose().apply(inner.particular);
  return out;
}

}  // namespace dca
