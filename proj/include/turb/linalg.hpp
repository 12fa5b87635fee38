#pragma once

#include <turb/numeric.hpp>

#include <algorithm>
#include <optional>
#include <utility>

namespace turb::linalg {

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix a) { return rref(a).size(); }

inline std::size_t rank_of_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  return rank(rows);
}

// Basis of {x : a x = 0}; `cols` is needed when a has no rows.
inline std::vector<Vec> nullspace(Matrix a, std::size_t cols) {
  std::vector<Vec> basis;
  if (a.empty()) {
    for (std::size_t j = 0; j < cols; ++j) {
      Vec v(cols, 0);
      v[j] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct Solution {
  Vec x;
  bool unique = false;
};

// Solves a x = b. Returns nullopt when inconsistent; free variables are set to zero.
inline std::optional<Solution> solve(const Matrix& a, const Vec& b, std::size_t cols) {
  Matrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Vec row = a[i];
    row.resize(cols, 0);
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Solution s;
  s.x.assign(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) s.x[pivots[i]] = aug[i][cols];
  s.unique = pivots.size() == cols;
  return s;
}

inline Rational determinant(Matrix a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

// Row-style Hermite reduction: returns an echelon integer basis of the Z-span of the rows.
inline IntMatrix lattice_basis(IntMatrix rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = rows[i][c] / rows[r][c];
        for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) ++r;
  }
  rows.resize(r);
  return rows;
}

// Elementary divisors (nonzero diagonal of the Smith normal form).
inline std::vector<Integer> smith_divisors(IntMatrix a) {
  std::vector<Integer> out;
  if (a.empty()) return out;
  std::size_t m = a.size(), n = a[0].size();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m) return out;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

}  // namespace turb::linalg
