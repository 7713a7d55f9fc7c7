#pragma once

// Test-only reference computations. These deliberately take different routes
// than the library: Bareiss fraction-free elimination for ranks, stacked
// annihilator constraints for intersections, an exhaustive fixpoint for
// closures, and closed forms for discrete spectra. They must stay independent
// of the code paths they check.

#include "limitspec/lattice.hpp"
#include "limitspec/rational.hpp"

#include <cmath>
#include <random>
#include <set>
#include <vector>

namespace oracles {

using limitspec::Integer;
using limitspec::QMatrix;
using limitspec::QVector;
using limitspec::Rational;
using limitspec::SubspaceQ;

/// Rank via Bareiss fraction-free elimination on integer matrices.
inline int bareiss_rank(std::vector<std::vector<Integer>> m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  Integer prev = 1;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int c = col + 1; c < cols; ++c)
        m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

/// Plain Gauss-Jordan elimination, written here so oracle results do not
/// depend on the library's echelon routine.
inline int gauss_jordan(QMatrix& m, int cols) {
  int row = 0;
  for (int col = 0; col < cols && row < static_cast<int>(m.size()); ++col) {
    int pivot = -1;
    for (int r = row; r < static_cast<int>(m.size()); ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[row], m[pivot]);
    Rational lead = m[row][col];
    for (int c = 0; c < cols; ++c) m[row][c] /= lead;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
  }
  m.resize(row);
  return row;
}

/// Solution basis of M x = 0, via the oracle-side elimination.
inline QMatrix solve_homogeneous(QMatrix m, int cols) {
  gauss_jordan(m, cols);
  std::vector<int> pivot_col;
  for (const auto& r : m)
    for (int c = 0; c < cols; ++c)
      if (r[c] != 0) {
        pivot_col.push_back(c);
        break;
      }
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivot_col) is_pivot[p] = true;
  QMatrix basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Annihilator of a row span: constraints c with c . v = 0 for all rows v.
inline QMatrix annihilator(const QMatrix& span_rows, int dim) {
  if (span_rows.empty()) {
    QMatrix id(dim, QVector(dim, Rational(0)));
    for (int i = 0; i < dim; ++i) id[i][i] = 1;
    return id;
  }
  return solve_homogeneous(span_rows, dim);
}

/// Intersection by stacking the two constraint systems and solving.
inline QMatrix intersect_by_constraints(const SubspaceQ& a, const SubspaceQ& b) {
  const int d = a.ambient_dim();
  QMatrix stacked = annihilator(a.basis(), d);
  for (auto& row : annihilator(b.basis(), d)) stacked.push_back(std::move(row));
  return solve_homogeneous(std::move(stacked), d);
}

/// Exhaustive closure: recompute all pairwise intersections until the family
/// stops growing.
inline std::vector<SubspaceQ> closure_fixpoint(std::vector<SubspaceQ> family, int dim) {
  family.push_back(SubspaceQ::zero(dim));
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = family.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        SubspaceQ meet = limitspec::intersect(family[i], family[j]);
        if (!std::binary_search(family.begin(), family.end(), meet)) {
          family.insert(std::upper_bound(family.begin(), family.end(), meet), meet);
          grew = true;
        }
      }
  }
  return family;
}

/// Distinct filters { Y in S : alpha in Y } seen over random rational
/// directions, as sets of element indices.
inline std::set<std::vector<int>> sampled_filters(const limitspec::SemiLattice& s,
                                                  int num_samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> entry(-9, 9);
  const int d = s.ambient_dim();
  std::set<std::vector<int>> filters;
  for (int k = 0; k < num_samples; ++k) {
    std::vector<long long> v(d);
    bool zero = true;
    for (auto& x : v) {
      x = entry(rng);
      zero = zero && x == 0;
    }
    if (zero) continue;
    const auto dir = limitspec::DirectionQ::from_int(v, d);
    std::vector<int> filter;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (limitspec::contains_direction(s.elements()[i], dir))
        filter.push_back(static_cast<int>(i));
    filters.insert(std::move(filter));
  }
  return filters;
}

/// Dirichlet finite-difference spectrum of -d2/dx2 with n interior points:
/// (2 - 2 cos(k pi/(n+1))) / h^2, k = 1..n.
inline std::vector<double> fd_free_spectrum(int n, double h) {
  std::vector<double> eig(n);
  for (int k = 1; k <= n; ++k)
    eig[k - 1] = (2.0 - 2.0 * std::cos(k * M_PI / (n + 1))) / (h * h);
  return eig;
}

}  // namespace oracles
