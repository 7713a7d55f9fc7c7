#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace limitspec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major, rows may be empty

struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline bool is_zero_vector(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// In-place reduced row echelon form. Pivots are normalized to 1 and their
/// columns cleared; zero rows are removed; rows end up ordered by pivot
/// column. Returns the pivot columns.
inline std::vector<int> reduced_row_echelon(QMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < static_cast<int>(m.size()); ++col) {
    int pivot = -1;
    for (int r = row; r < static_cast<int>(m.size()); ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[row], m[pivot]);
    const Rational lead = m[row][col];
    for (int c = col; c < cols; ++c) m[row][c] /= lead;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

/// Basis (as rows) of { x : M x = 0 }, M given by rows of length `cols`.
/// Free variables are set to 1 one at a time, in increasing column order.
inline QMatrix nullspace(QMatrix m, int cols) {
  for (const auto& r : m)
    if (static_cast<int>(r.size()) != cols)
      throw dimension_mismatch("nullspace: ragged matrix");
  const std::vector<int> pivots = reduced_row_echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  QMatrix basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw dimension_mismatch("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Scale a nonzero rational vector to the integer vector with coprime
/// entries and the same orientation.
inline std::vector<Integer> primitive_integer_vector(const QVector& v) {
  Integer lcm_den = 1;
  for (const auto& q : v) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(q));
  std::vector<Integer> w(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
    g = boost::multiprecision::gcd(g, w[i]);
  }
  if (g == 0) throw std::invalid_argument("primitive_integer_vector: zero vector");
  for (auto& x : w) x /= g;
  return w;
}

inline std::string to_string(const Rational& q) {
  return q.str();
}

}  // namespace limitspec
