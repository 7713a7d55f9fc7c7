#pragma once

#include "limitspec/rational.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace limitspec {

/// A linear subspace of Q^d in canonical form: the basis rows are in reduced
/// row echelon form with strictly increasing pivot columns. Two subspaces are
/// equal iff their canonical bases are identical, so set membership and
/// intersection ranks are exact.
class SubspaceQ {
 public:
  SubspaceQ() = default;

  static SubspaceQ zero(int ambient_dim) {
    check_dim(ambient_dim);
    SubspaceQ s;
    s.ambient_dim_ = ambient_dim;
    return s;
  }

  static SubspaceQ full(int ambient_dim) {
    check_dim(ambient_dim);
    QMatrix rows(ambient_dim, QVector(ambient_dim, Rational(0)));
    for (int i = 0; i < ambient_dim; ++i) rows[i][i] = 1;
    SubspaceQ s;
    s.ambient_dim_ = ambient_dim;
    s.basis_ = std::move(rows);
    return s;
  }

  /// Span of arbitrary rational vectors, canonicalized. Idempotent on
  /// canonical input.
  static SubspaceQ span(QMatrix vectors, int ambient_dim) {
    check_dim(ambient_dim);
    for (const auto& v : vectors)
      if (static_cast<int>(v.size()) != ambient_dim)
        throw dimension_mismatch("SubspaceQ::span: vector length != ambient dimension");
    reduced_row_echelon(vectors);
    SubspaceQ s;
    s.ambient_dim_ = ambient_dim;
    s.basis_ = std::move(vectors);
    return s;
  }

  static SubspaceQ span_int(const std::vector<std::vector<long long>>& rows, int ambient_dim) {
    QMatrix m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
      QVector q(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) q[i] = Rational(r[i]);
      m.push_back(std::move(q));
    }
    return span(std::move(m), ambient_dim);
  }

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return dim() == ambient_dim_; }
  const QMatrix& basis() const { return basis_; }

  /// Exact membership: reduce v against the echelon basis.
  bool contains_vector(QVector v) const {
    if (static_cast<int>(v.size()) != ambient_dim_)
      throw dimension_mismatch("contains_vector: length mismatch");
    for (const auto& row : basis_) {
      int p = pivot_column(row);
      if (v[p] != 0) {
        const Rational c = v[p];
        for (int j = p; j < ambient_dim_; ++j) v[j] -= c * row[j];
      }
    }
    return is_zero_vector(v);
  }

  /// other ⊆ this
  bool contains(const SubspaceQ& other) const {
    if (other.ambient_dim_ != ambient_dim_)
      throw dimension_mismatch("contains: ambient dimension mismatch");
    if (other.dim() > dim()) return false;
    for (const auto& row : other.basis_)
      if (!contains_vector(row)) return false;
    return true;
  }

  friend bool operator==(const SubspaceQ& a, const SubspaceQ& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

  /// Total order for canonical storage: by dimension, then basis entries.
  friend std::strong_ordering operator<=>(const SubspaceQ& a, const SubspaceQ& b) {
    if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    for (int r = 0; r < a.dim(); ++r)
      for (int j = 0; j < a.ambient_dim_; ++j)
        if (auto c = a.basis_[r][j].compare(b.basis_[r][j]); c != 0)
          return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Basis rows scaled to primitive integer vectors (for serialization).
  std::vector<std::vector<Integer>> integer_basis() const {
    std::vector<std::vector<Integer>> out;
    out.reserve(basis_.size());
    for (const auto& row : basis_) out.push_back(primitive_integer_vector(row));
    return out;
  }

  std::string str() const {
    std::string s = "span{";
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      s += r ? "; (" : "(";
      for (int j = 0; j < ambient_dim_; ++j) {
        if (j) s += ",";
        s += to_string(basis_[r][j]);
      }
      s += ")";
    }
    s += basis_.empty() ? "0}" : "}";
    return s;
  }

 private:
  static void check_dim(int d) {
    if (d < 1) throw std::invalid_argument("SubspaceQ: ambient dimension must be >= 1");
  }
  static int pivot_column(const QVector& row) {
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) return static_cast<int>(j);
    throw std::logic_error("canonical basis contains a zero row");
  }

  int ambient_dim_ = 0;
  QMatrix basis_;
};

/// A half-line at infinity: a nonzero integer vector with coprime entries.
/// Orientation matters, so v and -v are distinct directions.
class DirectionQ {
 public:
  DirectionQ(std::vector<Integer> v, int ambient_dim) : ambient_dim_(ambient_dim) {
    if (static_cast<int>(v.size()) != ambient_dim)
      throw dimension_mismatch("DirectionQ: length mismatch");
    Integer g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    if (g == 0) throw std::invalid_argument("DirectionQ: zero vector");
    for (auto& x : v) x /= g;
    vec_ = std::move(v);
  }

  static DirectionQ from_rational(const QVector& v, int ambient_dim) {
    return DirectionQ(primitive_integer_vector(v), ambient_dim);
  }

  static DirectionQ from_int(const std::vector<long long>& v, int ambient_dim) {
    std::vector<Integer> w(v.begin(), v.end());
    return DirectionQ(std::move(w), ambient_dim);
  }

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<Integer>& vec() const { return vec_; }

  QVector rational_vec() const {
    QVector q(vec_.size());
    for (std::size_t i = 0; i < vec_.size(); ++i) q[i] = Rational(vec_[i]);
    return q;
  }

  std::vector<double> unit() const {
    std::vector<double> u(vec_.size());
    double n2 = 0;
    for (std::size_t i = 0; i < vec_.size(); ++i) {
      u[i] = vec_[i].template convert_to<double>();
      n2 += u[i] * u[i];
    }
    const double n = std::sqrt(n2);
    for (auto& x : u) x /= n;
    return u;
  }

  friend bool operator==(const DirectionQ& a, const DirectionQ& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vec_ == b.vec_;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < vec_.size(); ++i) {
      if (i) s += ",";
      s += vec_[i].str();
    }
    return s + ")";
  }

 private:
  int ambient_dim_;
  std::vector<Integer> vec_;
};

inline SubspaceQ canonicalize(const QMatrix& vectors, int ambient_dim) {
  return SubspaceQ::span(vectors, ambient_dim);
}

/// A ∩ B, computed from the kernel of [Aᵗ | -Bᵗ]: a kernel element (x, y)
/// gives the intersection vector Σ xᵢ aᵢ.
inline SubspaceQ intersect(const SubspaceQ& a, const SubspaceQ& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw dimension_mismatch("intersect: ambient dimension mismatch");
  const int d = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return SubspaceQ::zero(d);
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  const int p = a.dim(), q = b.dim();
  QMatrix m(d, QVector(p + q, Rational(0)));
  for (int i = 0; i < p; ++i)
    for (int r = 0; r < d; ++r) m[r][i] = a.basis()[i][r];
  for (int j = 0; j < q; ++j)
    for (int r = 0; r < d; ++r) m[r][p + j] = -b.basis()[j][r];
  const QMatrix kernel = nullspace(std::move(m), p + q);
  QMatrix vectors;
  vectors.reserve(kernel.size());
  for (const auto& k : kernel) {
    QVector v(d, Rational(0));
    for (int i = 0; i < p; ++i)
      for (int r = 0; r < d; ++r) v[r] += k[i] * a.basis()[i][r];
    vectors.push_back(std::move(v));
  }
  return SubspaceQ::span(std::move(vectors), d);
}

inline bool contains_direction(const SubspaceQ& y, const DirectionQ& alpha) {
  if (y.ambient_dim() != alpha.ambient_dim())
    throw dimension_mismatch("contains_direction: ambient dimension mismatch");
  return y.contains_vector(alpha.rational_vec());
}

struct closure_bound_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite intersection-closed family of subspaces containing the zero
/// subspace. Elements are stored sorted in canonical order.
class SemiLattice {
 public:
  explicit SemiLattice(int ambient_dim, std::vector<SubspaceQ> elements)
      : ambient_dim_(ambient_dim), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  int ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<SubspaceQ>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const SubspaceQ& s) const {
    return std::binary_search(elements_.begin(), elements_.end(), s);
  }

  bool has_full_space() const {
    for (const auto& e : elements_)
      if (e.is_full()) return true;
    return false;
  }

 private:
  int ambient_dim_;
  std::vector<SubspaceQ> elements_;
};

/// Smallest family containing the generators and {0}, closed under pairwise
/// intersection. Worklist closure; throws if the family would exceed
/// `max_elements`.
inline SemiLattice generate_semilattice(const std::vector<SubspaceQ>& generators, int ambient_dim,
                                        std::size_t max_elements = 100000) {
  std::vector<SubspaceQ> closed;
  closed.push_back(SubspaceQ::zero(ambient_dim));
  auto member = [&](const SubspaceQ& s) {
    return std::binary_search(closed.begin(), closed.end(), s);
  };
  auto insert_sorted = [&](const SubspaceQ& s) {
    closed.insert(std::upper_bound(closed.begin(), closed.end(), s), s);
  };

  std::vector<SubspaceQ> work;
  for (const auto& g : generators) {
    if (g.ambient_dim() != ambient_dim)
      throw dimension_mismatch("generate_semilattice: generator dimension mismatch");
    if (!member(g)) {
      insert_sorted(g);
      work.push_back(g);
    }
  }
  while (!work.empty()) {
    const SubspaceQ current = work.back();
    work.pop_back();
    // Snapshot: intersections with elements added later are handled when
    // those elements are popped.
    const std::vector<SubspaceQ> snapshot = closed;
    for (const auto& other : snapshot) {
      SubspaceQ meet = intersect(current, other);
      if (!member(meet)) {
        if (closed.size() >= max_elements)
          throw closure_bound_exceeded("semilattice closure exceeded " +
                                       std::to_string(max_elements) + " elements");
        insert_sorted(meet);
        work.push_back(std::move(meet));
      }
    }
  }
  return SemiLattice(ambient_dim, std::move(closed));
}

/// Generating subspaces of the N-body compactification of (R^d)^n: the n
/// planes {x_i = 0} and the n(n-1)/2 collision planes {x_i = x_j}, each of
/// dimension (n-1)d inside R^{nd}.
inline std::vector<SubspaceQ> nbody_generators(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("nbody_generators: need n >= 1, d >= 1");
  const int nd = n * d;
  std::vector<SubspaceQ> gens;
  for (int i = 0; i < n; ++i) {
    QMatrix rows;
    for (int b = 0; b < n; ++b) {
      if (b == i) continue;
      for (int t = 0; t < d; ++t) {
        QVector v(nd, Rational(0));
        v[b * d + t] = 1;
        rows.push_back(std::move(v));
      }
    }
    gens.push_back(SubspaceQ::span(std::move(rows), nd));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      QMatrix rows;
      for (int b = 0; b < n; ++b) {
        if (b == i || b == j) continue;
        for (int t = 0; t < d; ++t) {
          QVector v(nd, Rational(0));
          v[b * d + t] = 1;
          rows.push_back(std::move(v));
        }
      }
      for (int t = 0; t < d; ++t) {
        QVector v(nd, Rational(0));
        v[i * d + t] = 1;
        v[j * d + t] = 1;
        rows.push_back(std::move(v));
      }
      gens.push_back(SubspaceQ::span(std::move(rows), nd));
    }
  }
  return gens;
}

struct LatticeCheck {
  bool ok = true;
  std::string witness;  // empty when ok
};

/// Block-permute the coordinates of a subspace of (R^d)^n: coordinate block j
/// of the image reads block perm[j] of the argument.
inline SubspaceQ permute_blocks(const SubspaceQ& s, const std::vector<int>& perm, int n, int d) {
  QMatrix rows;
  rows.reserve(s.basis().size());
  for (const auto& row : s.basis()) {
    QVector v(n * d, Rational(0));
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < d; ++t) v[j * d + t] = row[perm[j] * d + t];
    rows.push_back(std::move(v));
  }
  return SubspaceQ::span(std::move(rows), n * d);
}

/// Is S invariant under the symmetric group permuting the n blocks?
inline LatticeCheck check_symmetric_action(const SemiLattice& s, int n, int d) {
  if (s.ambient_dim() != n * d)
    throw dimension_mismatch("check_symmetric_action: lattice is not in R^{nd}");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    for (const auto& y : s) {
      if (!s.contains(permute_blocks(y, perm, n, d))) {
        std::string w = "permutation (";
        for (int i = 0; i < n; ++i) w += (i ? "," : "") + std::to_string(perm[i] + 1);
        return {false, w + ") moves " + y.str() + " outside the family"};
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {};
}

/// Preimage of a subspace Y ⊆ (R^d)^k under the block projection selecting
/// blocks I = (i_1..i_k) of (R^d)^n: the embedded copy of Y plus every
/// unselected block.
inline SubspaceQ projection_preimage(const SubspaceQ& y, const std::vector<int>& index,
                                     int n, int d) {
  const int k = static_cast<int>(index.size());
  if (y.ambient_dim() != k * d) throw dimension_mismatch("projection_preimage: bad subspace");
  for (int i : index)
    if (i < 0 || i >= n) throw std::out_of_range("projection_preimage: index out of range");
  const int nd = n * d;
  QMatrix rows;
  for (const auto& row : y.basis()) {
    QVector v(nd, Rational(0));
    for (int t = 0; t < k; ++t)
      for (int c = 0; c < d; ++c) v[index[t] * d + c] = row[t * d + c];
    rows.push_back(std::move(v));
  }
  std::vector<bool> selected(n, false);
  for (int i : index) selected[i] = true;
  for (int b = 0; b < n; ++b) {
    if (selected[b]) continue;
    for (int c = 0; c < d; ++c) {
      QVector v(nd, Rational(0));
      v[b * d + c] = 1;
      rows.push_back(std::move(v));
    }
  }
  return SubspaceQ::span(std::move(rows), nd);
}

/// Kernel of the difference map (x_1..x_n) -> x_i - x_j, i.e. the collision
/// plane {x_i = x_j}.
inline SubspaceQ difference_kernel(int i, int j, int n, int d) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw std::out_of_range("difference_kernel: bad indices");
  QMatrix rows;
  const int nd = n * d;
  for (int b = 0; b < n; ++b) {
    if (b == i || b == j) continue;
    for (int t = 0; t < d; ++t) {
      QVector v(nd, Rational(0));
      v[b * d + t] = 1;
      rows.push_back(std::move(v));
    }
  }
  for (int t = 0; t < d; ++t) {
    QVector v(nd, Rational(0));
    v[i * d + t] = 1;
    v[j * d + t] = 1;
    rows.push_back(std::move(v));
  }
  return SubspaceQ::span(std::move(rows), nd);
}

/// Combinatorial compatibility of the families in R^{nd} and R^{kd}:
/// (a) preimages under the block projection p_I of every element of Sk lie
/// in Sn, and (b) every difference-map kernel {x_i = x_j} lies in Sn.
inline LatticeCheck check_projection_and_difference(const SemiLattice& sn, const SemiLattice& sk,
                                                    const std::vector<int>& index, int n, int k,
                                                    int d) {
  if (static_cast<int>(index.size()) != k)
    throw std::out_of_range("check_projection_and_difference: |I| != k");
  if (sn.ambient_dim() != n * d || sk.ambient_dim() != k * d)
    throw dimension_mismatch("check_projection_and_difference: ambient dimensions");
  for (const auto& y : sk) {
    const SubspaceQ pre = projection_preimage(y, index, n, d);
    if (!sn.contains(pre))
      return {false, "preimage of " + y.str() + " missing: " + pre.str()};
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const SubspaceQ ker = difference_kernel(i, j, n, d);
      if (!sn.contains(ker))
        return {false, "difference kernel {x_" + std::to_string(i + 1) + "=x_" +
                           std::to_string(j + 1) + "} missing"};
    }
  return {};
}

/// One class of directions at infinity: all half-lines α sharing the filter
/// S_α = { Y ∈ S : α ⊂ Y }. `base` is the smallest subspace containing the
/// class; the representative is a concrete direction inside it.
struct Stratum {
  SubspaceQ base;
  std::vector<SubspaceQ> filter;  // elements of S containing base, canonical order
  DirectionQ representative;
};

namespace detail {

/// First direction in `base` avoiding every subspace in `excluded`, searching
/// integer coefficient tuples against the canonical basis by increasing
/// max-norm height (larger coefficients first within a height, so positive
/// axis directions win ties).
inline DirectionQ find_representative(const SubspaceQ& base,
                                      const std::vector<SubspaceQ>& excluded) {
  const int m = base.dim();
  const int d = base.ambient_dim();
  if (m == 0) throw std::logic_error("find_representative: zero base");
  for (long long height = 1;; ++height) {
    std::vector<long long> c(m, height);
    // Iterate all tuples with entries in [-height, height], descending
    // lexicographically, keeping only those of exact max-norm `height`.
    while (true) {
      long long maxabs = 0;
      for (long long x : c) maxabs = std::max(maxabs, std::llabs(x));
      if (maxabs == height) {
        QVector v(d, Rational(0));
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < d; ++j) v[j] += Rational(c[i]) * base.basis()[i][j];
        if (!is_zero_vector(v)) {
          DirectionQ dir = DirectionQ::from_rational(v, d);
          bool good = true;
          for (const auto& y : excluded)
            if (contains_direction(y, dir)) {
              good = false;
              break;
            }
          if (good) return dir;
        }
      }
      int pos = m - 1;
      while (pos >= 0 && c[pos] == -height) {
        c[pos] = height;
        --pos;
      }
      if (pos < 0) break;
      --c[pos];
    }
    if (height > 64)
      throw std::runtime_error("find_representative: no direction below height 64");
  }
}

}  // namespace detail

/// One stratum per nonzero element of S, plus the generic stratum (base X)
/// when X itself is not in S. A representative exists because a finite union
/// of proper subspaces cannot cover the base.
inline std::vector<Stratum> enumerate_strata(const SemiLattice& s) {
  const int d = s.ambient_dim();
  std::vector<Stratum> strata;
  auto build = [&](const SubspaceQ& base) {
    std::vector<SubspaceQ> filter, excluded;
    for (const auto& y : s.elements()) {
      if (y.contains(base))
        filter.push_back(y);
      else
        excluded.push_back(y);
    }
    strata.push_back({base, std::move(filter), detail::find_representative(base, excluded)});
  };
  for (const auto& z : s.elements())
    if (!z.is_zero()) build(z);
  if (!s.has_full_space()) build(SubspaceQ::full(d));
  return strata;
}

}  // namespace limitspec
