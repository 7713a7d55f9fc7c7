#pragma once

#include "limitspec/asymptotic.hpp"
#include "limitspec/lattice.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

namespace limitspec {

struct direction_inside_subspace : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Orthonormal rows spanning the orthogonal complement of Y, obtained by
/// Gram-Schmidt (with one re-orthogonalization pass) from the exact rational
/// complement basis. Identifies X/Y with Y-perp.
inline Eigen::MatrixXd orthonormal_complement_frame(const SubspaceQ& y) {
  const int d = y.ambient_dim();
  const QMatrix perp = nullspace(y.basis(), d);
  const int q = static_cast<int>(perp.size());
  Eigen::MatrixXd frame(q, d);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < d; ++j) frame(i, j) = to_double(perp[i][j]);
  for (int i = 0; i < q; ++i) {
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < i; ++k)
        frame.row(i) -= frame.row(i).dot(frame.row(k)) * frame.row(k);
    frame.row(i).normalize();
  }
  return frame;
}

/// An interaction v_Y: a subspace Y of X and an asymptotic function on X/Y,
/// evaluated on X through the orthogonal projection onto Y-perp.
class PotentialTerm {
 public:
  PotentialTerm(SubspaceQ y, AsymptoticFunction v)
      : subspace_(std::move(y)),
        profile_(std::move(v)),
        frame_(orthonormal_complement_frame(subspace_)) {
    const int q = subspace_.ambient_dim() - subspace_.dim();
    if (q < 1)
      throw std::invalid_argument(
          "PotentialTerm: Y must be a proper subspace (constants belong to Y = 0)");
    if (profile_.quotient_dim() != q)
      throw std::invalid_argument("PotentialTerm: profile dimension != codim Y");
  }

  const SubspaceQ& subspace() const { return subspace_; }
  const AsymptoticFunction& profile() const { return profile_; }
  const Eigen::MatrixXd& quotient_frame() const { return frame_; }
  int ambient_dim() const { return subspace_.ambient_dim(); }

  double evaluate(const Eigen::VectorXd& x) const {
    if (x.size() != ambient_dim())
      throw dimension_mismatch("PotentialTerm::evaluate: point dimension");
    return profile_.value(frame_ * x);
  }

  friend bool operator==(const PotentialTerm& a, const PotentialTerm& b) {
    return a.subspace_ == b.subspace_ && a.profile_ == b.profile_;
  }

 private:
  SubspaceQ subspace_;
  AsymptoticFunction profile_;
  Eigen::MatrixXd frame_;
};

/// Radial limit of the term along a direction not contained in Y: the value
/// of v at the unit vector of the projection of the direction onto Y-perp.
inline double asymptotic_value(const PotentialTerm& term, const DirectionQ& alpha) {
  if (contains_direction(term.subspace(), alpha))
    throw direction_inside_subspace("asymptotic_value: direction lies inside Y");
  const auto& v = alpha.vec();
  Eigen::VectorXd a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = v[i].template convert_to<double>();
  Eigen::VectorXd p = term.quotient_frame() * a;
  return term.profile().radial_limit(p / p.norm());
}

/// H = -Laplacian + sum of interaction terms on R^dim.
struct Hamiltonian {
  int dim = 1;
  std::vector<PotentialTerm> terms;

  double potential(const Eigen::VectorXd& x) const {
    double s = 0;
    for (const auto& t : terms) s += t.evaluate(x);
    return s;
  }

  std::vector<SubspaceQ> subspace_family() const {
    std::vector<SubspaceQ> f;
    f.push_back(SubspaceQ::zero(dim));
    for (const auto& t : terms) f.push_back(t.subspace());
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
  }

  SemiLattice interaction_lattice(std::size_t max_elements = 100000) const {
    return generate_semilattice(subspace_family(), dim, max_elements);
  }
};

/// The translation limit of H along a half-line: terms whose subspace
/// contains the direction survive unchanged, the others collapse to the
/// constant shift. The result is invariant under the intersection Z of the
/// surviving subspaces (all of X when none survive).
struct LimitHamiltonian {
  DirectionQ direction;
  std::vector<PotentialTerm> retained;
  double shift = 0;
  SubspaceQ invariant_subspace;
  int dim = 1;

  double potential(const Eigen::VectorXd& x) const {
    double s = shift;
    for (const auto& t : retained) s += t.evaluate(x);
    return s;
  }

  /// Same operator with the shift folded back in as a constant interaction,
  /// so the limit map can be applied again.
  Hamiltonian as_hamiltonian() const {
    Hamiltonian h{dim, retained};
    if (shift != 0)
      h.terms.emplace_back(SubspaceQ::zero(dim), AsymptoticFunction::constant(dim, shift));
    return h;
  }

  /// Structural equality ignoring the direction that produced the limit.
  bool same_operator(const LimitHamiltonian& other) const {
    return dim == other.dim && shift == other.shift &&
           invariant_subspace == other.invariant_subspace && retained == other.retained;
  }
};

inline LimitHamiltonian translation_limit(const Hamiltonian& h, const DirectionQ& alpha) {
  if (alpha.ambient_dim() != h.dim)
    throw dimension_mismatch("translation_limit: direction dimension");
  LimitHamiltonian out{alpha, {}, 0.0, SubspaceQ::full(h.dim), h.dim};
  for (const auto& term : h.terms) {
    if (contains_direction(term.subspace(), alpha)) {
      out.retained.push_back(term);
      out.invariant_subspace = intersect(out.invariant_subspace, term.subspace());
    } else {
      out.shift += asymptotic_value(term, alpha);
    }
  }
  return out;
}

/// The limit Hamiltonian separated along its invariant subspace: an operator
/// on Z-perp plus the constant shift. Spec(limit) = [shift + min eig, inf).
/// A zero-dimensional reduction means the limit was the free Laplacian plus
/// the shift.
struct ReducedHamiltonian {
  struct Term {
    AsymptoticFunction profile;
    Eigen::MatrixXd frame;  // quotient_dim x dim, orthonormal rows
  };

  int dim = 0;
  double shift = 0;
  std::vector<Term> terms;

  double potential(const Eigen::VectorXd& u) const {
    double s = 0;
    for (const auto& t : terms) s += t.profile.value(t.frame * u);
    return s;
  }
};

inline ReducedHamiltonian reduce(const LimitHamiltonian& lim) {
  const Eigen::MatrixXd w = orthonormal_complement_frame(lim.invariant_subspace);
  ReducedHamiltonian red;
  red.dim = static_cast<int>(w.rows());
  red.shift = lim.shift;
  for (const auto& term : lim.retained)
    red.terms.push_back({term.profile(), term.quotient_frame() * w.transpose()});
  return red;
}

/// Numerical witness of the translation limit at the potential level: the
/// sup over a sampled window of |V(x + r a) - V_limit(x)|, a the unit vector
/// of alpha. Decreases to 0 as r grows.
inline double translation_conjugation_probe(const Hamiltonian& h, const DirectionQ& alpha,
                                            double r, double window_half_width,
                                            int samples_per_axis = 9) {
  const LimitHamiltonian lim = translation_limit(h, alpha);
  const std::vector<double> unit = alpha.unit();
  Eigen::VectorXd a(h.dim);
  for (int i = 0; i < h.dim; ++i) a[i] = unit[i];

  long long total = 1;
  for (int i = 0; i < h.dim; ++i) total *= samples_per_axis;
  if (total > 200000) throw std::invalid_argument("probe: sample grid too large");

  double sup = 0;
  Eigen::VectorXd x(h.dim);
  for (long long idx = 0; idx < total; ++idx) {
    long long rest = idx;
    for (int i = 0; i < h.dim; ++i) {
      const int j = static_cast<int>(rest % samples_per_axis);
      rest /= samples_per_axis;
      x[i] = samples_per_axis == 1
                 ? 0.0
                 : -window_half_width +
                       2.0 * window_half_width * j / (samples_per_axis - 1);
    }
    const double diff = std::abs(h.potential(x + r * a) - lim.potential(x));
    sup = std::max(sup, diff);
  }
  return sup;
}

}  // namespace limitspec
