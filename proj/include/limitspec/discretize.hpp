#pragma once

#include "limitspec/grid.hpp"
#include "limitspec/model.hpp"
#include "limitspec/operator_matrix.hpp"

#include <functional>
#include <vector>

namespace limitspec {

/// Second-order central-difference discretization of -Laplacian + V on the
/// grid: diagonal 2q/h^2 + V(x), off-diagonal -1/h^2 between axis neighbors.
/// Dirichlet drops neighbors outside the box, periodic wraps them. The
/// 0-dimensional grid yields the 1x1 matrix [V()].
inline OperatorMatrix assemble_schrodinger(
    int dim, const Grid& g, const std::function<double(const Eigen::VectorXd&)>& potential) {
  if (dim != g.dim) throw dimension_mismatch("assemble_schrodinger: grid dimension");
  const long long total = g.total_points();
  if (dim == 0) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = potential(Eigen::VectorXd(0));
    return OperatorMatrix::dense(m, true);
  }
  const double h = g.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const int n = g.points_per_axis;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(total) * (1 + 2 * dim));
  std::vector<int> idx(dim, 0);
  long long stride_acc = 1;
  std::vector<long long> stride(dim);
  for (int a = 0; a < dim; ++a) {
    stride[a] = stride_acc;
    stride_acc *= n;
  }

  Eigen::VectorXd x(dim);
  for (long long flat = 0; flat < total; ++flat) {
    for (int a = 0; a < dim; ++a) x[a] = g.coordinate(idx[a]);
    triplets.emplace_back(flat, flat, 2.0 * dim * inv_h2 + potential(x));
    for (int a = 0; a < dim; ++a) {
      for (int step : {-1, 1}) {
        const int j = idx[a] + step;
        if (j >= 0 && j < n) {
          triplets.emplace_back(flat, flat + step * stride[a], -inv_h2);
        } else if (g.boundary == Grid::Boundary::Periodic) {
          const int wrapped = (j + n) % n;
          triplets.emplace_back(flat, flat + (wrapped - idx[a]) * stride[a], -inv_h2);
        }
      }
    }
    for (int a = 0; a < dim; ++a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }

  Eigen::SparseMatrix<double> m(total, total);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return OperatorMatrix::sparse(std::move(m), true);
}

inline OperatorMatrix discretize_hamiltonian(const Hamiltonian& h, const Grid& g) {
  return assemble_schrodinger(h.dim, g,
                              [&](const Eigen::VectorXd& x) { return h.potential(x); });
}

/// The separated limit operator without its constant shift; the shift is
/// added to eigenvalues downstream.
inline OperatorMatrix discretize_reduced(const ReducedHamiltonian& red, const Grid& g) {
  return assemble_schrodinger(red.dim, g,
                              [&](const Eigen::VectorXd& u) { return red.potential(u); });
}

}  // namespace limitspec
