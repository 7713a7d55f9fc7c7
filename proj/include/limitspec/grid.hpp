#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace limitspec {

struct grid_cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Uniform tensor grid on the box [-L, L]^dim. Dirichlet grids are
/// cell-centered (no points on the boundary); periodic grids start at -L and
/// identify x = L with x = -L.
struct Grid {
  enum class Boundary { Dirichlet, Periodic };

  int dim = 1;
  double half_width = 1;
  int points_per_axis = 2;
  Boundary boundary = Boundary::Dirichlet;

  static Grid dirichlet(int dim, double half_width, int points_per_axis) {
    return make(dim, half_width, points_per_axis, Boundary::Dirichlet);
  }
  static Grid periodic(int dim, double half_width, int points_per_axis) {
    return make(dim, half_width, points_per_axis, Boundary::Periodic);
  }
  /// Grid with the requested spacing; 2L must be an integer multiple of h.
  static Grid with_spacing(int dim, double half_width, double h, Boundary b) {
    const double ratio = 2.0 * half_width / h;
    const int n = static_cast<int>(std::llround(ratio));
    if (std::abs(ratio - n) > 1e-9)
      throw std::invalid_argument("Grid: spacing does not divide the box");
    return make(dim, half_width, n, b);
  }

  double spacing() const { return 2.0 * half_width / points_per_axis; }

  long long total_points(long long cap = 2000000) const {
    long long total = 1;
    for (int i = 0; i < dim; ++i) {
      total *= points_per_axis;
      if (total > cap)
        throw grid_cap_exceeded("grid has more than " + std::to_string(cap) + " points");
    }
    return total;
  }

  double coordinate(int i) const {
    const double h = spacing();
    return boundary == Boundary::Dirichlet ? -half_width + (i + 0.5) * h : -half_width + i * h;
  }

  Eigen::VectorXd point(long long flat) const {
    Eigen::VectorXd x(dim);
    for (int a = 0; a < dim; ++a) {
      x[a] = coordinate(static_cast<int>(flat % points_per_axis));
      flat /= points_per_axis;
    }
    return x;
  }

  /// Discrete Fourier frequency for index k on a periodic axis, in
  /// [-pi/h, pi/h).
  double frequency(int k) const {
    const int n = points_per_axis;
    const int signed_k = k < (n + 1) / 2 ? k : k - n;
    return M_PI * signed_k / half_width;
  }

 private:
  static Grid make(int dim, double half_width, int n, Boundary b) {
    if (dim < 0 || dim > 3) throw std::invalid_argument("Grid: dim must be in [0, 3]");
    if (half_width <= 0) throw std::invalid_argument("Grid: half_width must be positive");
    if (n < 2) throw std::invalid_argument("Grid: need at least 2 points per axis");
    Grid g{dim, half_width, n, b};
    g.total_points();
    return g;
  }
};

}  // namespace limitspec
