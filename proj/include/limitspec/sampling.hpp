#pragma once

#include "limitspec/lattice.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace limitspec {

/// Deterministic low-discrepancy points on the unit sphere of R^m.
/// m = 1 alternates the two poles; m = 2 walks the golden angle; m = 3 uses
/// the Fibonacci sphere.
inline std::vector<Eigen::VectorXd> sphere_points(int m, int count) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd p(m);
    if (m == 1) {
      p[0] = i % 2 == 0 ? 1.0 : -1.0;
    } else if (m == 2) {
      const double th = 2.0 * M_PI * std::fmod(i / golden, 1.0);
      p << std::cos(th), std::sin(th);
    } else {
      // Fibonacci lattice mapped to S^{m-1}, m >= 3: fill the first two
      // coordinates from the golden spiral and the rest from shifted cosines.
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = 2.0 * M_PI * std::fmod(i / golden, 1.0);
      p.setZero();
      p[0] = rho * std::cos(th);
      p[1] = rho * std::sin(th);
      p[2] = z;
      for (int j = 3; j < m; ++j) p[j] = 0.0;
      if (m > 3) {
        // Spread any extra coordinates deterministically and renormalize.
        for (int j = 3; j < m; ++j) p[j] = 0.3 * std::cos((j + 1.0) * (i + 1.0));
        p.normalize();
      }
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

/// Exact directions inside the stratum base approximating deterministic
/// sphere samples: float coefficients against the canonical basis are
/// rationalized with a fixed denominator, then checked exactly against the
/// excluded subspaces. The stratum representative always comes first;
/// duplicates (common in low dimension) are removed.
inline std::vector<DirectionQ> stratum_direction_samples(const SemiLattice& s, const Stratum& st,
                                                         int budget) {
  std::vector<DirectionQ> out;
  out.push_back(st.representative);
  if (budget <= 1) return out;

  std::vector<SubspaceQ> excluded;
  for (const auto& y : s.elements())
    if (!y.contains(st.base)) excluded.push_back(y);

  const int m = st.base.dim();
  const int d = st.base.ambient_dim();
  const long long denom = 4096;
  for (const auto& p : sphere_points(m, budget)) {
    QVector v(d, Rational(0));
    bool all_zero = true;
    for (int i = 0; i < m; ++i) {
      const Rational c(static_cast<long long>(std::llround(p[i] * denom)), denom);
      if (c == 0) continue;
      all_zero = false;
      for (int j = 0; j < d; ++j) v[j] += c * st.base.basis()[i][j];
    }
    if (all_zero) continue;
    DirectionQ dir = DirectionQ::from_rational(v, d);
    bool good = true;
    for (const auto& y : excluded)
      if (contains_direction(y, dir)) {
        good = false;
        break;
      }
    if (!good) continue;
    bool seen = false;
    for (const auto& prev : out)
      if (prev == dir) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(dir));
  }
  return out;
}

}  // namespace limitspec
