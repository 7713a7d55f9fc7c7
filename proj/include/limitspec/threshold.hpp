#pragma once

#include "limitspec/discretize.hpp"
#include "limitspec/model.hpp"
#include "limitspec/sampling.hpp"
#include "limitspec/solvers.hpp"

#include <limits>
#include <string>
#include <vector>

namespace limitspec {

struct GridScheduleEntry {
  double half_width;
  double spacing;
};

struct ThresholdConfig {
  std::vector<GridScheduleEntry> schedule{{8.0, 0.1}, {12.0, 0.05}};
  int direction_budget = 32;  // strata whose dropped terms are not all C_0
  SolverConfig solver;
};

struct ThresholdRecord {
  int stratum_index;
  DirectionQ direction;
  double shift = 0;
  std::vector<double> lambda_min;  // one per schedule entry
  double lambda_extrapolated = 0;
  double onset = 0;
  bool failed = false;
  std::string message;
};

/// Per-stratum evidence for the bottom of the essential spectrum: every limit
/// operator is a half-line [shift + lambda_min, inf), and the essential
/// spectrum is the union over all directions at infinity.
struct ThresholdReport {
  std::vector<Stratum> strata;
  std::vector<ThresholdRecord> records;
  double essential_infimum = std::numeric_limits<double>::quiet_NaN();
  int attaining_record = -1;
  std::string note;
};

namespace detail {

inline double richardson_h2(double h_coarse, double lam_coarse, double h_fine, double lam_fine) {
  const double c2 = h_coarse * h_coarse, f2 = h_fine * h_fine;
  return (c2 * lam_fine - f2 * lam_coarse) / (c2 - f2);
}

}  // namespace detail

inline ThresholdReport threshold_estimate(const Hamiltonian& h, const SemiLattice& s,
                                          const ThresholdConfig& cfg = {}) {
  if (s.ambient_dim() != h.dim) throw dimension_mismatch("threshold_estimate: lattice dimension");
  ThresholdReport report;
  report.strata = enumerate_strata(s);
  report.note =
      "union over directions at infinity approximated by finitely many exact "
      "rational samples per stratum";

  for (int si = 0; si < static_cast<int>(report.strata.size()); ++si) {
    const Stratum& st = report.strata[si];
    bool dropped_all_c0 = true;
    for (const auto& term : h.terms)
      if (!term.subspace().contains(st.base) && !term.profile().vanishes_at_infinity())
        dropped_all_c0 = false;
    const int budget = dropped_all_c0 ? 1 : cfg.direction_budget;

    for (const auto& alpha : stratum_direction_samples(s, st, budget)) {
      ThresholdRecord rec{si, alpha, 0.0, {}, 0.0, 0.0, false, ""};
      try {
        const LimitHamiltonian lim = translation_limit(h, alpha);
        const ReducedHamiltonian red = reduce(lim);
        rec.shift = lim.shift;
        for (const auto& entry : cfg.schedule) {
          if (red.dim == 0) {
            rec.lambda_min.push_back(0.0);
            continue;
          }
          const Grid g = Grid::with_spacing(red.dim, entry.half_width, entry.spacing,
                                            Grid::Boundary::Dirichlet);
          const SpectrumResult r = lowest_eigenvalues(discretize_reduced(red, g), 1, cfg.solver);
          if (!r.converged)
            throw solver_failure("eigensolver did not converge: " + r.message);
          rec.lambda_min.push_back(r.eigenvalues[0]);
        }
        if (red.dim == 0 || rec.lambda_min.size() < 2) {
          rec.lambda_extrapolated = rec.lambda_min.empty() ? 0.0 : rec.lambda_min.back();
        } else {
          const auto& sched = cfg.schedule;
          const std::size_t last = rec.lambda_min.size() - 1;
          rec.lambda_extrapolated =
              detail::richardson_h2(sched[last - 1].spacing, rec.lambda_min[last - 1],
                                    sched[last].spacing, rec.lambda_min[last]);
        }
        rec.onset = rec.shift + rec.lambda_extrapolated;
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.message = e.what();
      }
      report.records.push_back(std::move(rec));
    }
  }

  for (int i = 0; i < static_cast<int>(report.records.size()); ++i) {
    const auto& rec = report.records[i];
    if (rec.failed) continue;
    if (report.attaining_record < 0 || rec.onset < report.essential_infimum) {
      report.essential_infimum = rec.onset;
      report.attaining_record = i;
    }
  }
  return report;
}

struct StabilityConfig {
  double box_half_width = 8.0;
  double box_growth = 1.5;
  double spacing = 0.1;
  int num_eigenvalues = 12;
  double stability_tol = 1e-3;
  // Box-quantized spacings at a fixed energy shrink at least like L1/L2 as
  // the box grows; bound-state gaps hold steady near 1.
  double gap_ratio_floor = 0.8;
  SolverConfig solver;
};

struct ClassifiedEigenvalue {
  double value;      // at the larger box
  double movement;   // distance to the nearest small-box eigenvalue
  double gap_ratio;  // large-box gap / small-box gap at the match
  bool stable;
};

struct StabilityReport {
  std::vector<double> small_box;
  std::vector<double> large_box;
  std::vector<ClassifiedEigenvalue> classified;
  std::vector<double> stable;
  double accumulation_onset = std::numeric_limits<double>::infinity();
  bool has_unstable = false;
};

namespace detail {

inline double neighbor_gap(const std::vector<double>& v, std::size_t i) {
  double g = std::numeric_limits<double>::infinity();
  if (i > 0) g = std::min(g, v[i] - v[i - 1]);
  if (i + 1 < v.size()) g = std::min(g, v[i + 1] - v[i]);
  return g;
}

}  // namespace detail

/// Direct-side witness: eigenvalues of the boxed operator below the essential
/// threshold stay put as the box grows; box-quantized continuum approximants
/// drift and their spacing collapses like L^-2.
inline StabilityReport classify_eigenvalue_stability(const Hamiltonian& h,
                                                     const StabilityConfig& cfg = {}) {
  if (h.dim > 2)
    throw std::invalid_argument("classify_eigenvalue_stability: full operator limited to dim 2");
  StabilityReport rep;
  const Grid small = Grid::with_spacing(h.dim, cfg.box_half_width, cfg.spacing,
                                        Grid::Boundary::Dirichlet);
  const Grid large = Grid::with_spacing(h.dim, cfg.box_half_width * cfg.box_growth, cfg.spacing,
                                        Grid::Boundary::Dirichlet);
  const SpectrumResult rs =
      lowest_eigenvalues(discretize_hamiltonian(h, small), cfg.num_eigenvalues, cfg.solver);
  const SpectrumResult rl =
      lowest_eigenvalues(discretize_hamiltonian(h, large), cfg.num_eigenvalues, cfg.solver);
  if (!rs.converged || !rl.converged)
    throw solver_failure("stability classification: eigensolver did not converge: " +
                         rs.message + rl.message);
  rep.small_box = rs.eigenvalues;
  rep.large_box = rl.eigenvalues;

  for (std::size_t i = 0; i < rep.large_box.size(); ++i) {
    const double lam = rep.large_box[i];
    std::size_t match = 0;
    double movement = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rep.small_box.size(); ++j) {
      const double dist = std::abs(lam - rep.small_box[j]);
      if (dist < movement) {
        movement = dist;
        match = j;
      }
    }
    const double g_large = detail::neighbor_gap(rep.large_box, i);
    const double g_small = detail::neighbor_gap(rep.small_box, match);
    const double ratio = g_small > 0 ? g_large / g_small : 1.0;
    const bool stable = movement < cfg.stability_tol && ratio > cfg.gap_ratio_floor;
    rep.classified.push_back({lam, movement, ratio, stable});
    if (stable) {
      rep.stable.push_back(lam);
    } else {
      rep.has_unstable = true;
      rep.accumulation_onset = std::min(rep.accumulation_onset, lam);
    }
  }
  return rep;
}

}  // namespace limitspec
