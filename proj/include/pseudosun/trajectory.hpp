#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pseudosun/grid.hpp"

namespace pseudosun {

/// How a trajectory has been scaled.
///  - Raw: as computed, all constant prefactors dropped.
///  - MaxRepartOffdiag: the largest Re rho_ab (a < b) over time is 1.
///  - MaxDiag: the largest population over time is 1.
enum class Normalization { Raw, MaxRepartOffdiag, MaxDiag };

std::string_view to_string(Normalization n);
std::optional<Normalization> parse_normalization(std::string_view name);

/// Excited-state density matrices rho_ab(t) over the single-excitation
/// manifold, one per time point.
struct DensityTrajectory {
  TimeGrid times;
  std::vector<Eigen::MatrixXcd> matrices;
  Normalization normalization = Normalization::Raw;

  Eigen::Index levels() const { return matrices.empty() ? 0 : matrices.front().rows(); }

  /// rho_ab as a time series.
  Eigen::VectorXcd element(Eigen::Index a, Eigen::Index b) const;
};

/// Scales every matrix by one positive factor so the mode's reference
/// quantity peaks at 1. Throws CannotNormalizeError if that quantity has no
/// positive maximum. Raw returns the input unchanged.
DensityTrajectory normalize_trajectory(const DensityTrajectory& traj, Normalization mode);

/// Divides a single matrix by its largest diagonal entry.
Eigen::MatrixXcd normalize_max_diag(const Eigen::MatrixXcd& m);

/// Worst-case structural defects over a trajectory.
struct StructureReport {
  double hermiticity_defect = 0.0;  // max |M - M^H|, absolute
  double min_eigenvalue = 0.0;      // most negative eigenvalue over the largest |entry|
  double rank_one_ratio = 0.0;      // max lambda_2 / lambda_1
};

StructureReport inspect(const DensityTrajectory& traj);

}  // namespace pseudosun
