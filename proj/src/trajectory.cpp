#include "pseudosun/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pseudosun/errors.hpp"

namespace pseudosun {

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::Raw: return "raw";
    case Normalization::MaxRepartOffdiag: return "max_repart_offdiag";
    case Normalization::MaxDiag: return "max_diag";
  }
  return "?";
}

std::optional<Normalization> parse_normalization(std::string_view name) {
  for (Normalization n :
       {Normalization::Raw, Normalization::MaxRepartOffdiag, Normalization::MaxDiag})
    if (to_string(n) == name) return n;
  return std::nullopt;
}

Eigen::VectorXcd DensityTrajectory::element(Eigen::Index a, Eigen::Index b) const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(matrices.size()));
  for (std::size_t k = 0; k < matrices.size(); ++k)
    out[static_cast<Eigen::Index>(k)] = matrices[k](a, b);
  return out;
}

namespace {

double reference_peak(const DensityTrajectory& traj, Normalization mode) {
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& m : traj.matrices) {
    const Eigen::Index n = m.rows();
    if (mode == Normalization::MaxDiag) {
      peak = std::max(peak, m.diagonal().real().maxCoeff());
    } else {
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) peak = std::max(peak, m(a, b).real());
    }
  }
  return peak;
}

}  // namespace

DensityTrajectory normalize_trajectory(const DensityTrajectory& traj, Normalization mode) {
  if (mode == Normalization::Raw) return traj;
  if (mode == Normalization::MaxRepartOffdiag && traj.levels() < 2)
    throw CannotNormalizeError("max_repart_offdiag needs at least two levels");
  const double peak = reference_peak(traj, mode);
  if (!(peak > 0.0) || !std::isfinite(peak))
    throw CannotNormalizeError("reference entry for " + std::string(to_string(mode)) +
                               " has no positive maximum");
  DensityTrajectory out{traj.times, {}, mode};
  out.matrices.reserve(traj.matrices.size());
  for (const auto& m : traj.matrices) out.matrices.push_back(m / peak);
  return out;
}

Eigen::MatrixXcd normalize_max_diag(const Eigen::MatrixXcd& m) {
  const double peak = m.diagonal().real().maxCoeff();
  if (!(peak > 0.0)) throw CannotNormalizeError("matrix has no positive diagonal entry");
  return m / peak;
}

StructureReport inspect(const DensityTrajectory& traj) {
  StructureReport report;
  double scale = 0.0;
  for (const auto& m : traj.matrices) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  for (const auto& m : traj.matrices) {
    report.hermiticity_defect =
        std::max(report.hermiticity_defect, (m - m.adjoint()).cwiseAbs().maxCoeff());
    const double own = m.cwiseAbs().maxCoeff();
    if (own == 0.0) continue;
    // Eigenvalues are taken on the matrix scaled by its own largest entry so
    // that nearly empty early-time matrices keep full relative precision.
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint()) / own;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
    report.min_eigenvalue = std::min(report.min_eigenvalue, ev[0] * own / scale);
    const double largest = ev[ev.size() - 1];
    if (ev.size() > 1 && largest > 0.0)
      report.rank_one_ratio = std::max(report.rank_one_ratio, ev[ev.size() - 2] / largest);
  }
  return report;
}

}  // namespace pseudosun
