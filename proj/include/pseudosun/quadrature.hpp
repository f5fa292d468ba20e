#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "pseudosun/errors.hpp"
#include "pseudosun/grid.hpp"

namespace pseudosun {

/// Unnormalized sinc, sin(x)/x. Below |x| = 1e-4 the Taylor form is used.
template <typename Scalar>
Scalar sinc(Scalar x) {
  using std::abs;
  using std::sin;
  if (abs(x) > Scalar(1e-4)) return sin(x) / x;
  const Scalar x2 = x * x;
  return Scalar(1) - x2 / Scalar(6) + x2 * x2 / Scalar(120);
}

/// Composite trapezoid rule for samples spaced by `step`.
template <typename Derived>
typename Derived::Scalar trapezoid_integral(const Eigen::DenseBase<Derived>& samples,
                                            double step) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = samples.size();
  if (n < 2) throw InvalidGridError("trapezoid rule needs at least 2 samples");
  Scalar interior = samples.derived().segment(1, n - 2).sum();
  return step * (interior + Scalar(0.5) * (samples.derived()(0) + samples.derived()(n - 1)));
}

template <typename Derived>
typename Derived::Scalar trapezoid_integral(const Eigen::DenseBase<Derived>& samples,
                                            const UniformGrid& grid) {
  if (samples.size() != grid.count())
    throw InvalidGridError("sample count does not match the grid");
  return trapezoid_integral(samples, grid.step());
}

/// Running trapezoid integral: out[k] integrates samples[0..k], out[0] = 0.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> cumulative_trapezoid(
    const Eigen::DenseBase<Derived>& samples, double step) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = samples.size();
  if (n < 2) throw InvalidGridError("trapezoid rule needs at least 2 samples");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(n);
  out(0) = Scalar(0);
  const Scalar half_step = Scalar(0.5 * step);
  for (Eigen::Index k = 1; k < n; ++k)
    out(k) = out(k - 1) + half_step * (samples.derived()(k - 1) + samples.derived()(k));
  return out;
}

}  // namespace pseudosun
