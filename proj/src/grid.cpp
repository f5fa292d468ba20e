#include "pseudosun/grid.hpp"

#include <cmath>
#include <string>

#include "pseudosun/errors.hpp"

namespace pseudosun {

UniformGrid::UniformGrid(double min, double max, Eigen::Index count)
    : min_(min), max_(max), count_(count), step_(0.0) {
  if (!std::isfinite(min) || !std::isfinite(max))
    throw InvalidGridError("grid bounds must be finite");
  if (count < 2)
    throw InvalidGridError("grid needs at least 2 points, got " + std::to_string(count));
  if (!(max > min))
    throw InvalidGridError("grid max (" + std::to_string(max) + ") must exceed min (" +
                           std::to_string(min) + ")");
  step_ = (max - min) / static_cast<double>(count - 1);
}

Eigen::VectorXd UniformGrid::points() const {
  Eigen::VectorXd p(count_);
  for (Eigen::Index k = 0; k < count_; ++k) p[k] = (*this)[k];
  return p;
}

Eigen::VectorXd UniformGrid::trapezoid_weights() const {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(count_, step_);
  w[0] *= 0.5;
  w[count_ - 1] *= 0.5;
  return w;
}

FrequencyGrid::FrequencyGrid(double min, double max, Eigen::Index count)
    : UniformGrid(min, max, count) {
  if (min < 0.0)
    throw InvalidGridError("frequency grid must not include negative wavenumbers (min = " +
                           std::to_string(min) + ")");
}

}  // namespace pseudosun
