#pragma once

#include <Eigen/Dense>

namespace pseudosun {

/// Uniformly spaced samples on [min, max] with both endpoints included.
class UniformGrid {
 public:
  UniformGrid(double min, double max, Eigen::Index count);

  double min() const { return min_; }
  double max() const { return max_; }
  Eigen::Index count() const { return count_; }
  double step() const { return step_; }

  double operator[](Eigen::Index k) const { return min_ + static_cast<double>(k) * step_; }

  Eigen::VectorXd points() const;

  /// Composite trapezoid weights, so that weights().dot(f) integrates f.
  Eigen::VectorXd trapezoid_weights() const;

  /// Same window with twice the number of intervals.
  UniformGrid refined() const { return {min_, max_, 2 * count_ - 1}; }

 private:
  double min_;
  double max_;
  Eigen::Index count_;
  double step_;
};

/// Wavenumber grid in cm^-1; min must be non-negative.
class FrequencyGrid : public UniformGrid {
 public:
  FrequencyGrid(double min, double max, Eigen::Index count);
  explicit FrequencyGrid(const UniformGrid& g) : FrequencyGrid(g.min(), g.max(), g.count()) {}

  FrequencyGrid refined() const { return FrequencyGrid(UniformGrid::refined()); }
};

/// Time grid in fs.
class TimeGrid : public UniformGrid {
 public:
  using UniformGrid::UniformGrid;
  explicit TimeGrid(const UniformGrid& g) : UniformGrid(g) {}

  TimeGrid refined() const { return TimeGrid(UniformGrid::refined()); }
};

}  // namespace pseudosun
