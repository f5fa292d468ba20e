#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pseudosun/errors.hpp"

namespace pseudosun {

/// Nelder-Mead simplex search confined to the unit box [0, 1]^n.
///
/// Candidates that leave the box are projected back onto it, so every
/// evaluated point is feasible. Vertices are ordered lexicographically by
/// (objective, coordinates), which makes the search fully deterministic.
template <typename Scalar = double>
class BoxedSimplex {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Objective = std::function<Scalar(const Vector&)>;

  struct Options {
    Scalar initial_step{0.05};
    Scalar reflection{1};
    Scalar expansion{2};
    Scalar contraction{0.5};
    Scalar shrink{0.5};
  };

  struct Result {
    Vector best;
    Scalar best_value{};
    std::size_t iterations{0};
    bool converged{false};
    Scalar diameter{};
    std::vector<Scalar> trace;  // best value after each iteration, starting with the initial one
  };

  BoxedSimplex() = default;
  explicit BoxedSimplex(Options options) : options_(options) {}

  /// Minimizes `f` from `start`. Stops when the simplex diameter falls below
  /// `tol` or after `max_iters` iterations. A non-finite objective value
  /// throws NumericalError through `on_nonfinite` if provided.
  Result minimize(const Objective& f, const Vector& start, std::size_t max_iters, Scalar tol,
                  const std::function<void(const Vector&)>& on_nonfinite = {}) const {
    const Eigen::Index n = start.size();
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    auto eval = [&](const Vector& x) -> Vertex {
      Vector p = project(x);
      Scalar v = f(p);
      if (!std::isfinite(static_cast<double>(v))) {
        if (on_nonfinite) on_nonfinite(p);
        throw NumericalError("objective is not finite");
      }
      return {std::move(p), v};
    };

    simplex.push_back(eval(start));
    for (Eigen::Index i = 0; i < n; ++i) {
      Vector x = simplex.front().x;
      x[i] += (x[i] + options_.initial_step <= Scalar(1)) ? options_.initial_step
                                                          : -options_.initial_step;
      simplex.push_back(eval(x));
    }
    sort(simplex);

    Result result;
    result.trace.push_back(simplex.front().value);
    result.diameter = diameter(simplex);
    while (result.diameter >= tol && result.iterations < max_iters) {
      step(simplex, eval);
      sort(simplex);
      ++result.iterations;
      result.trace.push_back(simplex.front().value);
      result.diameter = diameter(simplex);
    }
    result.converged = result.diameter < tol;
    result.best = simplex.front().x;
    result.best_value = simplex.front().value;
    return result;
  }

  static Vector project(const Vector& x) { return x.cwiseMax(Scalar(0)).cwiseMin(Scalar(1)); }

 private:
  struct Vertex {
    Vector x;
    Scalar value;
  };

  static bool precedes(const Vertex& a, const Vertex& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::lexicographical_compare(a.x.data(), a.x.data() + a.x.size(), b.x.data(),
                                        b.x.data() + b.x.size());
  }

  static void sort(std::vector<Vertex>& s) { std::stable_sort(s.begin(), s.end(), precedes); }

  static Scalar diameter(const std::vector<Vertex>& s) {
    Scalar d(0);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) d = std::max(d, (s[i].x - s[j].x).norm());
    return d;
  }

  template <typename Eval>
  void step(std::vector<Vertex>& s, Eval& eval) const {
    const std::size_t worst = s.size() - 1;
    Vector centroid = Vector::Zero(s.front().x.size());
    for (std::size_t i = 0; i < worst; ++i) centroid += s[i].x;
    centroid /= static_cast<Scalar>(worst);

    const Vertex& w = s[worst];
    Vertex reflected = eval(centroid + options_.reflection * (centroid - w.x));
    if (precedes(reflected, s.front())) {
      Vertex expanded = eval(centroid + options_.expansion * (reflected.x - centroid));
      s[worst] = precedes(expanded, reflected) ? std::move(expanded) : std::move(reflected);
      return;
    }
    if (precedes(reflected, s[worst - 1])) {
      s[worst] = std::move(reflected);
      return;
    }
    const bool outside = precedes(reflected, w);
    const Vector& anchor = outside ? reflected.x : w.x;
    Vertex contracted = eval(centroid + options_.contraction * (anchor - centroid));
    if (precedes(contracted, outside ? reflected : w)) {
      s[worst] = std::move(contracted);
      return;
    }
    for (std::size_t i = 1; i < s.size(); ++i)
      s[i] = eval(s.front().x + options_.shrink * (s[i].x - s.front().x));
  }

  Options options_{};
};

}  // namespace pseudosun
