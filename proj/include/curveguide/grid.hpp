#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace curveguide {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using Eigen::Index;

/// Uniformly spaced sample positions q_i = min + i*step, i = 0 .. n-1.
///
/// Open-interval grids include both endpoints; periodic grids cover
/// [0, span) with the right endpoint identified with the left one.
struct UniformGrid {
  double min = 0.0;
  double step = 1.0;
  Index n = 0;

  /// Grid with n samples spanning [lo, hi], endpoints included.
  static UniformGrid over_span(double lo, double hi, Index n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("UniformGrid: need n >= 2 and hi > lo");
    return {lo, (hi - lo) / static_cast<double>(n - 1), n};
  }

  /// Grid with n samples covering [0, span), step = span/n.
  static UniformGrid periodic(double span, Index n) {
    if (n < 2 || !(span > 0)) throw std::invalid_argument("UniformGrid: need n >= 2 and span > 0");
    return {0.0, span / static_cast<double>(n), n};
  }

  double point(Index i) const { return min + step * static_cast<double>(i); }
  double max() const { return point(n - 1); }

  ArrayXd points() const {
    ArrayXd q(n);
    for (Index i = 0; i < n; ++i) q[i] = point(i);
    return q;
  }

  bool same_layout(const UniformGrid& o, double tol = 1e-12) const {
    return n == o.n && std::abs(min - o.min) <= tol && std::abs(step - o.step) <= tol;
  }
};

/// Raised when a solver leaves its domain of validity (NaN, non-convergence,
/// non-flat scattering tails, ...).  The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace curveguide
