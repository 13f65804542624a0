#include "curveguide/sukumar.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace curveguide::potentials {

void validate_sukumar_eta(const std::vector<double>& eta) {
  if (eta.empty()) throw std::invalid_argument("sukumar: eta list must be non-empty");
  double prev = 0.0;
  for (double e : eta) {
    if (!(e > prev)) throw std::invalid_argument("sukumar: eta must be positive and strictly increasing");
    prev = e;
  }
}

namespace {

// Scaled determinant data at one point.  With the cosh(eta_j q) column
// scaling the matrix entries reduce to
//   M_ij = eta_j^i            (i + j even, 0-based indices)
//   M_ij = eta_j^i tanh_j     (i + j odd)
// and their q1-derivatives follow from tanh' = eta sech^2 and
// tanh'' = -2 eta^2 sech^2 tanh.
struct ScaledDet {
  Eigen::MatrixXd m, m1, m2;  // matrix and its first two derivatives
};

ScaledDet build_scaled(const std::vector<double>& eta, double q1) {
  const Index n = static_cast<Index>(eta.size());
  ScaledDet d{Eigen::MatrixXd(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (Index j = 0; j < n; ++j) {
    const double e = eta[static_cast<size_t>(j)];
    const double t = std::tanh(e * q1);
    const double s2 = 1.0 - t * t;  // sech^2
    double pw = 1.0;                // eta^i
    for (Index i = 0; i < n; ++i) {
      if ((i + j) % 2 == 0) {
        d.m(i, j) = pw;
      } else {
        d.m(i, j) = pw * t;
        d.m1(i, j) = pw * e * s2;
        d.m2(i, j) = pw * (-2.0) * e * e * s2 * t;
      }
      pw *= e;
    }
  }
  return d;
}

}  // namespace

double sukumar_curvature_squared(const std::vector<double>& eta, double q1) {
  validate_sukumar_eta(eta);
  const auto d = build_scaled(eta, q1);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(d.m);
  const double det = lu.determinant();
  if (!(std::abs(det) > 1e-280))
    throw NumericalError("sukumar: scaled determinant vanished (invalid eta list?)");
  // (ln det M)'' = tr(M^-1 M'') - tr((M^-1 M')^2)
  const Eigen::MatrixXd g1 = lu.solve(d.m1);
  const Eigen::MatrixXd g2 = lu.solve(d.m2);
  const double f2 = g2.trace() - (g1 * g1).trace();
  // restore the column scaling: (ln cosh(eta q))'' = eta^2 sech^2(eta q)
  double scale2 = 0.0;
  for (double e : eta) {
    const double t = std::tanh(e * q1);
    scale2 += e * e * (1.0 - t * t);
  }
  return 8.0 * (f2 + scale2);
}

ArrayXd sukumar_curvature_squared(const std::vector<double>& eta, const ArrayXd& q1) {
  ArrayXd out(q1.size());
  for (Index i = 0; i < q1.size(); ++i) out[i] = sukumar_curvature_squared(eta, q1[i]);
  return out;
}

}  // namespace curveguide::potentials
