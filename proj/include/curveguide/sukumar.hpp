#pragma once

#include <Eigen/Core>

#include <vector>

#include "curveguide/grid.hpp"

namespace curveguide::potentials {

/// Squared curvature of the symmetric reflectionless waveguide whose
/// curvature-induced potential supports bound states at E_n = -eta_n^2/2,
/// eta strictly increasing and positive:
///
///   kappa_n^2(q1) = 8 d^2/dq1^2 ln det D_n,
///   [D_n]_ij = (1/2) eta_j^(i-1) [exp(eta_j q1) + (-1)^(i+j) exp(-eta_j q1)].
///
/// Evaluated with per-column scaling by cosh(eta_j q1), which turns the
/// entries into eta_j^(i-1) (even i+j) and eta_j^(i-1) tanh(eta_j q1)
/// (odd i+j) — bounded for all q1, so no overflow guard is needed.
/// The log-derivatives of the scaling factors are restored analytically.
double sukumar_curvature_squared(const std::vector<double>& eta, double q1);

ArrayXd sukumar_curvature_squared(const std::vector<double>& eta, const ArrayXd& q1);

/// Throws std::invalid_argument unless eta is non-empty, positive and
/// strictly increasing.
void validate_sukumar_eta(const std::vector<double>& eta);

}  // namespace curveguide::potentials
