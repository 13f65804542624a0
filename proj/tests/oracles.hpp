// Test-only oracles, independent of the library implementation paths they
// check: brute-force determinants, shooting-method eigenvalues, closed-form
// reference dynamics.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// ln det D_n evaluated directly from the defining entries
//   [D_n]_ij = (1/2) eta_j^(i-1) [exp(eta_j q) + (-1)^(i+j) exp(-eta_j q)]
// (1-based i, j); usable for |q| max(eta) well below overflow.
inline double sukumar_lndet(const std::vector<double>& eta, double q) {
  const int n = static_cast<int>(eta.size());
  Eigen::MatrixXd d(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const double e = eta[static_cast<size_t>(j - 1)];
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      d(i - 1, j - 1) = 0.5 * std::pow(e, i - 1) * (std::exp(e * q) + sign * std::exp(-e * q));
    }
  return std::log(std::abs(d.determinant()));
}

// brute-force kappa^2 = 8 (ln det D)'' by central differences
inline double sukumar_kappa_sq_fd(const std::vector<double>& eta, double q, double h = 1e-4) {
  return 8.0 *
         (sukumar_lndet(eta, q + h) - 2.0 * sukumar_lndet(eta, q) + sukumar_lndet(eta, q - h)) /
         (h * h);
}

// Shooting-method bound-state energies for H = -(1/2) psi'' + v(x) psi on
// [lo, hi] with Dirichlet walls: counts sign changes of the terminal value
// while bisecting.  Independent of the tridiagonal eigensolver.
inline double shoot_terminal(const std::function<double(double)>& v, double lo, double hi, int n,
                             double energy) {
  const double h = (hi - lo) / n;
  double pm = 0.0, p0 = 1e-8;
  for (int i = 1; i < n; ++i) {
    const double x = lo + h * i;
    const double pp = 2.0 * p0 - pm + 2.0 * h * h * (v(x) - energy) * p0;
    pm = p0;
    p0 = pp;
    if (std::abs(p0) > 1e200) {  // renormalize to avoid overflow
      pm /= p0;
      p0 = 1.0;
    }
  }
  return p0;
}

inline double shoot_eigenvalue(const std::function<double(double)>& v, double lo, double hi, int n,
                               double e_lo, double e_hi) {
  double flo = shoot_terminal(v, lo, hi, n, e_lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (e_lo + e_hi);
    const double fm = shoot_terminal(v, lo, hi, n, mid);
    if ((flo < 0) == (fm < 0)) {
      e_lo = mid;
      flo = fm;
    } else {
      e_hi = mid;
    }
  }
  return 0.5 * (e_lo + e_hi);
}

// Width of a freely spreading Gaussian: sigma(t)^2 = sigma0^2 + t^2/(4 sigma0^2)
// for |psi|^2 of initial density variance sigma0^2.
inline double free_gaussian_sigma_sq(double sigma0, double t) {
  return sigma0 * sigma0 + t * t / (4.0 * sigma0 * sigma0);
}

// composite Simpson quadrature
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
  if (n % 2) ++n;
  const double h = (hi - lo) / n;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) acc += f(lo + h * i) * ((i % 2) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace oracles
