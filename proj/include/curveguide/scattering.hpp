#pragma once

#include <Eigen/Core>

#include "curveguide/grid.hpp"
#include "curveguide/potentials.hpp"

namespace curveguide::scattering {

/// Reflection/transmission amplitudes over a momentum grid.  k is the
/// momentum in the left channel, E = k^2/2 + v_left_asym; k_right is the
/// momentum in the right channel.  For equal asymptotes |R|^2 + |T|^2 = 1;
/// for unequal asymptotes the flux-weighted relation
/// |R|^2 + (k'/k)|T|^2 = 1 holds.
struct ScatteringResult {
  ArrayXd k;
  ArrayXcd R, T;
  ArrayXd k_left, k_right;
  double unitarity_residual = 0.0;

  ArrayXd abs_T_sq() const { return T.abs2(); }
  ArrayXd abs_R_sq() const { return R.abs2(); }
};

struct ScatterOptions {
  /// Maximum allowed variation of the potential over its outer 5% tails,
  /// relative to the potential depth (the plane-wave matching assumes flat
  /// asymptotic regions).
  double tail_tol = 1e-8;
  int threads = 1;
};

/// Stationary scattering on a 1D potential grid by Numerov integration from
/// the right boundary (outgoing plane wave) with two-point plane-wave
/// matching on the left.  The matching uses the lattice dispersion of the
/// Numerov stencil, so a free potential gives R = 0, T = 1 to rounding.
ScatteringResult scatter(const potentials::PotentialGrid& v, const ArrayXd& k_list,
                         const ScatterOptions& opts = {});

/// Closed-form transmission through the bent guide with curvature
/// 2 alpha sqrt(nu(nu+1)) sech(alpha q1):
/// |T|^2 = mu^2 / (1 + mu^2), mu = sinh(pi k / alpha) / sin(pi nu).
/// Returns exactly 1 for integer nu (reflectionless geometry).
double analytic_pt_transmission(double nu, double alpha, double k);

/// 64 log-spaced momenta in [0.02, 2] (natural units).
ArrayXd default_k_grid();

/// Bound spectrum of H = -(1/2) d^2/dq1^2 + v with Dirichlet walls.
/// Energies are Richardson-extrapolated over the grid and its half-sampled
/// coarsening; wavefunctions come from the fine grid, normalized to
/// integral |psi|^2 dq1 = 1.
struct BoundStateSpectrum {
  ArrayXd energies;             // ascending
  Eigen::MatrixXd wavefunctions;  // one column per state, on `grid`
  UniformGrid grid;
  bool boundary_warning = false;  // ground state not negligible at the walls

  Index count() const { return energies.size(); }
};

struct BoundStateOptions {
  /// States are kept when E < min(asymptote) - edge_margin, which excludes
  /// threshold (zero-binding) states.
  double edge_margin = 1e-6;
  bool richardson = true;
};

BoundStateSpectrum bound_states(const potentials::PotentialGrid& v,
                                const BoundStateOptions& opts = {});

/// Amplitudes of the SUSY partner guide from the plus-side result:
///   R-(k) = (Phi- + i k/sqrt(2)) / (Phi- - i k/sqrt(2)) R+(k)
///   T-(k) = (Phi+ - i k'/sqrt(2)) / (Phi- - i k/sqrt(2)) T+(k)
/// with E = k^2/2 + Phi-^2 and k'^2 = 2(E - Phi+^2).  The phase factors are
/// unimodular whenever |Phi-| = |Phi+|, so partner guides share reflection
/// and transmission probabilities.
ScatteringResult susy_amplitude_map(const ScatteringResult& plus, double phi_minus_asym,
                                    double phi_plus_asym);

}  // namespace curveguide::scattering
