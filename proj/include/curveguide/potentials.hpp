#pragma once

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "curveguide/geometry.hpp"
#include "curveguide/grid.hpp"
#include "curveguide/sukumar.hpp"

namespace curveguide::potentials {

enum class Source { CipOfProfile, SusyMinus, SusyPlus, Compensation, External };

/// Real potential sampled on a uniform arc-length grid, in natural units
/// (hbar = m = 1).  Asymptotic values are the means of the outer 5% of
/// samples on each side.
struct PotentialGrid {
  UniformGrid grid;
  ArrayXd v;
  double v_left_asym = 0.0;
  double v_right_asym = 0.0;
  Source source = Source::External;

  static PotentialGrid from_values(UniformGrid grid, ArrayXd v, Source source);

  double min_value() const { return v.minCoeff(); }
};

/// Curvature-induced potential of a profile: V(q1) = -kappa(q1)^2 / 8.
/// Independent of any sign mask by construction.
PotentialGrid cip_from_profile(const geometry::CurvatureProfile& profile, const UniformGrid& grid);

/// Superpotential Phi(q1) of the SUSY factorization
/// A = i p / sqrt(2) + Phi, with partner potentials V± = Phi^2 ± Phi'/sqrt(2).
class Superpotential {
 public:
  enum class Kind { TanhWall, FromGroundState, Tabulated };

  /// Phi = A tanh(alpha q1), A > 0, alpha > 0.
  static Superpotential tanh_wall(double A, double alpha);
  /// Phi = -(ln psi0)' / sqrt(2) from a nodeless tabulated ground state;
  /// derivatives are taken on ln(psi0) so deep tails do not cancel.
  static Superpotential from_ground_state(UniformGrid grid, ArrayXd psi0);
  static Superpotential tabulated(UniformGrid grid, ArrayXd phi);

  Kind kind() const { return kind_; }
  double value(double q1) const;
  double derivative(double q1) const;
  ArrayXd values(const ArrayXd& q1) const;
  ArrayXd derivatives(const ArrayXd& q1) const;

 private:
  Superpotential() = default;
  Kind kind_ = Kind::TanhWall;
  double amp_ = 0.0, alpha_ = 0.0;
  UniformGrid grid_;
  ArrayXd phi_, dphi_;  // tabulated values and centered-difference slope

  double interp(const ArrayXd& f, double q1) const;
};

/// SUSY partner pair.  v_minus / v_plus are the literal partner potentials
/// V± = Phi^2 ± Phi'/sqrt(2) (asymptote Phi_inf^2).  Curvatures come from
/// inverting the curvature-induced potential relation on the potentials
/// *relative to that common asymptotic offset*, since a waveguide potential
/// vanishes at infinity; the offset is an irrelevant global energy shift and
/// is recorded in cip_offset.
struct SusyPair {
  PotentialGrid v_minus, v_plus;
  ArrayXd kappa_minus_sq, kappa_plus_sq;
  bool realizable_minus = false, realizable_plus = false;
  double cip_offset = 0.0;
};

SusyPair susy_pair_from_superpotential(const Superpotential& phi, const UniformGrid& grid);

/// Partner curvature from the nodeless zero mode psi0 of the minus guide:
/// kappa+^2 = kappa-^2 + 8 [psi0''/psi0 - (psi0'/psi0)^2], evaluated as the
/// second derivative of ln(psi0).
ArrayXd susy_partner_from_ground_state(const UniformGrid& grid, const ArrayXd& psi0,
                                       const ArrayXd& kappa_minus_sq);

/// One level of a shape-invariance chain: kappa_s^2 = kappa_0^2 - 8 sum R.
struct ChainLevel {
  ArrayXd kappa_sq;
  bool realizable = false;
};
std::vector<ChainLevel> shape_invariant_chain(const ArrayXd& kappa0_sq,
                                              const std::vector<double>& residuals);

/// Curvature-induced potential of the ellipse (a cos u, b sin u):
/// V(u) = -(1/8) a^2 b^2 / (b^2 cos^2 u + a^2 sin^2 u)^3, with the arc-length
/// map q1(u) and the perimeter.  Minimum -a^2/(8 b^4) at u in {0, pi}.
struct EllipseCip {
  double a = 0.0, b = 0.0, perimeter = 0.0;
  ArrayXd u, q1, v;
};
EllipseCip ellipse_cip(double a, double b, Index n);

/// Same potential resampled on a uniform arc-length loop grid [0, L).
PotentialGrid ellipse_cip_arclength(double a, double b, Index n);

double ellipse_perimeter(double a, double b);

/// Semi-axes (a, b) with the requested eccentricity and perimeter, solved by
/// bisection on the perimeter integral to 1e-12 relative tolerance.
std::pair<double, double> ellipse_semi_axes(double eccentricity, double perimeter);

/// Depth-modulation barrier U = -(v_target - v_reference); painting U on the
/// target guide makes it isospectral to the reference: v_target + U equals
/// v_reference identically.
PotentialGrid compensation_barrier(const PotentialGrid& v_target, const PotentialGrid& v_reference);

}  // namespace curveguide::potentials
