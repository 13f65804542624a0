#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "curveguide/grid.hpp"

namespace curveguide::geometry {

using Eigen::Matrix;
using Eigen::MatrixX3d;

/// Piecewise sign function g(q1) encoded by its sign-change abscissas
/// (ascending).  The sign is +1 to the right of the last abscissa and flips
/// at every crossing, so SignMask{{0.0}} is sgn(q1).
struct SignMask {
  std::vector<double> changes;

  double sign_at(double q1) const {
    double s = 1.0;
    for (auto it = changes.rbegin(); it != changes.rend(); ++it) {
      if (q1 < *it) s = -s;
      else break;
    }
    return s;
  }
};

/// Arc-length parametrization u <-> q1 of the ellipse (a cos u, b sin u),
/// built once from high-order quadrature of the speed |r'(u)|.
class EllipseArcMap {
 public:
  EllipseArcMap(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double perimeter() const { return perimeter_; }

  double q1_from_u(double u) const;   // u in [0, 2*pi], monotone
  double u_from_q1(double q1) const;  // q1 wrapped into [0, perimeter)
  double speed(double u) const;       // dq1/du

 private:
  double a_, b_, perimeter_;
  ArrayXd u_, q1_;  // dense monotone table
};

/// Design input for a waveguide axis: a curvature profile kappa(q1), an
/// optional sign mask (the potential depends on kappa^2 only, so flipping
/// the sign reshapes the curve without changing the physics), and an
/// optional constant torsion used to lift the curve out of the plane.
class CurvatureProfile {
 public:
  enum class Kind { Straight, Circle, PoschlTeller, Sukumar, Ellipse, Tabulated };

  static CurvatureProfile straight();
  static CurvatureProfile circle(double radius);
  /// kappa(q1) = 2 alpha sqrt(nu (nu + 1)) sech(alpha q1), nu > 0, alpha > 0.
  static CurvatureProfile poschl_teller(double nu, double alpha);
  /// Reflectionless profile with bound-state energies -eta_n^2/2.
  static CurvatureProfile sukumar(std::vector<double> eta);
  /// Closed ellipse with semi-axes a >= b > 0, parametrized by arc length
  /// from the point (a, 0); kappa is periodic with the perimeter.
  static CurvatureProfile ellipse(double a, double b);
  /// Linear interpolation of samples on a strictly increasing q1 grid.
  static CurvatureProfile tabulated(ArrayXd q1, ArrayXd kappa);

  CurvatureProfile with_sign_mask(SignMask mask) const;
  CurvatureProfile with_torsion(double tau) const;

  Kind kind() const { return kind_; }
  double torsion() const { return torsion_; }
  const std::optional<SignMask>& sign_mask() const { return mask_; }

  double circle_radius() const { return p1_; }
  double pt_nu() const { return p1_; }
  double pt_alpha() const { return p2_; }
  const std::vector<double>& sukumar_eta() const { return eta_; }
  double ellipse_a() const { return p1_; }
  double ellipse_b() const { return p2_; }
  const EllipseArcMap& ellipse_arc_map() const { return *arc_map_; }
  const ArrayXd& tabulated_q1() const { return tab_q1_; }
  const ArrayXd& tabulated_kappa() const { return tab_kappa_; }

  /// Domain on which the profile is defined (Tabulated: the table span;
  /// everything else: the whole real line).
  std::pair<double, double> domain() const;

 private:
  CurvatureProfile() = default;

  Kind kind_ = Kind::Straight;
  double p1_ = 0.0, p2_ = 0.0;
  std::vector<double> eta_;
  ArrayXd tab_q1_, tab_kappa_;
  std::shared_ptr<const EllipseArcMap> arc_map_;  // immutable, safe to share
  std::optional<SignMask> mask_;
  double torsion_ = 0.0;
};

/// Signed curvature kappa(q1) with the sign mask applied.
double evaluate_curvature(const CurvatureProfile& profile, double q1);
ArrayXd evaluate_curvature(const CurvatureProfile& profile, const ArrayXd& q1);

/// kappa, kappa', kappa'' of the unmasked profile (the mask would introduce
/// jump discontinuities while leaving kappa^2 unchanged, so smoothness
/// diagnostics ignore it).  Analytic for closed-form kinds, five-point
/// finite differences otherwise.
struct CurvatureJet {
  double kappa, dkappa, d2kappa;
};
CurvatureJet evaluate_curvature_jet(const CurvatureProfile& profile, double q1);

/// Frenet frame samples; rows are unit vectors.
struct FrameSamples {
  MatrixX3d t, n, b;
};

/// Arc-length-sampled curve.  Planar curves live in the z = 0 plane; a
/// torsion lift produces (x(s), y(s), tau*s) whose 3D arc length is
/// q1 = sqrt(1 + tau^2) * s.
struct SampledCurve {
  MatrixX3d points;
  ArrayXd arc_q1;
  bool is_planar = true;
  double torsion = 0.0;
  std::optional<FrameSamples> frame;

  Index size() const { return points.rows(); }
};

struct IntegrationOptions {
  bool with_frame = true;
};

/// Integrate the curve of a curvature profile over [q_min, q_max] with the
/// given output spacing.
///
/// Planar case (torsion 0): the tangent angle theta(q1) = integral of kappa
/// is accumulated by fourth-order quadrature and the position by composite
/// Simpson, anchored at theta = 0, r = (0, 0) at q1 = 0 when the interval
/// contains it (at q_min otherwise).
///
/// Torsion case: [q_min, q_max] and step are interpreted in the profile
/// parameter s (the planar arc length); the returned points are
/// (x(s), y(s), tau*s) and arc_q1 = sqrt(1 + tau^2) * s.
SampledCurve integrate_frenet_serret(const CurvatureProfile& profile, double q1_min,
                                     double q1_max, double step,
                                     const IntegrationOptions& opts = {});

struct Intersection {
  double q1_a, q1_b;  // arc lengths of the two branches, q1_a < q1_b
  Eigen::Vector3d point;
  bool degenerate = false;  // overlapping collinear segments
};

struct IntersectionOptions {
  /// Crossings closer than this arc-length gap are polyline adjacency
  /// artifacts, not multiple points.  Defaults to 2 * sample spacing.
  double min_arc_gap = -1.0;
  /// 3D curves only intersect when two samples coincide within this radius.
  double coincidence_tol = 1e-8;
};

/// All transverse crossings of non-adjacent polyline segments (planar
/// curves), or coincident far-separated samples (space curves).  An empty
/// result means the waveguide axis is a simple curve.
std::vector<Intersection> detect_self_intersections(const SampledCurve& curve,
                                                    const IntersectionOptions& opts = {});

enum class Verdict { Pass, Warn, Fail };

/// Tight-confinement validity diagnostics: the dimensional reduction to the
/// arc-length Hamiltonian requires kappa*sigma0 << 1, |kappa'|*sigma0 <<
/// |kappa| and |kappa''|*sigma0 << kappa^2.
struct ValidityReport {
  double max_k_sigma = 0.0;       // max |kappa| sigma0, whole domain
  double max_kprime_ratio = 0.0;  // max |kappa'| sigma0 / |kappa|, where |kappa| >= floor
  double max_kpp_ratio = 0.0;     // max |kappa''| sigma0 / kappa^2, where |kappa| >= floor
  std::optional<std::pair<double, double>> evaluated_domain;  // where |kappa| >= floor
  Verdict verdict = Verdict::Warn;
};

struct ValidityOptions {
  double kappa_floor = 1e-6;    // ratios are singular at kappa = 0
  double pass_threshold = 0.3;  // all three maxima below: pass
  double fail_threshold = 1.0;  // any maximum at or above: fail
  Index n_samples = 20001;
};

ValidityReport check_validity(const CurvatureProfile& profile, double sigma0, double q1_min,
                              double q1_max, const ValidityOptions& opts = {});

/// Recover a Tabulated curvature profile from a uniformly sampled curve:
/// signed kappa from r' x r'' for planar curves, |kappa| for space curves.
/// Needs at least 5 samples; the two outermost samples are dropped.
CurvatureProfile reconstruct_curvature(const SampledCurve& curve);

}  // namespace curveguide::geometry
