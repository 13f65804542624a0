#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <vector>

#include "curveguide/fft.hpp"
#include "curveguide/geometry.hpp"
#include "curveguide/grid.hpp"
#include "curveguide/potentials.hpp"

namespace curveguide::dynamics {

enum class Boundary { Periodic, Absorbing };

/// Complex field on a uniform 1D grid.  Periodic grids identify the right
/// edge with the left one; absorbing grids carry a complex absorbing layer
/// on both edges during propagation.
struct WaveState1D {
  UniformGrid grid;
  ArrayXcd psi;
  double t = 0.0;
  Boundary boundary = Boundary::Periodic;

  double norm() const { return psi.abs2().sum() * grid.step; }
};

/// Polynomial complex absorbing layer: W = strength * u^order with u ramping
/// 0 -> 1 over the outer width_fraction of the domain on each side.
struct AbsorberSpec {
  double width_fraction = 0.1;
  double strength = 0.08;
  int order = 3;
};

/// Normalized Gaussian packet; fwhm_density is the full width at half
/// maximum of |psi|^2.
WaveState1D make_gaussian_packet(const UniformGrid& grid, Boundary boundary, double center,
                                 double fwhm_density, double momentum);

/// Strang split-step spectral propagator,
/// exp(-i V dt/2) exp(-i K dt) exp(-i V dt/2), with the interior half-kicks
/// merged between steps.  Norm-preserving on periodic domains; an absorbing
/// layer makes the norm non-increasing.
class Propagator1D {
 public:
  Propagator1D(const UniformGrid& grid, const ArrayXd& v, double dt, Boundary boundary,
               const AbsorberSpec& absorber = {});

  void load(const WaveState1D& state);
  WaveState1D extract() const;
  /// Advance n full steps (one trailing half-kick is applied so the
  /// extracted state is always a proper Strang state).
  void advance(Index n_steps);
  double dt() const { return dt_; }

 private:
  UniformGrid grid_;
  Boundary boundary_;
  double dt_, t_ = 0.0;
  Fft1D fft_;
  ArrayXcd phase_half_v_, phase_kinetic_;
  Index steps_done_ = 0;
};

struct PropagateOptions {
  Index snapshot_stride = 0;  // 0: keep only the initial and final states
  AbsorberSpec absorber{};
  /// Accuracy budget dt*|v|_max < 0.5 and dt*k_max^2/2 < 0.5.
  bool enforce_budget = true;
};

struct Trajectory1D {
  std::vector<WaveState1D> snapshots;  // always includes t = 0 and the final state
};

Trajectory1D propagate_1d(const potentials::PotentialGrid& v, const WaveState1D& psi0, double dt,
                          Index n_steps, const PropagateOptions& opts = {});

/// <psi|H|psi> with H = -(1/2) d^2 + v, kinetic part evaluated spectrally
/// (periodic convention).
double expectation_energy(const WaveState1D& state, const ArrayXd& v);

struct GroundStateResult {
  WaveState1D state;
  double energy = 0.0;
  Index iterations = 0;
  bool converged = false;
};

/// Imaginary-time relaxation with the same splitting; the state is
/// renormalized every step and iteration stops when the energy changes by
/// less than tol per step.
GroundStateResult imaginary_time_ground_state(const potentials::PotentialGrid& v, double dtau,
                                              double tol, Index max_steps = 200000,
                                              const ArrayXcd* seed = nullptr);

/// Density history n(q1, t) of a localized packet released on a closed loop,
/// with the revival fidelity F(t) = |<psi(0)|psi(t)>|^2.  The time step is
/// chosen from the accuracy budget and rounded so frames land exactly.
struct CarpetResult {
  ArrayXd q1, t;
  Eigen::MatrixXd density;  // n_frames x n_grid
  ArrayXd fidelity;
};

CarpetResult talbot_carpet(const potentials::PotentialGrid& loop_v, double packet_center,
                           double packet_fwhm, double t_max, Index n_frames);

/// Fraction of the density beyond q1_cut.
double transmitted_fraction(const WaveState1D& state, double q1_cut);

// ---------------------------------------------------------------------------
// two-dimensional painted waveguides
// ---------------------------------------------------------------------------

struct WaveState2D {
  UniformGrid gx, gy;
  Eigen::MatrixXcd psi;  // ny x nx, column-major
  double t = 0.0;

  double norm() const { return psi.array().abs2().sum() * gx.step * gy.step; }
};

/// Transverse well painted along the waveguide axis, as a function of the
/// distance d to the curve.
struct TransverseProfile {
  enum class Kind { Harmonic, GaussianWell };
  Kind kind = Kind::Harmonic;
  double omega = 1.0;   // Harmonic: (1/2) omega^2 d^2
  double depth = 12.0;  // GaussianWell: -depth exp(-d^2 / (2 width^2))
  double width = 1.0;

  double value(double d) const;
};

/// 2D potential U(x, y) painted around a planar curve: the transverse
/// profile of the distance to the curve, plus an optional arc-length depth
/// modulation (the compensation painting).  Also caches, per grid cell, the
/// arc length of the nearest curve point for density projection.
class WaveguidePotential2D {
 public:
  WaveguidePotential2D(const geometry::SampledCurve& curve, const TransverseProfile& profile,
                       const UniformGrid& gx, const UniformGrid& gy, double capture_radius = 8.0,
                       std::function<double(double)> depth_modulation = {});

  const Eigen::MatrixXd& field() const { return field_; }
  const UniformGrid& gx() const { return gx_; }
  const UniformGrid& gy() const { return gy_; }
  double q1_min() const { return q1_lo_; }
  double q1_max() const { return q1_hi_; }
  /// Cells whose neighborhood is claimed by two well-separated arc pieces
  /// (near self-intersections the projection is ambiguous there).
  Index capture_overlap_cells() const { return overlap_cells_; }

  /// Arc length of the nearest curve point for cell (iy, ix); NaN beyond the
  /// capture radius.
  double q1_at(Index iy, Index ix) const { return q1_cell_(iy, ix); }

 private:
  UniformGrid gx_, gy_;
  Eigen::MatrixXd field_;
  Eigen::MatrixXd q1_cell_;
  double q1_lo_ = 0.0, q1_hi_ = 0.0;
  Index overlap_cells_ = 0;
};

/// |psi|^2 binned over the arc length of the nearest curve sample.
struct ArcDensity {
  ArrayXd q1;  // bin centers
  ArrayXd n;   // integrated density per bin, divided by the bin width
  double captured_fraction = 0.0;

  double fraction_beyond(double q1_cut) const;
};

ArcDensity project_to_arc(const WaveguidePotential2D& u, const WaveState2D& state, double bin_width);

/// Ground state of the transverse profile on an offset grid (distance to the
/// axis), computed from the tridiagonal spectrum of the 1D cut.
ArrayXd transverse_mode(const TransverseProfile& profile, const UniformGrid& offsets);

/// Transverse mode centered on y_center times a longitudinal Gaussian
/// carrier, normalized.
WaveState2D make_guided_packet_2d(const UniformGrid& gx, const UniformGrid& gy,
                                  const ArrayXd& mode_on_gy, double x_center, double fwhm_density,
                                  double momentum);

struct Absorber2DSpec {
  AbsorberSpec x{};
  bool absorb_y = false;
  AbsorberSpec y{};
};

class Propagator2D {
 public:
  Propagator2D(const UniformGrid& gx, const UniformGrid& gy, const Eigen::MatrixXd& potential,
               double dt, const Absorber2DSpec& absorber = {});

  void load(const WaveState2D& state);
  WaveState2D extract() const;
  void advance(Index n_steps);
  /// Imaginary-time stepping (exp(-H dtau) split), renormalizing each step;
  /// returns the latest energy estimate from the decay rate.
  double relax(Index n_steps);

 private:
  UniformGrid gx_, gy_;
  double dt_, t_ = 0.0;
  Fft2D fft_;
  Eigen::MatrixXcd phase_half_v_, phase_kinetic_;
  Eigen::MatrixXd half_v_real_, kin_real_;  // imaginary-time factors
  Index steps_done_ = 0;
};

struct Trajectory2D {
  ArrayXd arc_q1;
  std::vector<double> times;
  std::vector<ArrayXd> arc_density;
  std::vector<double> norms;
  WaveState2D final_state;
};

Trajectory2D propagate_2d(const WaveguidePotential2D& u, const WaveState2D& psi0, double dt,
                          Index n_steps, Index snapshot_stride, double arc_bin_width = 2.0,
                          const Absorber2DSpec& absorber = {});

struct GroundState2DResult {
  WaveState2D state;
  double energy = 0.0;
  Index iterations = 0;
  bool converged = false;
};

GroundState2DResult imaginary_time_ground_state_2d(const WaveguidePotential2D& u, double dtau,
                                                   double tol, Index max_steps = 100000);

}  // namespace curveguide::dynamics
