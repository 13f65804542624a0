#include "curveguide/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_map>

#include "curveguide/scattering.hpp"

namespace curveguide::dynamics {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

ArrayXd absorber_profile(const UniformGrid& grid, const AbsorberSpec& spec) {
  ArrayXd w = ArrayXd::Zero(grid.n);
  const double span = grid.step * static_cast<double>(grid.n);
  const double width = spec.width_fraction * span;
  if (width <= 0) return w;
  const double lo = grid.min + width;
  const double hi = grid.min + span - width;
  for (Index i = 0; i < grid.n; ++i) {
    const double x = grid.point(i);
    double u = 0.0;
    if (x < lo) u = (lo - x) / width;
    else if (x > hi) u = (x - hi) / width;
    if (u > 0) w[i] = spec.strength * std::pow(u, spec.order);
  }
  return w;
}

}  // namespace

WaveState1D make_gaussian_packet(const UniformGrid& grid, Boundary boundary, double center,
                                 double fwhm_density, double momentum) {
  if (!(fwhm_density > 0)) throw std::invalid_argument("make_gaussian_packet: fwhm must be positive");
  const double sigma_n = fwhm_density / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  WaveState1D s;
  s.grid = grid;
  s.boundary = boundary;
  s.psi.resize(grid.n);
  for (Index i = 0; i < grid.n; ++i) {
    const double x = grid.point(i) - center;
    s.psi[i] = std::exp(complex<double>(-x * x / (4.0 * sigma_n * sigma_n), momentum * grid.point(i)));
  }
  s.psi /= std::sqrt(s.norm());
  return s;
}

Propagator1D::Propagator1D(const UniformGrid& grid, const ArrayXd& v, double dt, Boundary boundary,
                           const AbsorberSpec& absorber)
    : grid_(grid), boundary_(boundary), dt_(dt), fft_(grid.n) {
  if (v.size() != grid.n) throw std::invalid_argument("Propagator1D: potential/grid size mismatch");
  ArrayXd w = (boundary == Boundary::Absorbing) ? absorber_profile(grid, absorber)
                                                : ArrayXd::Zero(grid.n);
  phase_half_v_ = ((-0.5 * dt) * (kI * v + w)).exp();
  const ArrayXd k = fft_wavenumbers(grid.n, grid.step);
  phase_kinetic_ = ((-0.5 * dt) * kI * k.square()).exp();
}

void Propagator1D::load(const WaveState1D& state) {
  if (state.psi.size() != grid_.n) throw std::invalid_argument("Propagator1D: state size mismatch");
  fft_.data() = state.psi;
  t_ = state.t;
  steps_done_ = 0;
}

WaveState1D Propagator1D::extract() const {
  WaveState1D s;
  s.grid = grid_;
  s.boundary = boundary_;
  s.psi = fft_.view();
  s.t = t_ + dt_ * static_cast<double>(steps_done_);
  return s;
}

void Propagator1D::advance(Index n_steps) {
  if (n_steps <= 0) return;
  auto psi = fft_.data();
  psi *= phase_half_v_;
  for (Index s = 0; s < n_steps; ++s) {
    fft_.forward();
    fft_.data() *= phase_kinetic_;
    fft_.inverse();
    if (s + 1 < n_steps) fft_.data() *= phase_half_v_ * phase_half_v_;
  }
  fft_.data() *= phase_half_v_;
  steps_done_ += n_steps;
}

Trajectory1D propagate_1d(const potentials::PotentialGrid& v, const WaveState1D& psi0, double dt,
                          Index n_steps, const PropagateOptions& opts) {
  if (!(dt > 0) || n_steps < 0) throw std::invalid_argument("propagate_1d: bad dt or step count");
  if (std::abs(psi0.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("propagate_1d: initial state must be normalized");
  if (opts.enforce_budget) {
    const double vmax = v.v.abs().maxCoeff();
    const double kmax = std::numbers::pi / v.grid.step;
    if (dt * vmax >= 0.5 || dt * 0.5 * kmax * kmax >= 0.5)
      throw std::invalid_argument("propagate_1d: dt violates the accuracy budget");
  }

  Propagator1D prop(v.grid, v.v, dt, psi0.boundary, opts.absorber);
  prop.load(psi0);

  Trajectory1D traj;
  traj.snapshots.push_back(psi0);
  Index done = 0;
  const Index stride = opts.snapshot_stride > 0 ? opts.snapshot_stride : n_steps;
  while (done < n_steps) {
    const Index chunk = std::min(stride, n_steps - done);
    prop.advance(chunk);
    done += chunk;
    WaveState1D s = prop.extract();
    if (!s.psi.allFinite())
      throw NumericalError("propagate_1d: NaN detected at step " + std::to_string(done));
    traj.snapshots.push_back(std::move(s));
  }
  return traj;
}

double expectation_energy(const WaveState1D& state, const ArrayXd& v) {
  Fft1D fft(state.grid.n);
  fft.data() = state.psi;
  fft.forward();
  const ArrayXd k = fft_wavenumbers(state.grid.n, state.grid.step);
  const ArrayXd spec = fft.data().abs2();
  const double kin = (0.5 * k.square() * spec).sum() / spec.sum();
  const ArrayXd dens = state.psi.abs2();
  const double pot = (v * dens).sum() / dens.sum();
  return kin + pot;
}

GroundStateResult imaginary_time_ground_state(const potentials::PotentialGrid& v, double dtau,
                                              double tol, Index max_steps, const ArrayXcd* seed) {
  if (!(dtau > 0) || !(tol > 0)) throw std::invalid_argument("imaginary_time: need dtau, tol > 0");
  const Index n = v.grid.n;
  Fft1D fft(n);
  if (seed) {
    if (seed->size() != n) throw std::invalid_argument("imaginary_time: seed size mismatch");
    fft.data() = *seed;
  } else {
    // uniform seed plus a slow ripple; overlaps any nodeless ground state
    for (Index i = 0; i < n; ++i)
      fft.data()[i] = 1.0 + 0.1 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                           static_cast<double>(n));
  }
  const ArrayXd k = fft_wavenumbers(n, v.grid.step);
  const ArrayXd half_v = (-0.5 * dtau * v.v).exp();
  const ArrayXd kin = (-0.5 * dtau * k.square()).exp();

  auto renorm = [&]() {
    const double nn = std::sqrt(fft.data().abs2().sum() * v.grid.step);
    fft.data() /= nn;
    return nn;
  };
  renorm();

  GroundStateResult res;
  double e_prev = std::numeric_limits<double>::infinity();
  for (Index it = 0; it < max_steps; ++it) {
    fft.data() *= half_v;
    fft.forward();
    fft.data() *= kin;
    fft.inverse();
    fft.data() *= half_v;
    const double decay = renorm();
    const double e_now = -std::log(decay) / dtau;
    res.iterations = it + 1;
    if (std::abs(e_now - e_prev) < tol) {
      res.converged = true;
      break;
    }
    e_prev = e_now;
  }
  if (!res.converged)
    throw NumericalError("imaginary_time_ground_state: no convergence within the step budget");
  res.state.grid = v.grid;
  res.state.boundary = Boundary::Periodic;
  res.state.psi = fft.data();
  res.state.t = 0.0;
  res.energy = expectation_energy(res.state, v.v);
  return res;
}

CarpetResult talbot_carpet(const potentials::PotentialGrid& loop_v, double packet_center,
                           double packet_fwhm, double t_max, Index n_frames) {
  if (n_frames < 2) throw std::invalid_argument("talbot_carpet: need at least two frames");
  const UniformGrid& g = loop_v.grid;
  const double kmax = std::numbers::pi / g.step;
  const double budget = 0.5 / std::max({0.5 * kmax * kmax, loop_v.v.abs().maxCoeff(), 1e-12});
  const double frame_dt = t_max / static_cast<double>(n_frames - 1);
  const Index per_frame = std::max<Index>(1, static_cast<Index>(std::ceil(frame_dt / budget)));
  const double dt = frame_dt / static_cast<double>(per_frame);

  WaveState1D psi0 = make_gaussian_packet(g, Boundary::Periodic, packet_center, packet_fwhm, 0.0);
  Propagator1D prop(g, loop_v.v, dt, Boundary::Periodic);
  prop.load(psi0);

  CarpetResult out;
  out.q1 = g.points();
  out.t.resize(n_frames);
  out.density.resize(n_frames, g.n);
  out.fidelity.resize(n_frames);
  for (Index f = 0; f < n_frames; ++f) {
    if (f > 0) prop.advance(per_frame);
    const WaveState1D s = prop.extract();
    if (!s.psi.allFinite())
      throw NumericalError("talbot_carpet: NaN detected at frame " + std::to_string(f));
    out.t[f] = frame_dt * static_cast<double>(f);
    out.density.row(f) = s.psi.abs2().matrix().transpose();
    const complex<double> ov = (psi0.psi.conjugate() * s.psi).sum() * g.step;
    out.fidelity[f] = std::norm(ov);
  }
  return out;
}

double transmitted_fraction(const WaveState1D& state, double q1_cut) {
  if (q1_cut < state.grid.min || q1_cut > state.grid.max())
    throw std::invalid_argument("transmitted_fraction: cut outside the domain");
  double beyond = 0.0, total = 0.0;
  for (Index i = 0; i < state.grid.n; ++i) {
    const double d = std::norm(state.psi[i]);
    total += d;
    if (state.grid.point(i) > q1_cut) beyond += d;
  }
  return total > 0 ? beyond / total : 0.0;
}

// ---------------------------------------------------------------------------
// 2D
// ---------------------------------------------------------------------------

double TransverseProfile::value(double d) const {
  if (kind == Kind::Harmonic) return 0.5 * omega * omega * d * d;
  return -depth * std::exp(-d * d / (2.0 * width * width));
}

namespace {

uint64_t bucket_key(long long cx, long long cy) {
  return (static_cast<uint64_t>(cx + (1ll << 31)) << 32) ^ static_cast<uint64_t>(cy + (1ll << 31));
}

}  // namespace

WaveguidePotential2D::WaveguidePotential2D(const geometry::SampledCurve& curve,
                                           const TransverseProfile& profile, const UniformGrid& gx,
                                           const UniformGrid& gy, double capture_radius,
                                           std::function<double(double)> depth_modulation)
    : gx_(gx), gy_(gy) {
  if (!curve.is_planar)
    throw std::invalid_argument("WaveguidePotential2D: painting requires a planar curve");
  const Index nc = curve.size();
  if (nc < 3) throw std::invalid_argument("WaveguidePotential2D: curve too short");
  if (!(capture_radius > 0)) throw std::invalid_argument("WaveguidePotential2D: capture radius > 0");

  q1_lo_ = curve.arc_q1[0];
  q1_hi_ = curve.arc_q1[nc - 1];

  // resample the axis polyline near half the grid spacing
  const double curve_h = (q1_hi_ - q1_lo_) / static_cast<double>(nc - 1);
  const double target = 0.5 * std::min(gx.step, gy.step);
  const Index stride = std::max<Index>(1, static_cast<Index>(std::floor(target / curve_h)));
  std::vector<double> px, py, pq;
  for (Index i = 0; i < nc; i += stride) {
    px.push_back(curve.points(i, 0));
    py.push_back(curve.points(i, 1));
    pq.push_back(curve.arc_q1[i]);
  }
  if (pq.back() != q1_hi_) {
    px.push_back(curve.points(nc - 1, 0));
    py.push_back(curve.points(nc - 1, 1));
    pq.push_back(q1_hi_);
  }
  const Index m = static_cast<Index>(px.size());

  const double cs = capture_radius;
  std::unordered_map<uint64_t, std::vector<Index>> buckets;
  for (Index i = 0; i < m; ++i) {
    const long long cx = static_cast<long long>(std::floor(px[static_cast<size_t>(i)] / cs));
    const long long cy = static_cast<long long>(std::floor(py[static_cast<size_t>(i)] / cs));
    buckets[bucket_key(cx, cy)].push_back(i);
  }

  const double branch_gap = 6.0 * capture_radius;
  field_.resize(gy.n, gx.n);
  q1_cell_.resize(gy.n, gx.n);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (Index ix = 0; ix < gx.n; ++ix) {
    const double x = gx.point(ix);
    const long long cx = static_cast<long long>(std::floor(x / cs));
    for (Index iy = 0; iy < gy.n; ++iy) {
      const double y = gy.point(iy);
      const long long cy = static_cast<long long>(std::floor(y / cs));

      Index best = -1;
      double best_d2 = capture_radius * capture_radius;
      for (long long ox = -1; ox <= 1; ++ox)
        for (long long oy = -1; oy <= 1; ++oy) {
          auto it = buckets.find(bucket_key(cx + ox, cy + oy));
          if (it == buckets.end()) continue;
          for (Index j : it->second) {
            const double dx = px[static_cast<size_t>(j)] - x, dy = py[static_cast<size_t>(j)] - y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
              best_d2 = d2;
              best = j;
            }
          }
        }

      if (best < 0) {
        field_(iy, ix) = profile.value(capture_radius);
        q1_cell_(iy, ix) = nan;
        continue;
      }

      // second pass: another branch (far in arc length) also within capture?
      const double q_best = pq[static_cast<size_t>(best)];
      bool overlap = false;
      for (long long ox = -1; ox <= 1 && !overlap; ++ox)
        for (long long oy = -1; oy <= 1 && !overlap; ++oy) {
          auto it = buckets.find(bucket_key(cx + ox, cy + oy));
          if (it == buckets.end()) continue;
          for (Index j : it->second) {
            if (std::abs(pq[static_cast<size_t>(j)] - q_best) <= branch_gap) continue;
            const double dx = px[static_cast<size_t>(j)] - x, dy = py[static_cast<size_t>(j)] - y;
            if (dx * dx + dy * dy <= capture_radius * capture_radius) {
              overlap = true;
              break;
            }
          }
        }
      if (overlap) ++overlap_cells_;

      // exact projection onto the two segments adjacent to the best sample
      double d2 = best_d2;
      double q1 = q_best;
      for (Index seg = std::max<Index>(0, best - 1); seg <= std::min<Index>(m - 2, best); ++seg) {
        const double ax = px[static_cast<size_t>(seg)], ay = py[static_cast<size_t>(seg)];
        const double bxv = px[static_cast<size_t>(seg + 1)], byv = py[static_cast<size_t>(seg + 1)];
        const double ex = bxv - ax, ey = byv - ay;
        const double len2 = ex * ex + ey * ey;
        if (len2 <= 0) continue;
        double tproj = ((x - ax) * ex + (y - ay) * ey) / len2;
        tproj = std::clamp(tproj, 0.0, 1.0);
        const double qx = ax + tproj * ex - x, qy = ay + tproj * ey - y;
        const double dd = qx * qx + qy * qy;
        if (dd < d2) {
          d2 = dd;
          q1 = pq[static_cast<size_t>(seg)] +
               tproj * (pq[static_cast<size_t>(seg + 1)] - pq[static_cast<size_t>(seg)]);
        }
      }

      const double d = std::sqrt(d2);
      double u = profile.value(std::min(d, capture_radius));
      if (depth_modulation) u += depth_modulation(q1);
      field_(iy, ix) = u;
      q1_cell_(iy, ix) = q1;
    }
  }
}

double ArcDensity::fraction_beyond(double q1_cut) const {
  double beyond = 0.0, total = 0.0;
  for (Index i = 0; i < q1.size(); ++i) {
    total += n[i];
    if (q1[i] > q1_cut) beyond += n[i];
  }
  return total > 0 ? beyond / total : 0.0;
}

ArcDensity project_to_arc(const WaveguidePotential2D& u, const WaveState2D& state, double bin_width) {
  if (!(bin_width > 0)) throw std::invalid_argument("project_to_arc: bin width must be positive");
  const double lo = u.q1_min();
  const Index nb = std::max<Index>(1, static_cast<Index>(std::ceil((u.q1_max() - lo) / bin_width)));
  ArcDensity out;
  out.q1.resize(nb);
  for (Index j = 0; j < nb; ++j) out.q1[j] = lo + (static_cast<double>(j) + 0.5) * bin_width;
  out.n = ArrayXd::Zero(nb);

  const double cell = state.gx.step * state.gy.step;
  double captured = 0.0, total = 0.0;
  for (Index ix = 0; ix < state.gx.n; ++ix)
    for (Index iy = 0; iy < state.gy.n; ++iy) {
      const double w = std::norm(state.psi(iy, ix)) * cell;
      total += w;
      const double q1 = u.q1_at(iy, ix);
      if (std::isnan(q1)) continue;
      Index j = static_cast<Index>((q1 - lo) / bin_width);
      j = std::clamp<Index>(j, 0, nb - 1);
      out.n[j] += w;
      captured += w;
    }
  out.n /= bin_width;
  out.captured_fraction = total > 0 ? captured / total : 0.0;
  return out;
}

ArrayXd transverse_mode(const TransverseProfile& profile, const UniformGrid& offsets) {
  // solve on an internally refined grid, then interpolate back
  const Index nf = std::max<Index>(2 * offsets.n + 1, 513);
  const UniformGrid fine = UniformGrid::over_span(offsets.min, offsets.max(), nf | 1);
  ArrayXd vf(fine.n);
  for (Index i = 0; i < fine.n; ++i) vf[i] = profile.value(std::abs(fine.point(i)));
  auto spectrum = scattering::bound_states(
      potentials::PotentialGrid::from_values(fine, vf, potentials::Source::External));
  if (spectrum.count() == 0) throw NumericalError("transverse_mode: profile has no bound state");
  ArrayXd mode(offsets.n);
  for (Index i = 0; i < offsets.n; ++i) {
    const double xi = (offsets.point(i) - fine.min) / fine.step;
    const Index j = std::clamp<Index>(static_cast<Index>(xi), 0, fine.n - 2);
    const double w = xi - static_cast<double>(j);
    mode[i] = (1.0 - w) * spectrum.wavefunctions(j, 0) + w * spectrum.wavefunctions(j + 1, 0);
  }
  mode /= std::sqrt(mode.square().sum() * offsets.step);
  return mode;
}

WaveState2D make_guided_packet_2d(const UniformGrid& gx, const UniformGrid& gy,
                                  const ArrayXd& mode_on_gy, double x_center, double fwhm_density,
                                  double momentum) {
  if (mode_on_gy.size() != gy.n)
    throw std::invalid_argument("make_guided_packet_2d: transverse mode size mismatch");
  const double sigma_n = fwhm_density / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  WaveState2D s;
  s.gx = gx;
  s.gy = gy;
  s.psi.resize(gy.n, gx.n);
  for (Index ix = 0; ix < gx.n; ++ix) {
    const double x = gx.point(ix);
    const double xr = x - x_center;
    const complex<double> g =
        std::exp(complex<double>(-xr * xr / (4.0 * sigma_n * sigma_n), momentum * x));
    for (Index iy = 0; iy < gy.n; ++iy) s.psi(iy, ix) = g * mode_on_gy[iy];
  }
  s.psi /= std::sqrt(s.norm());
  return s;
}

Propagator2D::Propagator2D(const UniformGrid& gx, const UniformGrid& gy,
                           const Eigen::MatrixXd& potential, double dt,
                           const Absorber2DSpec& absorber)
    : gx_(gx), gy_(gy), dt_(dt), fft_(gy.n, gx.n) {
  if (potential.rows() != gy.n || potential.cols() != gx.n)
    throw std::invalid_argument("Propagator2D: potential shape mismatch");

  ArrayXd wx = absorber_profile(gx, absorber.x);
  ArrayXd wy = absorber.absorb_y ? absorber_profile(gy, absorber.y) : ArrayXd::Zero(gy.n);

  phase_half_v_.resize(gy.n, gx.n);
  half_v_real_.resize(gy.n, gx.n);
  for (Index ix = 0; ix < gx.n; ++ix)
    for (Index iy = 0; iy < gy.n; ++iy) {
      const double v = potential(iy, ix);
      const double w = wx[ix] + wy[iy];
      phase_half_v_(iy, ix) = std::exp(complex<double>(-0.5 * dt * w, -0.5 * dt * v));
      half_v_real_(iy, ix) = std::exp(-0.5 * dt * v);
    }

  const ArrayXd kx = fft_wavenumbers(gx.n, gx.step);
  const ArrayXd ky = fft_wavenumbers(gy.n, gy.step);
  phase_kinetic_.resize(gy.n, gx.n);
  kin_real_.resize(gy.n, gx.n);
  for (Index ix = 0; ix < gx.n; ++ix)
    for (Index iy = 0; iy < gy.n; ++iy) {
      const double k2 = 0.5 * (kx[ix] * kx[ix] + ky[iy] * ky[iy]);
      phase_kinetic_(iy, ix) = std::exp(complex<double>(0.0, -dt * k2));
      kin_real_(iy, ix) = std::exp(-dt * k2);
    }
}

void Propagator2D::load(const WaveState2D& state) {
  if (state.psi.rows() != gy_.n || state.psi.cols() != gx_.n)
    throw std::invalid_argument("Propagator2D: state shape mismatch");
  fft_.data() = state.psi;
  t_ = state.t;
  steps_done_ = 0;
}

WaveState2D Propagator2D::extract() const {
  WaveState2D s;
  s.gx = gx_;
  s.gy = gy_;
  s.psi = fft_.view();
  s.t = t_ + dt_ * static_cast<double>(steps_done_);
  return s;
}

void Propagator2D::advance(Index n_steps) {
  if (n_steps <= 0) return;
  fft_.data().array() *= phase_half_v_.array();
  for (Index s = 0; s < n_steps; ++s) {
    fft_.forward();
    fft_.data().array() *= phase_kinetic_.array();
    fft_.inverse();
    if (s + 1 < n_steps)
      fft_.data().array() *= phase_half_v_.array() * phase_half_v_.array();
  }
  fft_.data().array() *= phase_half_v_.array();
  steps_done_ += n_steps;
}

double Propagator2D::relax(Index n_steps) {
  const double cell = gx_.step * gy_.step;
  double energy = 0.0;
  for (Index s = 0; s < n_steps; ++s) {
    const double n0 = fft_.data().array().abs2().sum() * cell;
    fft_.data().array() *= half_v_real_.array();
    fft_.forward();
    fft_.data().array() *= kin_real_.array();
    fft_.inverse();
    fft_.data().array() *= half_v_real_.array();
    const double n1 = fft_.data().array().abs2().sum() * cell;
    fft_.data() /= std::sqrt(n1 / n0);
    energy = -0.5 * std::log(n1 / n0) / dt_;
  }
  steps_done_ += n_steps;
  return energy;
}

Trajectory2D propagate_2d(const WaveguidePotential2D& u, const WaveState2D& psi0, double dt,
                          Index n_steps, Index snapshot_stride, double arc_bin_width,
                          const Absorber2DSpec& absorber) {
  if (std::abs(psi0.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("propagate_2d: initial state must be normalized");
  Propagator2D prop(u.gx(), u.gy(), u.field(), dt, absorber);
  prop.load(psi0);

  Trajectory2D traj;
  {
    const ArcDensity d0 = project_to_arc(u, psi0, arc_bin_width);
    traj.arc_q1 = d0.q1;
    traj.times.push_back(psi0.t);
    traj.arc_density.push_back(d0.n);
    traj.norms.push_back(psi0.norm());
  }
  Index done = 0;
  const Index stride = snapshot_stride > 0 ? snapshot_stride : n_steps;
  while (done < n_steps) {
    const Index chunk = std::min(stride, n_steps - done);
    prop.advance(chunk);
    done += chunk;
    WaveState2D s = prop.extract();
    if (!s.psi.allFinite())
      throw NumericalError("propagate_2d: NaN detected at step " + std::to_string(done));
    const ArcDensity d = project_to_arc(u, s, arc_bin_width);
    traj.times.push_back(s.t);
    traj.arc_density.push_back(d.n);
    traj.norms.push_back(s.norm());
    if (done >= n_steps) traj.final_state = std::move(s);
  }
  return traj;
}

GroundState2DResult imaginary_time_ground_state_2d(const WaveguidePotential2D& u, double dtau,
                                                   double tol, Index max_steps) {
  Propagator2D prop(u.gx(), u.gy(), u.field(), dtau, {});
  WaveState2D seed;
  seed.gx = u.gx();
  seed.gy = u.gy();
  seed.psi = Eigen::MatrixXcd::Ones(u.gy().n, u.gx().n);
  seed.psi /= std::sqrt(seed.norm());
  prop.load(seed);

  GroundState2DResult res;
  double e_prev = std::numeric_limits<double>::infinity();
  const Index chunk = 20;
  for (Index it = 0; it < max_steps; it += chunk) {
    const double e_now = prop.relax(chunk);
    res.iterations = it + chunk;
    if (std::abs(e_now - e_prev) < tol * static_cast<double>(chunk)) {
      res.energy = e_now;
      res.converged = true;
      break;
    }
    e_prev = e_now;
  }
  if (!res.converged)
    throw NumericalError("imaginary_time_ground_state_2d: no convergence within the step budget");
  res.state = prop.extract();
  res.state.t = 0.0;
  return res;
}

}  // namespace curveguide::dynamics
