#include "curveguide/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curveguide::potentials {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kRealizableClip = 1e-12;

double outer_mean(const ArrayXd& v, bool left) {
  const Index n = v.size();
  const Index m = std::max<Index>(1, n / 20);
  return left ? v.head(m).mean() : v.tail(m).mean();
}

// clip tiny negative kappa^2 to zero; anything more negative marks the grid
// non-realizable
bool clip_realizable(ArrayXd& k2) {
  bool ok = true;
  for (Index i = 0; i < k2.size(); ++i) {
    if (k2[i] < 0.0) {
      if (k2[i] >= -kRealizableClip) k2[i] = 0.0;
      else ok = false;
    }
  }
  return ok;
}

}  // namespace

PotentialGrid PotentialGrid::from_values(UniformGrid grid, ArrayXd v, Source source) {
  if (grid.n != v.size()) throw std::invalid_argument("PotentialGrid: grid/value size mismatch");
  PotentialGrid out;
  out.grid = grid;
  out.v = std::move(v);
  out.v_left_asym = outer_mean(out.v, true);
  out.v_right_asym = outer_mean(out.v, false);
  out.source = source;
  return out;
}

PotentialGrid cip_from_profile(const geometry::CurvatureProfile& profile, const UniformGrid& grid) {
  ArrayXd v(grid.n);
  for (Index i = 0; i < grid.n; ++i) {
    const double k = geometry::evaluate_curvature(profile, grid.point(i));
    v[i] = -k * k / 8.0;
  }
  return PotentialGrid::from_values(grid, std::move(v), Source::CipOfProfile);
}

Superpotential Superpotential::tanh_wall(double A, double alpha) {
  if (!(A > 0) || !(alpha > 0)) throw std::invalid_argument("tanh_wall: need A > 0, alpha > 0");
  Superpotential p;
  p.kind_ = Kind::TanhWall;
  p.amp_ = A;
  p.alpha_ = alpha;
  return p;
}

Superpotential Superpotential::from_ground_state(UniformGrid grid, ArrayXd psi0) {
  if (grid.n != psi0.size()) throw std::invalid_argument("from_ground_state: size mismatch");
  for (Index i = 0; i < psi0.size(); ++i)
    if (!(psi0[i] > 0)) throw std::invalid_argument("from_ground_state: psi0 must be positive (nodeless)");
  Superpotential p;
  p.kind_ = Kind::FromGroundState;
  p.grid_ = grid;
  const ArrayXd logpsi = psi0.log();
  ArrayXd phi(grid.n);
  const double h = grid.step;
  for (Index i = 0; i < grid.n; ++i) {
    double dl;
    if (i == 0) dl = (-3 * logpsi[0] + 4 * logpsi[1] - logpsi[2]) / (2 * h);
    else if (i == grid.n - 1) dl = (3 * logpsi[i] - 4 * logpsi[i - 1] + logpsi[i - 2]) / (2 * h);
    else dl = (logpsi[i + 1] - logpsi[i - 1]) / (2 * h);
    phi[i] = -dl / kSqrt2;
  }
  p.phi_ = std::move(phi);
  p.dphi_.resize(grid.n);
  for (Index i = 0; i < grid.n; ++i) {
    if (i == 0) p.dphi_[i] = (-3 * p.phi_[0] + 4 * p.phi_[1] - p.phi_[2]) / (2 * h);
    else if (i == grid.n - 1) p.dphi_[i] = (3 * p.phi_[i] - 4 * p.phi_[i - 1] + p.phi_[i - 2]) / (2 * h);
    else p.dphi_[i] = (p.phi_[i + 1] - p.phi_[i - 1]) / (2 * h);
  }
  return p;
}

Superpotential Superpotential::tabulated(UniformGrid grid, ArrayXd phi) {
  if (grid.n != phi.size()) throw std::invalid_argument("tabulated superpotential: size mismatch");
  Superpotential p;
  p.kind_ = Kind::Tabulated;
  p.grid_ = grid;
  p.phi_ = std::move(phi);
  p.dphi_.resize(grid.n);
  const double h = grid.step;
  for (Index i = 0; i < grid.n; ++i) {
    if (i == 0) p.dphi_[i] = (-3 * p.phi_[0] + 4 * p.phi_[1] - p.phi_[2]) / (2 * h);
    else if (i == grid.n - 1) p.dphi_[i] = (3 * p.phi_[i] - 4 * p.phi_[i - 1] + p.phi_[i - 2]) / (2 * h);
    else p.dphi_[i] = (p.phi_[i + 1] - p.phi_[i - 1]) / (2 * h);
  }
  return p;
}

double Superpotential::interp(const ArrayXd& f, double q1) const {
  const double x = (q1 - grid_.min) / grid_.step;
  if (x <= 0) return f[0];
  if (x >= static_cast<double>(grid_.n - 1)) return f[grid_.n - 1];
  const Index i = static_cast<Index>(x);
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * f[i] + w * f[i + 1];
}

double Superpotential::value(double q1) const {
  if (kind_ == Kind::TanhWall) return amp_ * std::tanh(alpha_ * q1);
  return interp(phi_, q1);
}

double Superpotential::derivative(double q1) const {
  if (kind_ == Kind::TanhWall) {
    const double s = 1.0 / std::cosh(alpha_ * q1);
    return amp_ * alpha_ * s * s;
  }
  return interp(dphi_, q1);
}

ArrayXd Superpotential::values(const ArrayXd& q1) const {
  ArrayXd out(q1.size());
  for (Index i = 0; i < q1.size(); ++i) out[i] = value(q1[i]);
  return out;
}

ArrayXd Superpotential::derivatives(const ArrayXd& q1) const {
  ArrayXd out(q1.size());
  for (Index i = 0; i < q1.size(); ++i) out[i] = derivative(q1[i]);
  return out;
}

SusyPair susy_pair_from_superpotential(const Superpotential& phi, const UniformGrid& grid) {
  const ArrayXd q = grid.points();
  const ArrayXd f = phi.values(q);
  const ArrayXd df = phi.derivatives(q);
  const ArrayXd vm = f.square() - df / kSqrt2;
  const ArrayXd vp = f.square() + df / kSqrt2;

  SusyPair pair;
  pair.v_minus = PotentialGrid::from_values(grid, vm, Source::SusyMinus);
  pair.v_plus = PotentialGrid::from_values(grid, vp, Source::SusyPlus);
  // common asymptotic offset Phi_inf^2 (an irrelevant global energy shift;
  // the curvature relation only holds for potentials that vanish at infinity)
  pair.cip_offset = 0.5 * (f[0] * f[0] + f[grid.n - 1] * f[grid.n - 1]);
  pair.kappa_minus_sq = -8.0 * (vm - pair.cip_offset);
  pair.kappa_plus_sq = -8.0 * (vp - pair.cip_offset);
  pair.realizable_minus = clip_realizable(pair.kappa_minus_sq);
  pair.realizable_plus = clip_realizable(pair.kappa_plus_sq);
  return pair;
}

ArrayXd susy_partner_from_ground_state(const UniformGrid& grid, const ArrayXd& psi0,
                                       const ArrayXd& kappa_minus_sq) {
  if (grid.n != psi0.size() || grid.n != kappa_minus_sq.size())
    throw std::invalid_argument("susy_partner_from_ground_state: grids not aligned");
  for (Index i = 0; i < psi0.size(); ++i)
    if (!(psi0[i] > 0))
      throw std::invalid_argument("susy_partner_from_ground_state: psi0 must be positive");
  const ArrayXd logpsi = psi0.log();
  const double h = grid.step;
  ArrayXd out(grid.n);
  for (Index i = 0; i < grid.n; ++i) {
    double d2;
    if (i == 0) d2 = (2 * logpsi[0] - 5 * logpsi[1] + 4 * logpsi[2] - logpsi[3]) / (h * h);
    else if (i == grid.n - 1) d2 = (2 * logpsi[i] - 5 * logpsi[i - 1] + 4 * logpsi[i - 2] - logpsi[i - 3]) / (h * h);
    else d2 = (logpsi[i + 1] - 2 * logpsi[i] + logpsi[i - 1]) / (h * h);
    out[i] = kappa_minus_sq[i] + 8.0 * d2;
  }
  return out;
}

std::vector<ChainLevel> shape_invariant_chain(const ArrayXd& kappa0_sq,
                                              const std::vector<double>& residuals) {
  for (double r : residuals)
    if (!std::isfinite(r)) throw std::invalid_argument("shape_invariant_chain: residuals must be finite");
  std::vector<ChainLevel> levels;
  levels.reserve(residuals.size());
  double shift = 0.0;
  for (double r : residuals) {
    shift += r;
    ChainLevel lvl;
    lvl.kappa_sq = kappa0_sq - 8.0 * shift;
    lvl.realizable = clip_realizable(lvl.kappa_sq);
    levels.push_back(std::move(lvl));
  }
  return levels;
}

EllipseCip ellipse_cip(double a, double b, Index n) {
  geometry::EllipseArcMap map(a, b);
  EllipseCip out;
  out.a = a;
  out.b = b;
  out.perimeter = map.perimeter();
  out.u.resize(n);
  out.q1.resize(n);
  out.v.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double u = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    const double s = std::sin(u), c = std::cos(u);
    const double P = b * b * c * c + a * a * s * s;
    out.u[i] = u;
    out.q1[i] = map.q1_from_u(u);
    out.v[i] = -a * a * b * b / (8.0 * P * P * P);
  }
  return out;
}

PotentialGrid ellipse_cip_arclength(double a, double b, Index n) {
  geometry::EllipseArcMap map(a, b);
  const UniformGrid grid = UniformGrid::periodic(map.perimeter(), n);
  ArrayXd v(n);
  for (Index i = 0; i < n; ++i) {
    const double u = map.u_from_q1(grid.point(i));
    const double s = std::sin(u), c = std::cos(u);
    const double P = b * b * c * c + a * a * s * s;
    v[i] = -a * a * b * b / (8.0 * P * P * P);
  }
  return PotentialGrid::from_values(grid, std::move(v), Source::CipOfProfile);
}

double ellipse_perimeter(double a, double b) { return geometry::EllipseArcMap(a, b).perimeter(); }

std::pair<double, double> ellipse_semi_axes(double eccentricity, double perimeter) {
  if (!(eccentricity >= 0 && eccentricity < 1))
    throw std::invalid_argument("ellipse_semi_axes: eccentricity must be in [0, 1)");
  if (!(perimeter > 0)) throw std::invalid_argument("ellipse_semi_axes: perimeter must be positive");
  const double ratio = std::sqrt(1.0 - eccentricity * eccentricity);  // b/a
  double lo = perimeter / (2.0 * std::numbers::pi) * 0.5;
  double hi = perimeter;  // perimeter(a, b) >= 4a, so a <= L/4 < hi
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ellipse_perimeter(mid, mid * ratio) < perimeter ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);
  return {a, a * ratio};
}

PotentialGrid compensation_barrier(const PotentialGrid& v_target, const PotentialGrid& v_reference) {
  if (!v_target.grid.same_layout(v_reference.grid))
    throw std::invalid_argument("compensation_barrier: grids not aligned");
  return PotentialGrid::from_values(v_target.grid, v_reference.v - v_target.v, Source::Compensation);
}

}  // namespace curveguide::potentials
