#include "curveguide/geometry.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

#include "curveguide/sukumar.hpp"

namespace curveguide::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGlWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};

double ellipse_speed(double a, double b, double u) {
  const double s = std::sin(u), c = std::cos(u);
  return std::sqrt(a * a * s * s + b * b * c * c);
}

double gl5(double a_coef, double b_coef, double lo, double hi) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += kGlWeight[i] * ellipse_speed(a_coef, b_coef, mid + half * kGlNode[i]);
  return acc * half;
}

}  // namespace

EllipseArcMap::EllipseArcMap(double a, double b) : a_(a), b_(b) {
  if (!(a >= b && b > 0)) throw std::invalid_argument("ellipse: need a >= b > 0");
  const Index m = 4096;
  u_.resize(m + 1);
  q1_.resize(m + 1);
  const double du = 2.0 * kPi / static_cast<double>(m);
  u_[0] = 0.0;
  q1_[0] = 0.0;
  for (Index i = 1; i <= m; ++i) {
    u_[i] = du * static_cast<double>(i);
    q1_[i] = q1_[i - 1] + gl5(a_, b_, u_[i - 1], u_[i]);
  }
  perimeter_ = q1_[m];
}

double EllipseArcMap::speed(double u) const { return ellipse_speed(a_, b_, u); }

double EllipseArcMap::q1_from_u(double u) const {
  const Index m = u_.size() - 1;
  const double du = 2.0 * kPi / static_cast<double>(m);
  double wraps = std::floor(u / (2.0 * kPi));
  double uu = u - wraps * 2.0 * kPi;
  Index i = std::min<Index>(m - 1, static_cast<Index>(uu / du));
  return wraps * perimeter_ + q1_[i] + gl5(a_, b_, u_[i], uu);
}

double EllipseArcMap::u_from_q1(double q1) const {
  const double wraps = std::floor(q1 / perimeter_);
  const double qq = q1 - wraps * perimeter_;
  // bracket in the table, then Newton with bisection safeguard
  const Index m = u_.size() - 1;
  Index lo = 0, hi = m;
  while (hi - lo > 1) {
    const Index mid = (lo + hi) / 2;
    (q1_[mid] <= qq ? lo : hi) = mid;
  }
  double ul = u_[lo], uh = u_[hi];
  double u = 0.5 * (ul + uh);
  for (int it = 0; it < 60; ++it) {
    const double f = q1_[lo] + gl5(a_, b_, u_[lo], u) - qq;
    if (std::abs(f) < 1e-13 * perimeter_) break;
    (f < 0 ? ul : uh) = u;
    const double step = f / ellipse_speed(a_, b_, u);
    double next = u - step;
    if (!(next > ul && next < uh)) next = 0.5 * (ul + uh);
    u = next;
  }
  return u + wraps * 2.0 * kPi;
}

CurvatureProfile CurvatureProfile::straight() { return CurvatureProfile{}; }

CurvatureProfile CurvatureProfile::circle(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("circle: radius must be positive");
  CurvatureProfile p;
  p.kind_ = Kind::Circle;
  p.p1_ = radius;
  return p;
}

CurvatureProfile CurvatureProfile::poschl_teller(double nu, double alpha) {
  if (!(nu > 0) || !(alpha > 0)) throw std::invalid_argument("poschl_teller: need nu > 0, alpha > 0");
  CurvatureProfile p;
  p.kind_ = Kind::PoschlTeller;
  p.p1_ = nu;
  p.p2_ = alpha;
  return p;
}

CurvatureProfile CurvatureProfile::sukumar(std::vector<double> eta) {
  potentials::validate_sukumar_eta(eta);
  CurvatureProfile p;
  p.kind_ = Kind::Sukumar;
  p.eta_ = std::move(eta);
  return p;
}

CurvatureProfile CurvatureProfile::ellipse(double a, double b) {
  CurvatureProfile p;
  p.kind_ = Kind::Ellipse;
  p.arc_map_ = std::make_shared<const EllipseArcMap>(a, b);
  p.p1_ = a;
  p.p2_ = b;
  return p;
}

CurvatureProfile CurvatureProfile::tabulated(ArrayXd q1, ArrayXd kappa) {
  if (q1.size() != kappa.size() || q1.size() < 2)
    throw std::invalid_argument("tabulated: need matching sample arrays with >= 2 points");
  for (Index i = 1; i < q1.size(); ++i)
    if (!(q1[i] > q1[i - 1])) throw std::invalid_argument("tabulated: q1 grid must be strictly increasing");
  CurvatureProfile p;
  p.kind_ = Kind::Tabulated;
  p.tab_q1_ = std::move(q1);
  p.tab_kappa_ = std::move(kappa);
  return p;
}

CurvatureProfile CurvatureProfile::with_sign_mask(SignMask mask) const {
  for (size_t i = 1; i < mask.changes.size(); ++i)
    if (!(mask.changes[i] > mask.changes[i - 1]))
      throw std::invalid_argument("sign mask: abscissas must be strictly increasing");
  CurvatureProfile p = *this;
  p.mask_ = std::move(mask);
  return p;
}

CurvatureProfile CurvatureProfile::with_torsion(double tau) const {
  if (!(tau >= 0)) throw std::invalid_argument("torsion must be non-negative");
  CurvatureProfile p = *this;
  p.torsion_ = tau;
  return p;
}

std::pair<double, double> CurvatureProfile::domain() const {
  if (kind_ == Kind::Tabulated) return {tab_q1_[0], tab_q1_[tab_q1_.size() - 1]};
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf};
}

namespace {

double evaluate_unmasked(const CurvatureProfile& p, double q1) {
  using Kind = CurvatureProfile::Kind;
  switch (p.kind()) {
    case Kind::Straight:
      return 0.0;
    case Kind::Circle:
      return 1.0 / p.circle_radius();
    case Kind::PoschlTeller: {
      const double nu = p.pt_nu(), alpha = p.pt_alpha();
      return 2.0 * alpha * std::sqrt(nu * (nu + 1.0)) / std::cosh(alpha * q1);
    }
    case Kind::Sukumar: {
      const double k2 = potentials::sukumar_curvature_squared(p.sukumar_eta(), q1);
      if (k2 < -1e-9)
        throw NumericalError("sukumar curvature: negative kappa^2 (non-realizable point)");
      return std::sqrt(std::max(0.0, k2));
    }
    case Kind::Ellipse: {
      const auto& map = p.ellipse_arc_map();
      const double u = map.u_from_q1(q1);
      const double s = std::sin(u), c = std::cos(u);
      const double a = map.a(), b = map.b();
      const double P = b * b * c * c + a * a * s * s;
      return a * b / (P * std::sqrt(P));
    }
    case Kind::Tabulated: {
      const auto& q = p.tabulated_q1();
      const auto& k = p.tabulated_kappa();
      if (q1 < q[0] || q1 > q[q.size() - 1])
        throw std::domain_error("tabulated curvature: q1 outside the tabulated domain");
      const double* beg = q.data();
      Index i = std::upper_bound(beg, beg + q.size(), q1) - beg;
      i = std::clamp<Index>(i, 1, q.size() - 1);
      const double w = (q1 - q[i - 1]) / (q[i] - q[i - 1]);
      return (1.0 - w) * k[i - 1] + w * k[i];
    }
  }
  return 0.0;
}

}  // namespace

double evaluate_curvature(const CurvatureProfile& profile, double q1) {
  double k = evaluate_unmasked(profile, q1);
  if (profile.sign_mask()) k *= profile.sign_mask()->sign_at(q1);
  return k;
}

ArrayXd evaluate_curvature(const CurvatureProfile& profile, const ArrayXd& q1) {
  ArrayXd out(q1.size());
  for (Index i = 0; i < q1.size(); ++i) out[i] = evaluate_curvature(profile, q1[i]);
  return out;
}

CurvatureJet evaluate_curvature_jet(const CurvatureProfile& profile, double q1) {
  using Kind = CurvatureProfile::Kind;
  switch (profile.kind()) {
    case Kind::Straight:
      return {0.0, 0.0, 0.0};
    case Kind::Circle:
      return {1.0 / profile.circle_radius(), 0.0, 0.0};
    case Kind::PoschlTeller: {
      const double nu = profile.pt_nu(), al = profile.pt_alpha();
      const double K = 2.0 * al * std::sqrt(nu * (nu + 1.0));
      const double t = std::tanh(al * q1), s = 1.0 / std::cosh(al * q1);
      return {K * s, -K * al * s * t, K * al * al * s * (t * t - s * s)};
    }
    case Kind::Ellipse: {
      const auto& map = profile.ellipse_arc_map();
      const double a = map.a(), b = map.b();
      const double u = map.u_from_q1(q1);
      const double s = std::sin(u), c = std::cos(u);
      const double P = b * b * c * c + a * a * s * s;
      const double Pu = (a * a - b * b) * std::sin(2.0 * u);
      const double Puu = 2.0 * (a * a - b * b) * std::cos(2.0 * u);
      const double k = a * b * std::pow(P, -1.5);
      const double ku = -1.5 * a * b * std::pow(P, -2.5) * Pu;
      const double kuu = a * b * (3.75 * std::pow(P, -3.5) * Pu * Pu - 1.5 * std::pow(P, -2.5) * Puu);
      const double g = std::sqrt(P);
      const double gu = Pu / (2.0 * g);
      return {k, ku / g, kuu / (g * g) - ku * gu / (g * g * g)};
    }
    default: {
      // five-point stencils on the unmasked profile
      double h = 1e-3;
      if (profile.kind() == Kind::Sukumar) h = 1e-3 / std::max(1.0, profile.sukumar_eta().back());
      if (profile.kind() == Kind::Tabulated) {
        const auto& q = profile.tabulated_q1();
        h = (q[q.size() - 1] - q[0]) / static_cast<double>(q.size() - 1);
        // stay inside the table
        const double lo = q[0], hi = q[q.size() - 1];
        q1 = std::clamp(q1, lo + 2 * h, hi - 2 * h);
      }
      const double fm2 = evaluate_unmasked(profile, q1 - 2 * h);
      const double fm1 = evaluate_unmasked(profile, q1 - h);
      const double f0 = evaluate_unmasked(profile, q1);
      const double fp1 = evaluate_unmasked(profile, q1 + h);
      const double fp2 = evaluate_unmasked(profile, q1 + 2 * h);
      const double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
      const double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
      return {f0, d1, d2};
    }
  }
}

SampledCurve integrate_frenet_serret(const CurvatureProfile& profile, double q1_min, double q1_max,
                                     double step, const IntegrationOptions& opts) {
  if (!(step > 0)) throw std::invalid_argument("integrate_frenet_serret: step must be positive");
  if (!(q1_min < q1_max)) throw std::invalid_argument("integrate_frenet_serret: need q1_min < q1_max");
  const auto dom = profile.domain();
  if (q1_min < dom.first - 1e-12 || q1_max > dom.second + 1e-12)
    throw std::domain_error("integrate_frenet_serret: tabulated domain smaller than requested interval");

  const double span = q1_max - q1_min;
  const Index n_out = std::max<Index>(1, static_cast<Index>(std::llround(span / step)));
  const double h = span / static_cast<double>(n_out);

  // curvature on the half-step lattice and at its midpoints (quarter steps)
  const Index nf = 2 * n_out;  // fine intervals of width h/2
  ArrayXd kf(nf + 1), km(nf);
  for (Index j = 0; j <= nf; ++j) kf[j] = evaluate_curvature(profile, q1_min + 0.5 * h * static_cast<double>(j));
  for (Index j = 0; j < nf; ++j) km[j] = evaluate_curvature(profile, q1_min + 0.5 * h * (static_cast<double>(j) + 0.5));

  // tangent angle by cumulative Simpson on the fine lattice
  ArrayXd theta(nf + 1);
  theta[0] = 0.0;
  for (Index j = 0; j < nf; ++j) theta[j + 1] = theta[j] + (0.5 * h / 6.0) * (kf[j] + 4.0 * km[j] + kf[j + 1]);

  // positions by Simpson per output interval
  ArrayXd x(n_out + 1), y(n_out + 1);
  x[0] = y[0] = 0.0;
  for (Index i = 0; i < n_out; ++i) {
    const double c0 = std::cos(theta[2 * i]), c1 = std::cos(theta[2 * i + 1]), c2 = std::cos(theta[2 * i + 2]);
    const double s0 = std::sin(theta[2 * i]), s1 = std::sin(theta[2 * i + 1]), s2 = std::sin(theta[2 * i + 2]);
    x[i + 1] = x[i] + (h / 6.0) * (c0 + 4.0 * c1 + c2);
    y[i + 1] = y[i] + (h / 6.0) * (s0 + 4.0 * s1 + s2);
  }

  // anchor theta = 0, r = (0,0) at the lattice point nearest q1 = 0 when the
  // interval contains it, else at q1_min
  Index ia = 0;
  if (q1_min <= 0.0 && q1_max >= 0.0) ia = static_cast<Index>(std::llround(-q1_min / h));
  ia = std::clamp<Index>(ia, 0, n_out);
  const double tha = theta[2 * ia];
  const double ca = std::cos(-tha), sa = std::sin(-tha);
  const double xa = x[ia], ya = y[ia];

  const double tau = profile.torsion();
  const double lift = std::sqrt(1.0 + tau * tau);

  SampledCurve curve;
  curve.is_planar = (tau == 0.0);
  curve.torsion = tau;
  curve.points.resize(n_out + 1, 3);
  curve.arc_q1.resize(n_out + 1);
  for (Index i = 0; i <= n_out; ++i) {
    const double dx = x[i] - xa, dy = y[i] - ya;
    const double s_i = q1_min + h * static_cast<double>(i);
    curve.points(i, 0) = ca * dx - sa * dy;
    curve.points(i, 1) = sa * dx + ca * dy;
    curve.points(i, 2) = tau * (s_i - (q1_min + h * static_cast<double>(ia)));
    curve.arc_q1[i] = lift * s_i;
  }

  if (opts.with_frame) {
    FrameSamples f;
    f.t.resize(n_out + 1, 3);
    f.n.resize(n_out + 1, 3);
    f.b.resize(n_out + 1, 3);
    for (Index i = 0; i <= n_out; ++i) {
      const double th = theta[2 * i] - tha;
      const double ct = std::cos(th), st = std::sin(th);
      if (curve.is_planar) {
        f.t.row(i) << ct, st, 0.0;
        f.n.row(i) << -st, ct, 0.0;
        f.b.row(i) << 0.0, 0.0, 1.0;
      } else {
        // lifted curve: unsigned 3D curvature convention, n = t'/|t'|
        const double sg = (kf[2 * i] >= 0.0) ? 1.0 : -1.0;
        Eigen::Vector3d t(ct / lift, st / lift, tau / lift);
        Eigen::Vector3d n(-sg * st, sg * ct, 0.0);
        f.t.row(i) = t;
        f.n.row(i) = n;
        f.b.row(i) = t.cross(n);
      }
    }
    curve.frame = std::move(f);
  }
  return curve;
}

namespace {

uint64_t cell_key(long long cx, long long cy) {
  return (static_cast<uint64_t>(cx + (1ll << 31)) << 32) ^ static_cast<uint64_t>(cy + (1ll << 31));
}

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

}  // namespace

std::vector<Intersection> detect_self_intersections(const SampledCurve& curve,
                                                    const IntersectionOptions& opts) {
  std::vector<Intersection> out;
  const Index n = curve.size();
  if (n < 3) return out;
  const double hbar = (curve.arc_q1[n - 1] - curve.arc_q1[0]) / static_cast<double>(n - 1);
  const double gap = opts.min_arc_gap > 0 ? opts.min_arc_gap : 2.0 * hbar;

  if (!curve.is_planar) {
    // space curves: report coincident samples only
    const double tol = opts.coincidence_tol;
    const double cs = std::max(tol * 4.0, 1e-300);
    auto coords = [cs](const Eigen::Vector3d& p) {
      return std::array<long long, 3>{static_cast<long long>(std::floor(p.x() / cs)),
                                      static_cast<long long>(std::floor(p.y() / cs)),
                                      static_cast<long long>(std::floor(p.z() / cs))};
    };
    auto hash3 = [](const std::array<long long, 3>& c) {
      return static_cast<uint64_t>(c[0] * 73856093ll) ^ static_cast<uint64_t>(c[1] * 19349663ll) ^
             static_cast<uint64_t>(c[2] * 83492791ll);
    };
    std::unordered_map<uint64_t, std::vector<Index>> cells;
    for (Index i = 0; i < n; ++i) cells[hash3(coords(curve.points.row(i)))].push_back(i);
    for (Index i = 0; i < n; ++i) {
      const Eigen::Vector3d p = curve.points.row(i);
      const auto c0 = coords(p);
      for (long long ox = -1; ox <= 1; ++ox)
        for (long long oy = -1; oy <= 1; ++oy)
          for (long long oz = -1; oz <= 1; ++oz) {
            auto it = cells.find(hash3({c0[0] + ox, c0[1] + oy, c0[2] + oz}));
            if (it == cells.end()) continue;
            for (Index j : it->second) {
              if (j <= i) continue;
              if (curve.arc_q1[j] - curve.arc_q1[i] < gap) continue;
              if ((curve.points.row(j) - curve.points.row(i)).norm() <= tol)
                out.push_back({curve.arc_q1[i], curve.arc_q1[j],
                               0.5 * (curve.points.row(i) + curve.points.row(j)).transpose(), false});
            }
          }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.q1_a < b.q1_a; });
    return out;
  }

  // planar case: bucketed segment-segment tests
  const Index nseg = n - 1;
  double max_len = 0.0;
  for (Index i = 0; i < nseg; ++i)
    max_len = std::max(max_len, (curve.points.row(i + 1) - curve.points.row(i)).norm());
  const double cs = std::max(2.0 * max_len, 1e-12);

  std::unordered_map<uint64_t, std::vector<Index>> buckets;
  auto cell_of = [cs](double v) { return static_cast<long long>(std::floor(v / cs)); };
  for (Index i = 0; i < nseg; ++i) {
    const long long x0 = cell_of(std::min(curve.points(i, 0), curve.points(i + 1, 0)));
    const long long x1 = cell_of(std::max(curve.points(i, 0), curve.points(i + 1, 0)));
    const long long y0 = cell_of(std::min(curve.points(i, 1), curve.points(i + 1, 1)));
    const long long y1 = cell_of(std::max(curve.points(i, 1), curve.points(i + 1, 1)));
    for (long long cx = x0; cx <= x1; ++cx)
      for (long long cy = y0; cy <= y1; ++cy) buckets[cell_key(cx, cy)].push_back(i);
  }

  std::unordered_set<uint64_t> seen;
  for (const auto& [key, segs] : buckets) {
    (void)key;
    for (size_t ii = 0; ii < segs.size(); ++ii) {
      for (size_t jj = ii + 1; jj < segs.size(); ++jj) {
        Index i = segs[ii], j = segs[jj];
        if (i > j) std::swap(i, j);
        if (j - i <= 1) continue;  // shared-endpoint adjacency
        if (curve.arc_q1[j] - curve.arc_q1[i + 1] < gap) continue;
        const uint64_t pk = static_cast<uint64_t>(i) * static_cast<uint64_t>(nseg) + static_cast<uint64_t>(j);
        if (!seen.insert(pk).second) continue;

        const double px = curve.points(i, 0), py = curve.points(i, 1);
        const double rx = curve.points(i + 1, 0) - px, ry = curve.points(i + 1, 1) - py;
        const double qx = curve.points(j, 0), qy = curve.points(j, 1);
        const double sx = curve.points(j + 1, 0) - qx, sy = curve.points(j + 1, 1) - qy;
        const double denom = cross2(rx, ry, sx, sy);
        const double scale = std::max({std::abs(rx), std::abs(ry), std::abs(sx), std::abs(sy), 1e-300});
        if (std::abs(denom) < 1e-14 * scale * scale) {
          // parallel; overlapping collinear segments are degenerate crossings
          if (std::abs(cross2(qx - px, qy - py, rx, ry)) > 1e-12 * scale * scale) continue;
          const double rr = rx * rx + ry * ry;
          double t0 = ((qx - px) * rx + (qy - py) * ry) / rr;
          double t1 = t0 + (sx * rx + sy * ry) / rr;
          if (t1 < t0) std::swap(t0, t1);
          const double lo = std::max(0.0, t0), hi = std::min(1.0, t1);
          if (lo > hi) continue;
          const double tm = 0.5 * (lo + hi);
          Intersection rec;
          rec.q1_a = curve.arc_q1[i] + tm * (curve.arc_q1[i + 1] - curve.arc_q1[i]);
          rec.q1_b = 0.5 * (curve.arc_q1[j] + curve.arc_q1[j + 1]);
          rec.point = Eigen::Vector3d(px + tm * rx, py + tm * ry, 0.0);
          rec.degenerate = true;
          out.push_back(rec);
          continue;
        }
        const double t = cross2(qx - px, qy - py, sx, sy) / denom;
        const double u = cross2(qx - px, qy - py, rx, ry) / denom;
        if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) continue;
        Intersection rec;
        rec.q1_a = curve.arc_q1[i] + t * (curve.arc_q1[i + 1] - curve.arc_q1[i]);
        rec.q1_b = curve.arc_q1[j] + u * (curve.arc_q1[j + 1] - curve.arc_q1[j]);
        rec.point = Eigen::Vector3d(px + t * rx, py + t * ry, 0.0);
        out.push_back(rec);
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.q1_a < b.q1_a || (a.q1_a == b.q1_a && a.q1_b < b.q1_b);
  });
  // collapse duplicates from shared vertices / bucket overlap
  std::vector<Intersection> dedup;
  for (const auto& rec : out) {
    bool dup = false;
    for (const auto& kept : dedup)
      if (std::abs(rec.q1_a - kept.q1_a) < gap && std::abs(rec.q1_b - kept.q1_b) < gap) {
        dup = true;
        break;
      }
    if (!dup) dedup.push_back(rec);
  }
  return dedup;
}

ValidityReport check_validity(const CurvatureProfile& profile, double sigma0, double q1_min,
                              double q1_max, const ValidityOptions& opts) {
  if (!(sigma0 > 0)) throw std::invalid_argument("check_validity: sigma0 must be positive");
  if (!(opts.kappa_floor > 0)) throw std::invalid_argument("check_validity: kappa_floor must be positive");

  ValidityReport rep;
  double dom_lo = 0.0, dom_hi = 0.0;
  bool any = false;
  const Index n = opts.n_samples;
  for (Index i = 0; i < n; ++i) {
    const double q = q1_min + (q1_max - q1_min) * static_cast<double>(i) / static_cast<double>(n - 1);
    const auto jet = evaluate_curvature_jet(profile, q);
    const double ak = std::abs(jet.kappa);
    rep.max_k_sigma = std::max(rep.max_k_sigma, ak * sigma0);
    if (ak < opts.kappa_floor) continue;
    if (!any) dom_lo = q;
    dom_hi = q;
    any = true;
    rep.max_kprime_ratio = std::max(rep.max_kprime_ratio, std::abs(jet.dkappa) * sigma0 / ak);
    rep.max_kpp_ratio = std::max(rep.max_kpp_ratio, std::abs(jet.d2kappa) * sigma0 / (ak * ak));
  }
  if (!any) {
    rep.verdict = Verdict::Warn;
    return rep;
  }
  rep.evaluated_domain = std::make_pair(dom_lo, dom_hi);
  const double worst = std::max({rep.max_k_sigma, rep.max_kprime_ratio, rep.max_kpp_ratio});
  rep.verdict = worst < opts.pass_threshold ? Verdict::Pass
              : worst < opts.fail_threshold ? Verdict::Warn
                                            : Verdict::Fail;
  return rep;
}

CurvatureProfile reconstruct_curvature(const SampledCurve& curve) {
  const Index n = curve.size();
  if (n < 5) throw std::invalid_argument("reconstruct_curvature: need at least 5 samples");
  const double h = (curve.arc_q1[n - 1] - curve.arc_q1[0]) / static_cast<double>(n - 1);
  for (Index i = 1; i < n; ++i)
    if (std::abs(curve.arc_q1[i] - curve.arc_q1[i - 1] - h) > 1e-6 * h)
      throw std::invalid_argument("reconstruct_curvature: arc-length samples must be uniform");

  ArrayXd q(n - 2), kappa(n - 2);
  for (Index i = 1; i + 1 < n; ++i) {
    const Eigen::Vector3d d1 = (curve.points.row(i + 1) - curve.points.row(i - 1)).transpose() / (2.0 * h);
    const Eigen::Vector3d d2 =
        (curve.points.row(i + 1) - 2.0 * curve.points.row(i) + curve.points.row(i - 1)).transpose() / (h * h);
    const double v3 = std::pow(d1.norm(), 3);
    double k;
    if (curve.is_planar) {
      k = (d1.x() * d2.y() - d1.y() * d2.x()) / v3;  // signed
    } else {
      k = d1.cross(d2).norm() / v3;
    }
    q[i - 1] = curve.arc_q1[i];
    kappa[i - 1] = k;
  }
  return CurvatureProfile::tabulated(std::move(q), std::move(kappa));
}

}  // namespace curveguide::geometry
