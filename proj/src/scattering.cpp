#include "curveguide/scattering.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>
#include <vector>

namespace curveguide::scattering {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

// Lattice momentum of the free Numerov stencil: a plane wave exp(i kt h n)
// solves the discrete free equation when
//   cos(kt h) = (1 - 5 h^2 k^2 / 12) / (1 + h^2 k^2 / 12).
// Matching with kt instead of k removes the discretization bias of the
// asymptotic plane waves.
double lattice_momentum(double k, double h) {
  const double x = h * h * k * k / 12.0;
  const double c = (1.0 - 5.0 * x) / (1.0 + x);
  if (!(c > -1.0 && c < 1.0))
    throw NumericalError("scatter: grid too coarse for requested momentum (k*h too large)");
  return std::acos(c) / h;
}

struct Channel {
  double k;        // physical momentum
  double kt;       // lattice momentum
};

complex<double> plane(double kt, double x) { return std::exp(kI * (kt * x)); }

}  // namespace

ScatteringResult scatter(const potentials::PotentialGrid& v, const ArrayXd& k_list,
                         const ScatterOptions& opts) {
  const Index n = v.grid.n;
  if (n < 16) throw std::invalid_argument("scatter: potential grid too small");
  const double h = v.grid.step;

  // flat-tail check over the outer 5% on both sides
  const Index m = std::max<Index>(2, n / 20);
  const double depth = std::max({std::abs(v.min_value() - v.v_left_asym),
                                 std::abs(v.min_value() - v.v_right_asym), 1e-30});
  for (Index i = 0; i < m; ++i) {
    if (std::abs(v.v[i] - v.v_left_asym) > opts.tail_tol * depth ||
        std::abs(v.v[n - 1 - i] - v.v_right_asym) > opts.tail_tol * depth)
      throw NumericalError("scatter: potential tails are not asymptotically flat");
  }

  // shift so the left asymptote is zero and snap the outer samples
  ArrayXd w = v.v - v.v_left_asym;
  const double delta = v.v_right_asym - v.v_left_asym;  // right channel offset
  w[0] = w[1] = 0.0;
  w[n - 1] = delta;
  w[n - 2] = delta;

  const Index nk = k_list.size();
  ScatteringResult res;
  res.k = k_list;
  res.R.resize(nk);
  res.T.resize(nk);
  res.k_left.resize(nk);
  res.k_right.resize(nk);

  ArrayXd residuals(nk);

  auto solve_one = [&](Index ik) {
    const double k = k_list[ik];
    if (!(k > 0)) throw std::invalid_argument("scatter: momenta must be positive");
    const double E = 0.5 * k * k;  // relative to the left asymptote
    const double krsq = 2.0 * (E - delta);
    if (!(krsq > 0)) throw NumericalError("scatter: energy below the right channel threshold");
    const Channel left{k, lattice_momentum(k, h)};
    const Channel right{std::sqrt(krsq), lattice_momentum(std::sqrt(krsq), h)};

    // Numerov coefficients a_i = 1 + h^2 f_i / 12, f = 2 (E - w)
    // backward recursion seeded with the outgoing lattice plane wave
    const double x0 = v.grid.min;
    std::vector<complex<double>> psi(static_cast<size_t>(n));
    auto f_at = [&](Index i) { return 2.0 * (E - w[i]); };
    auto a_at = [&](Index i) { return 1.0 + h * h * f_at(i) / 12.0; };
    psi[static_cast<size_t>(n - 1)] = plane(right.kt, x0 + h * static_cast<double>(n - 1));
    psi[static_cast<size_t>(n - 2)] = plane(right.kt, x0 + h * static_cast<double>(n - 2));
    for (Index i = n - 2; i >= 1; --i) {
      const double b = 2.0 - 10.0 * h * h * f_at(i) / 12.0;
      psi[static_cast<size_t>(i - 1)] =
          (b * psi[static_cast<size_t>(i)] - a_at(i + 1) * psi[static_cast<size_t>(i + 1)]) / a_at(i - 1);
    }

    // match psi = A e^{i kt x} + B e^{-i kt x} at the two leftmost points
    const double xa = x0, xb = x0 + h;
    const complex<double> ea = plane(left.kt, xa), eb = plane(left.kt, xb);
    const complex<double> denom = ea * std::conj(eb) - std::conj(ea) * eb;  // -2i sin(kt h)
    const complex<double> A = (psi[0] * std::conj(eb) - psi[1] * std::conj(ea)) / denom;
    const complex<double> B = (psi[1] * ea - psi[0] * eb) / denom;

    res.R[ik] = B / A;
    res.T[ik] = 1.0 / A;
    res.k_left[ik] = left.k;
    res.k_right[ik] = right.k;
    const double ratio = (std::abs(delta) > 0) ? right.k / left.k : 1.0;
    residuals[ik] = std::abs(std::norm(res.R[ik]) + ratio * std::norm(res.T[ik]) - 1.0);
  };

  const int nthreads = std::max(1, std::min<int>(opts.threads, static_cast<int>(nk)));
  if (nthreads <= 1) {
    for (Index ik = 0; ik < nk; ++ik) solve_one(ik);
  } else {
    std::vector<std::thread> pool;
    std::atomic<Index> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (Index ik = next.fetch_add(1); ik < nk; ik = next.fetch_add(1)) solve_one(ik);
        } catch (...) {
          errors[static_cast<size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  res.unitarity_residual = residuals.maxCoeff();
  return res;
}

double analytic_pt_transmission(double nu, double alpha, double k) {
  if (!(k > 0) || !(alpha > 0) || !(nu > 0))
    throw std::invalid_argument("analytic_pt_transmission: need k, alpha, nu > 0");
  if (std::abs(nu - std::round(nu)) < 1e-12) return 1.0;  // reflectionless geometry
  const double arg = std::numbers::pi * k / alpha;
  if (arg > 350.0) return 1.0;  // sinh overflow; |T|^2 - 1 < 1e-300 here
  const double mu = std::sinh(arg) / std::sin(std::numbers::pi * nu);
  const double mu2 = mu * mu;
  return mu2 / (1.0 + mu2);
}

ArrayXd default_k_grid() {
  const Index n = 64;
  ArrayXd k(n);
  const double lo = std::log(0.02), hi = std::log(2.0);
  for (Index i = 0; i < n; ++i)
    k[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return k;
}

namespace {

// eigenvalues of the Dirichlet finite-difference Hamiltonian on the interior
// points of the given samples
ArrayXd fd_eigenvalues(const ArrayXd& v, double h) {
  const Index n = v.size() - 2;  // interior
  ArrayXd diag(n), sub(std::max<Index>(n - 1, 0));
  for (Index i = 0; i < n; ++i) diag[i] = 1.0 / (h * h) + v[i + 1];
  sub.setConstant(-0.5 / (h * h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag.matrix(), sub.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().array();
}

// inverse iteration for the tridiagonal (diag, sub) shifted by lambda;
// partial-pivoting tridiagonal solve (the shifted matrix is near-singular by
// construction, which is what makes the iteration converge in 2-3 steps)
Eigen::VectorXd tridiag_inverse_iteration(const ArrayXd& diag, double sub, double lambda) {
  const Index n = diag.size();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (Index i = 0; i < n; ++i) x[i] += 1e-3 * std::sin(0.7 * static_cast<double>(i + 1));
  for (int iter = 0; iter < 4; ++iter) {
    // solve (A - lambda I) y = x with partial pivoting (dgttrf-style)
    Eigen::VectorXd d = (diag - lambda).matrix();
    Eigen::VectorXd dl = Eigen::VectorXd::Constant(std::max<Index>(n - 1, 0), sub);
    Eigen::VectorXd du = dl, du2 = Eigen::VectorXd::Zero(std::max<Index>(n - 2, 0));
    Eigen::VectorXd y = x;
    std::vector<int> piv(static_cast<size_t>(n), 0);
    for (Index i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = 1e-300;
        const double m = dl[i] / d[i];
        d[i + 1] -= m * du[i];
        y[i + 1] -= m * y[i];
        if (i + 2 < n) du2[i] = 0.0;
        dl[i] = m;
      } else {
        piv[static_cast<size_t>(i)] = 1;
        const double m = d[i] / dl[i];
        d[i] = dl[i];
        const double tmp = d[i + 1];
        d[i + 1] = du[i] - m * tmp;
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -m * du[i + 1];
        }
        du[i] = tmp;
        std::swap(y[i], y[i + 1]);
        y[i + 1] -= m * y[i];
        dl[i] = m;
      }
    }
    if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
    // back substitution
    y[n - 1] /= d[n - 1];
    if (n >= 2) y[n - 2] = (y[n - 2] - du[n - 2] * y[n - 1]) / d[n - 2];
    for (Index i = n - 3; i >= 0; --i)
      y[i] = (y[i] - du[i] * y[i + 1] - du2[i] * y[i + 2]) / d[i];
    x = y / y.norm();
  }
  return x;
}

}  // namespace

BoundStateSpectrum bound_states(const potentials::PotentialGrid& v, const BoundStateOptions& opts) {
  const Index n = v.grid.n;
  if (n < 9) throw std::invalid_argument("bound_states: potential grid too small");
  const double h = v.grid.step;
  const double vmin = v.min_value();
  if (h * h * std::abs(vmin) >= 0.1)
    throw std::invalid_argument("bound_states: grid too coarse, (dq1)^2 |v_min| must stay below 0.1");

  const double asym = std::min(v.v_left_asym, v.v_right_asym);
  const double cutoff = asym - opts.edge_margin;

  const ArrayXd fine = fd_eigenvalues(v.v, h);

  ArrayXd coarse;
  if (opts.richardson) {
    const Index nc = (n + 1) / 2;  // every second sample, same box when n is odd
    ArrayXd vc(nc);
    for (Index i = 0; i < nc; ++i) vc[i] = v.v[std::min(2 * i, n - 1)];
    coarse = fd_eigenvalues(vc, 2.0 * h);
  }

  std::vector<double> energies;
  for (Index i = 0; i < fine.size(); ++i) {
    double e = fine[i];
    if (e >= cutoff) break;
    if (opts.richardson && i < coarse.size()) {
      // second-order discretization: E(h) = E + c h^2
      e = (4.0 * fine[i] - coarse[i]) / 3.0;
      if (e >= cutoff) continue;
    }
    energies.push_back(e);
  }

  BoundStateSpectrum spec;
  spec.grid = v.grid;
  spec.energies = Eigen::Map<const ArrayXd>(energies.data(), static_cast<Index>(energies.size()));
  spec.wavefunctions.resize(n, spec.energies.size());
  spec.wavefunctions.setZero();

  ArrayXd diag(n - 2);
  for (Index i = 0; i < n - 2; ++i) diag[i] = 1.0 / (h * h) + v.v[i + 1];
  const double sub = -0.5 / (h * h);
  for (Index s = 0; s < spec.energies.size(); ++s) {
    // the fine-grid eigenvalue is the right shift for the fine-grid operator
    const double shift = fine[s] + 1e-12 * std::max(1.0, std::abs(fine[s]));
    Eigen::VectorXd psi = tridiag_inverse_iteration(diag, sub, shift);
    if (psi[n / 2] < 0 || (std::abs(psi[n / 2]) < 1e-12 && psi[n / 3] < 0)) psi = -psi;
    spec.wavefunctions.block(1, s, n - 2, 1) = psi / std::sqrt(h);  // sum h psi^2 = 1
  }

  if (spec.count() > 0) {
    const double peak = spec.wavefunctions.col(0).cwiseAbs().maxCoeff();
    const double edge = std::max(std::abs(spec.wavefunctions(1, 0)), std::abs(spec.wavefunctions(n - 2, 0)));
    spec.boundary_warning = edge > 1e-8 * peak;
  }
  return spec;
}

ScatteringResult susy_amplitude_map(const ScatteringResult& plus, double phi_minus_asym,
                                    double phi_plus_asym) {
  ScatteringResult minus;
  minus.k = plus.k;
  minus.k_left.resize(plus.k.size());
  minus.k_right.resize(plus.k.size());
  minus.R.resize(plus.k.size());
  minus.T.resize(plus.k.size());
  const double sm = phi_minus_asym, sp = phi_plus_asym;
  double max_res = 0.0;
  for (Index i = 0; i < plus.k.size(); ++i) {
    const double k = plus.k[i];
    const double E = 0.5 * k * k + sm * sm;
    const double kpsq = 2.0 * (E - sp * sp);
    if (!(kpsq > 0)) throw NumericalError("susy_amplitude_map: energy below the right channel threshold");
    const double kp = std::sqrt(kpsq);
    const complex<double> denom = sm - kI * (k / std::numbers::sqrt2);
    minus.R[i] = (sm + kI * (k / std::numbers::sqrt2)) / denom * plus.R[i];
    minus.T[i] = (sp - kI * (kp / std::numbers::sqrt2)) / denom * plus.T[i];
    minus.k_left[i] = k;
    minus.k_right[i] = kp;
    const double ratio = (std::abs(sp * sp - sm * sm) > 0) ? kp / k : 1.0;
    max_res = std::max(max_res, std::abs(std::norm(minus.R[i]) + ratio * std::norm(minus.T[i]) - 1.0));
  }
  minus.unitarity_residual = max_res;
  return minus;
}

}  // namespace curveguide::scattering
