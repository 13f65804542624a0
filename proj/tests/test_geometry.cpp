#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "curveguide/geometry.hpp"
#include "oracles.hpp"

using namespace curveguide;
using namespace curveguide::geometry;

namespace {
constexpr double kPi = std::numbers::pi;

double pt_kappa(double nu, double alpha, double q) {
  return 2.0 * alpha * std::sqrt(nu * (nu + 1.0)) / std::cosh(alpha * q);
}
}  // namespace

TEST_CASE("curvature evaluation across profile kinds") {
  CHECK(evaluate_curvature(CurvatureProfile::straight(), 3.7) == 0.0);
  CHECK(evaluate_curvature(CurvatureProfile::circle(2.0), -5.0) == doctest::Approx(0.5).epsilon(1e-14));

  const auto pt = CurvatureProfile::poschl_teller(1.0, 0.125);
  CHECK(evaluate_curvature(pt, 0.0) == doctest::Approx(0.25 * std::sqrt(2.0)).epsilon(1e-14));

  // sign mask sgn(q1): flips the sign left of 0, |kappa| untouched
  const auto masked = pt.with_sign_mask(SignMask{{0.0}});
  const double expect = -pt_kappa(1.0, 0.125, -8.0);
  CHECK(evaluate_curvature(masked, -8.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(evaluate_curvature(masked, -8.0) == doctest::Approx(-0.2291245).epsilon(1e-4));
  CHECK(evaluate_curvature(masked, 8.0) == doctest::Approx(pt_kappa(1.0, 0.125, 8.0)).epsilon(1e-12));
}

TEST_CASE("sukumar curvature against the brute-force determinant oracle") {
  const std::vector<double> eta{1.0, 1.5};
  const auto prof = CurvatureProfile::sukumar(eta);
  for (double q : {0.0, 0.3, -0.7, 1.9, 4.0}) {
    // the oracle's second difference carries ~1e-5 relative rounding noise
    const double expected = oracles::sukumar_kappa_sq_fd(eta, q);
    const double k = evaluate_curvature(prof, q);
    CHECK(k * k == doctest::Approx(expected).epsilon(1e-4));
  }
  // single bound state at eta = 1: kappa^2(0) = 8 (second derivative of ln cosh)
  CHECK(evaluate_curvature(CurvatureProfile::sukumar({1.0}), 0.0) ==
        doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
  // eta = [1, 1.5]: kappa^2(0) = 8 (eta2^2 - eta1^2) = 10
  CHECK(evaluate_curvature(prof, 0.0) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-10));
  // asymptotically flat, no overflow far out
  CHECK(evaluate_curvature(prof, 400.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(evaluate_curvature(prof, -1000.0)) < 1e-10);
}

TEST_CASE("sukumar validation rejects bad eta lists") {
  CHECK_THROWS_AS(CurvatureProfile::sukumar({}), std::invalid_argument);
  CHECK_THROWS_AS(CurvatureProfile::sukumar({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(CurvatureProfile::sukumar({-1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("tabulated profiles interpolate and guard their domain") {
  ArrayXd q(5), k(5);
  q << 0, 1, 2, 3, 4;
  k << 0, 1, 0, -1, 0;
  const auto tab = CurvatureProfile::tabulated(q, k);
  CHECK(evaluate_curvature(tab, 0.5) == doctest::Approx(0.5));
  CHECK(evaluate_curvature(tab, 2.5) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(evaluate_curvature(tab, 4.5), std::domain_error);
  CHECK_THROWS_AS(evaluate_curvature(tab, -0.5), std::domain_error);
}

TEST_CASE("straight segment integrates to a straight line") {
  const auto curve = integrate_frenet_serret(CurvatureProfile::straight(), -10.0, 10.0, 0.01);
  CHECK(curve.points(0, 0) == doctest::Approx(-10.0).epsilon(1e-12));
  CHECK(curve.points(curve.size() - 1, 0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(curve.points.col(1).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(curve.points.col(2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("circle closes on itself to 1e-8 at step 1e-3") {
  const auto curve = integrate_frenet_serret(CurvatureProfile::circle(1.0), 0.0, 2.0 * kPi, 1e-3);
  const Eigen::Vector3d gap = curve.points.row(curve.size() - 1) - curve.points.row(0);
  CHECK(gap.norm() < 1e-8);
}

TEST_CASE("integration preconditions") {
  CHECK_THROWS_AS(integrate_frenet_serret(CurvatureProfile::straight(), 0.0, 1.0, -0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_frenet_serret(CurvatureProfile::straight(), 2.0, 1.0, 0.1),
                  std::invalid_argument);
  ArrayXd q(3), k(3);
  q << -1, 0, 1;
  k << 0, 0, 0;
  CHECK_THROWS_AS(
      integrate_frenet_serret(CurvatureProfile::tabulated(q, k), -5.0, 5.0, 0.1),
      std::domain_error);
}

TEST_CASE("arc-length fidelity of the sampled polyline") {
  const double step = 0.01;
  const auto pt = CurvatureProfile::poschl_teller(1.0, 0.125);
  const auto curve = integrate_frenet_serret(pt, -100.0, 100.0, step);
  double chord = 0.0;
  for (Index i = 1; i < curve.size(); ++i)
    chord += (curve.points.row(i) - curve.points.row(i - 1)).norm();
  const double span = curve.arc_q1[curve.size() - 1] - curve.arc_q1[0];
  // chords under-measure arcs by O(step^2) per unit length
  CHECK(std::abs(chord - span) < 10.0 * step * step * span);
  CHECK(chord <= span);
}

TEST_CASE("round trip: reconstructed curvature matches the profile") {
  const double step = 1e-3;

  SUBCASE("circle radius 2") {
    const auto curve = integrate_frenet_serret(CurvatureProfile::circle(2.0), 0.0, 8.0, step);
    const auto recon = reconstruct_curvature(curve);
    for (double q : {0.2, 3.0, 7.5})
      CHECK(evaluate_curvature(recon, q) == doctest::Approx(0.5).epsilon(1e-6));
  }

  SUBCASE("poschl-teller bend") {
    const auto pt = CurvatureProfile::poschl_teller(1.0, 0.125);
    const auto curve = integrate_frenet_serret(pt, -40.0, 40.0, step);
    const auto recon = reconstruct_curvature(curve);
    for (double q = -35.0; q <= 35.0; q += 2.5) {
      CHECK(evaluate_curvature(recon, q) ==
            doctest::Approx(pt_kappa(1.0, 0.125, q)).epsilon(1e-6));
    }
  }

  SUBCASE("straight line") {
    const auto curve = integrate_frenet_serret(CurvatureProfile::straight(), -5.0, 5.0, step);
    const auto recon = reconstruct_curvature(curve);
    CHECK(std::abs(evaluate_curvature(recon, 0.0)) < 1e-9);
  }

  SUBCASE("rejects short or non-uniform input") {
    SampledCurve tiny;
    tiny.points.resize(3, 3);
    tiny.points.setZero();
    tiny.arc_q1.resize(3);
    tiny.arc_q1 << 0, 1, 2;
    CHECK_THROWS_AS(reconstruct_curvature(tiny), std::invalid_argument);
  }
}

TEST_CASE("sign-mask invariance: kappa^2 of the reshaped curve is unchanged") {
  const double step = 1e-2;
  const auto pt = CurvatureProfile::poschl_teller(1.0, 0.25);
  const auto plain = integrate_frenet_serret(pt, -30.0, 30.0, step);
  const auto masked =
      integrate_frenet_serret(pt.with_sign_mask(SignMask{{0.0}}), -30.0, 30.0, step);
  const auto ka = reconstruct_curvature(plain);
  const auto kb = reconstruct_curvature(masked);
  // skip the mask's jump point itself, where the discrete second derivative
  // straddles the curvature kink
  for (double q = -24.5; q <= 25.0; q += 1.0) {
    const double a = evaluate_curvature(ka, q);
    const double b = evaluate_curvature(kb, q);
    CHECK(a * a == doctest::Approx(b * b).epsilon(1e-8));
  }
}

TEST_CASE("torsion lift scales the reconstructed curvature by 1/(1+tau^2)") {
  const double tau = 3.0;
  const auto prof = CurvatureProfile::poschl_teller(1.0, 1.0).with_torsion(tau);
  const auto curve = integrate_frenet_serret(prof, -4.0, 4.0, 1e-3);
  CHECK_FALSE(curve.is_planar);
  // arc length is stretched by sqrt(1+tau^2)
  const double lift = std::sqrt(1.0 + tau * tau);
  CHECK(curve.arc_q1[curve.size() - 1] == doctest::Approx(4.0 * lift).epsilon(1e-12));
  const auto recon = reconstruct_curvature(curve);
  for (double s : {-2.0, 0.0, 1.5}) {
    const double expected = pt_kappa(1.0, 1.0, s) / (1.0 + tau * tau);
    CHECK(evaluate_curvature(recon, s * lift) == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("frames stay orthonormal") {
  for (double tau : {0.0, 5.0}) {
    const auto prof = CurvatureProfile::poschl_teller(2.0, 0.5).with_torsion(tau);
    const auto curve = integrate_frenet_serret(prof, -5.0, 5.0, 0.01);
    REQUIRE(curve.frame.has_value());
    const auto& f = *curve.frame;
    for (Index i = 0; i < curve.size(); i += 37) {
      CHECK(std::abs(f.t.row(i).norm() - 1.0) < 1e-10);
      CHECK(std::abs(f.n.row(i).norm() - 1.0) < 1e-10);
      CHECK(std::abs(f.b.row(i).norm() - 1.0) < 1e-10);
      CHECK(std::abs(f.t.row(i).dot(f.n.row(i))) < 1e-10);
      CHECK(std::abs(f.t.row(i).dot(f.b.row(i))) < 1e-10);
      CHECK(std::abs(f.n.row(i).dot(f.b.row(i))) < 1e-10);
    }
  }
}

TEST_CASE("self-intersections of the reflectionless bends") {
  SUBCASE("half-open circle is simple") {
    const double r = 1.0;
    const auto curve =
        integrate_frenet_serret(CurvatureProfile::circle(r), 0.0, 2.0 * kPi * r - 1e-3, 1e-3);
    CHECK(detect_self_intersections(curve).empty());
  }

  SUBCASE("PT nu=1 bend has exactly one multiple point, removed by the mask") {
    const auto pt = CurvatureProfile::poschl_teller(1.0, 0.125);
    const auto plain = integrate_frenet_serret(pt, -200.0, 200.0, 0.05);
    const auto hits = detect_self_intersections(plain);
    CHECK(hits.size() == 1);

    const auto masked =
        integrate_frenet_serret(pt.with_sign_mask(SignMask{{0.0}}), -200.0, 200.0, 0.05);
    CHECK(detect_self_intersections(masked).empty());
  }

  SUBCASE("two-bound-state reflectionless curve: multiple points lifted by torsion") {
    const auto suk = CurvatureProfile::sukumar({1.0, 1.5});
    const auto planar = integrate_frenet_serret(suk, -6.0, 6.0, 2e-3);
    CHECK(detect_self_intersections(planar).size() >= 1);

    const auto lifted = integrate_frenet_serret(suk.with_torsion(20.0), -6.0, 6.0, 2e-3);
    CHECK(detect_self_intersections(lifted).empty());
  }
}

TEST_CASE("validity report") {
  SUBCASE("wide circle passes with exact maxima") {
    const auto rep = check_validity(CurvatureProfile::circle(100.0), 1.0, -50.0, 50.0);
    CHECK(rep.max_k_sigma == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(rep.max_kprime_ratio == 0.0);
    CHECK(rep.max_kpp_ratio == 0.0);
    CHECK(rep.verdict == Verdict::Pass);
  }

  SUBCASE("PT maximum matches the analytic peak") {
    const auto rep =
        check_validity(CurvatureProfile::poschl_teller(1.0, 0.125), 1.0, -100.0, 100.0);
    CHECK(rep.max_k_sigma == doctest::Approx(0.25 * std::sqrt(2.0)).epsilon(1e-6));
  }

  SUBCASE("straight guide yields an empty ratio domain and a warn verdict") {
    const auto rep = check_validity(CurvatureProfile::straight(), 1.0, -10.0, 10.0);
    CHECK_FALSE(rep.evaluated_domain.has_value());
    CHECK(rep.verdict == Verdict::Warn);
  }

  SUBCASE("squeezing the ellipse degrades the verdict") {
    // eccentricity 0.5: gentle; 0.9: the second-derivative ratio crosses 0.3
    const double L = 150.0;
    auto axes = [&](double eps) {
      const double ratio = std::sqrt(1.0 - eps * eps);
      // scale a so the perimeter is L (perimeter is linear in the scale)
      EllipseArcMap unit(1.0, ratio);
      const double a = L / unit.perimeter();
      return std::pair{a, a * ratio};
    };
    const auto [a1, b1] = axes(0.5);
    const auto gentle = check_validity(CurvatureProfile::ellipse(a1, b1), 1.0, 0.0, L);
    CHECK(gentle.verdict == Verdict::Pass);

    const auto [a2, b2] = axes(0.9);
    const auto squeezed = check_validity(CurvatureProfile::ellipse(a2, b2), 1.0, 0.0, L);
    CHECK(squeezed.verdict != Verdict::Pass);
  }
}

TEST_CASE("ellipse arc map round trip") {
  EllipseArcMap map(32.0, 14.0);
  for (double u : {0.1, 1.0, 2.5, 4.0, 6.0}) {
    CHECK(map.u_from_q1(map.q1_from_u(u)) == doctest::Approx(u).epsilon(1e-10));
  }
  // circle degenerates to q1 = r u
  EllipseArcMap circ(2.0, 2.0);
  CHECK(circ.perimeter() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(circ.q1_from_u(1.0) == doctest::Approx(2.0).epsilon(1e-12));
}
