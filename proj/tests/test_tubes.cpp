#include <cmath>
#include <vector>

#include <doctest.h>

#include "pinched_tube.hpp"
#include "s3lab/sphere.hpp"
#include "s3lab/tubes.hpp"

using namespace s3lab;

namespace {
constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;
}

TEST_CASE("pointwise focal distance") {
    CHECK(pointwise_focal_distance(0.0, 0.0) == M_PI / 2);
    CHECK(pointwise_focal_distance(1.0, -1.0) == doctest::Approx(M_PI / 4).epsilon(1e-15));
    CHECK(pointwise_focal_distance(std::tan(0.3), -1.0 / std::tan(0.3)) ==
          doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("curvature focal radius of the closed-form families") {
    const QuadratureGrid g(128, 128);
    CHECK(curvature_focal_radius(clifford_torus(), g) ==
          doctest::Approx(M_PI / 4).epsilon(1e-9));
    CHECK(curvature_focal_radius(rotation_torus(M_PI / 6), g) ==
          doctest::Approx(M_PI / 6).epsilon(1e-9));
    CHECK(curvature_focal_radius(rotation_torus(1.0), g) ==
          doctest::Approx(M_PI / 2 - 1.0).epsilon(1e-9));
    CHECK(curvature_focal_radius(geodesic_sphere(M_PI / 3), g) ==
          doctest::Approx(M_PI / 3).epsilon(1e-9));
}

TEST_CASE("reach estimate on surfaces whose reach is focal") {
    ReachParams rp;
    rp.resolution = 96;
    rp.tolerance = 0.08;
    const ReachEstimate cl = reach_estimate(clifford_torus(), rp);
    CHECK(cl.value >= M_PI / 4 - 5e-3);

    const ReachEstimate rot = reach_estimate(rotation_torus(0.3), rp);
    CHECK(rot.value >= 0.3 - 5e-3);

    // Equatorial 2-sphere: focal radius exactly pi/2.
    ReachParams rps = rp;
    rps.check_opposite_side = false;
    const ReachEstimate eq_same = reach_estimate(geodesic_sphere(M_PI / 2), rps);
    CHECK(std::abs(eq_same.value - M_PI / 2) <= 5e-3);
    rps.check_opposite_side = true;
    const ReachEstimate eq_both = reach_estimate(geodesic_sphere(M_PI / 2), rps);
    CHECK(std::abs(eq_both.value - M_PI / 2) <= 5e-3);

    ReachParams too_coarse;
    too_coarse.resolution = 16;
    too_coarse.tolerance = 0.01;
    CHECK_THROWS_AS((void)reach_estimate(clifford_torus(), too_coarse), std::invalid_argument);
}

TEST_CASE("a pinched tube has reach strictly below its curvature focal radius") {
    const SurfaceImmersion tube = s3lab_test::pinched_tube();
    const QuadratureGrid g(128, 128);
    const double curv = curvature_focal_radius(tube, g);
    CHECK(curv == doctest::Approx(0.26).epsilon(1e-3));  // meridian cot(rho0)

    // Independent oracle: half the minimal distance between parameter-distant
    // sheets (the pinch is head-on, so first segment collision is at gap / 2).
    const int nu = 384, nv = 48;
    std::vector<Vec4> pts(static_cast<std::size_t>(nu) * nv);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j)
            pts[static_cast<std::size_t>(i) * nv + j] =
                tube.position(2.0 * M_PI * i / nu, 2.0 * M_PI * j / nv);
    double gap2 = 100.0;
    for (int i = 0; i < nu; ++i)
        for (int i2 = i; i2 < nu; ++i2) {
            const int du = std::min(std::abs(i - i2), nu - std::abs(i - i2));
            if (du < nu / 16) continue;
            for (int j = 0; j < nv; ++j)
                for (int j2 = 0; j2 < nv; ++j2) {
                    const Vec4 d = sub(pts[static_cast<std::size_t>(i) * nv + j],
                                       pts[static_cast<std::size_t>(i2) * nv + j2]);
                    gap2 = std::min(gap2, dot(d, d));
                }
        }
    const double oracle = 0.5 * std::sqrt(gap2);

    ReachParams rp;
    rp.resolution = 160;
    rp.tolerance = 0.2;
    const ReachEstimate re = reach_estimate(tube, rp);
    CHECK(re.value < curv - 0.1);
    CHECK(std::abs(re.value - oracle) <= re.tolerance);

    const FocalParams fp{128, rp};
    const FocalReport rep = focal_radius(tube, fp);
    CHECK(rep.focal_radius == std::min(rep.curvature_focal, rep.reach_value));
    CHECK(rep.focal_radius < curv - 0.05);
}

TEST_CASE("focal reports") {
    FocalParams fp;
    fp.curvature_grid = 192;
    fp.reach.resolution = 96;
    fp.reach.tolerance = 0.08;

    const FocalReport cl = focal_radius(clifford_torus(), fp);
    CHECK(std::abs(cl.focal_radius - M_PI / 4) <= 5e-3);
    CHECK(cl.focal_radius <= cl.curvature_focal);
    CHECK(cl.focal_radius <= cl.reach_value);
    CHECK(cl.focal_radius <= M_PI / 2 + 1e-9);

    const FocalReport rot = focal_radius(rotation_torus(0.5), fp);
    CHECK(std::abs(rot.focal_radius - 0.5) <= 5e-3);

    const FocalReport eq = focal_radius(geodesic_sphere(M_PI / 2), fp);
    CHECK(std::abs(eq.focal_radius - M_PI / 2) <= 5e-3);
    CHECK(eq.focal_radius <= M_PI / 2 + 1e-9);

    // Every torus has focal radius at most pi/4.
    for (std::uint64_t seed : {1u, 12u, 103u, 2024u, 77u}) {
        const FocalReport f = focal_radius(fourier_torus(seed, 0.05), fp);
        CHECK(f.focal_radius <= M_PI / 4 + 5e-3);
    }
}

TEST_CASE("tube volumes against closed forms and the ball-difference oracle") {
    const QuadratureGrid g(256, 256);
    const TubeVolume cl = tube_volume_numeric(TubeSpec(clifford_torus(), M_PI / 4), g, 32,
                                              M_PI / 4);
    CHECK(std::abs(cl.value - kTwoPiSq) <= 1e-6);
    CHECK_FALSE(cl.beyond_focal);

    const TubeVolume rot =
        tube_volume_numeric(TubeSpec(rotation_torus(M_PI / 6), 0.3), g, 32, M_PI / 6);
    CHECK(std::abs(rot.value - std::sin(0.6) * M_PI * M_PI * std::sqrt(3.0)) <= 1e-6);

    const TubeVolume sph = tube_volume_numeric(TubeSpec(geodesic_sphere(M_PI / 3), 0.2),
                                               QuadratureGrid(128, 256), 32, M_PI / 3);
    const double oracle = ball_volume(M_PI / 3 + 0.2) - ball_volume(M_PI / 3 - 0.2);
    CHECK(std::abs(sph.value - oracle) <= 1e-6);

    CHECK_THROWS_AS((void)tube_volume_numeric(TubeSpec(clifford_torus(), 0.3), g, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(TubeSpec(clifford_torus(), 1.6), std::invalid_argument);

    const TubeVolume beyond =
        tube_volume_numeric(TubeSpec(clifford_torus(), 1.1), QuadratureGrid(64, 64), 32,
                            M_PI / 4);
    CHECK(beyond.beyond_focal);
}

TEST_CASE("tube volume properties") {
    const QuadratureGrid g(128, 128);
    const SurfaceImmersion t = rotation_torus(0.6);

    // Monotone in r and bounded by the volume of the sphere.
    double prev = 0.0;
    for (double r : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        const double v = tube_volume_numeric(TubeSpec(t, r), g, 32, 0.6).value;
        CHECK(v >= prev);
        CHECK(v <= ball_volume(M_PI) + 1e-6);
        prev = v;
    }

    // Thin-shell limit: volume ~ 2 r area.
    const double a = area(t, g);
    const double thin = tube_volume_numeric(TubeSpec(t, 1e-4), g, 8, 0.6).value;
    CHECK(std::abs(thin / 1e-4 - 2.0 * a) / (2.0 * a) < 0.01);

    // Closed form: torus case and the sphere chi-term identity.
    for (double r : {0.15, 0.35, 0.55}) {
        const double numeric = tube_volume_numeric(TubeSpec(t, r), g, 32, 0.6).value;
        const double closed = tube_volume_closed(TubeSpec(t, r), g);
        CHECK(std::abs(numeric - closed) <= 1e-6 * (1.0 + numeric));
    }
    const SurfaceImmersion sph = geodesic_sphere(0.9);
    for (double r : {0.1, 0.3}) {
        const double closed = tube_volume_closed(TubeSpec(sph, r), QuadratureGrid(96, 192));
        CHECK(std::abs(closed - (ball_volume(0.9 + r) - ball_volume(0.9 - r))) <= 1e-9);
    }
}

TEST_CASE("inequality chain at the rigid configuration") {
    const ChainReport rep =
        verify_inequality_chain(clifford_torus(), M_PI / 4, QuadratureGrid(256, 256), M_PI / 4);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.rows.size() == 7);
    for (const ChainRow& row : rep.rows) {
        CHECK(row.asserted);
        CHECK(row.holds);
        CHECK(std::abs(row.lhs - row.rhs) <= 1e-6);
    }
    CHECK(rep.all_asserted_hold());
}

TEST_CASE("inequality chain below pi/4 skips the quarter-turn relations") {
    const ChainReport rep = verify_inequality_chain(rotation_torus(M_PI / 6), M_PI / 6,
                                                    QuadratureGrid(128, 128), M_PI / 6);
    CHECK_FALSE(rep.vacuous);
    for (const ChainRow& row : rep.rows) {
        const bool quarter_only = row.id == "eq2" || row.id == "eq3" || row.id == "eq6";
        CHECK(row.asserted == !quarter_only);
        if (row.asserted) CHECK(row.holds);
    }
    // eq1, eq4, eq5 hold strictly away from the rigid model.
    for (const ChainRow& row : rep.rows)
        if (row.id == "eq1" || row.id == "eq4" || row.id == "eq5")
            CHECK(row.rhs - row.lhs > 1e-3);
}

TEST_CASE("inequality chain on a perturbed torus at its focal radius") {
    const SurfaceImmersion t = fourier_torus(7, 0.03);
    FocalParams fp;
    fp.curvature_grid = 192;
    fp.reach.resolution = 96;
    fp.reach.tolerance = 0.08;
    const FocalReport focal = focal_radius(t, fp);
    const ChainReport rep =
        verify_inequality_chain(t, focal.focal_radius, QuadratureGrid(192, 192),
                                focal.focal_radius);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.all_asserted_hold());
    CHECK(rep.max_abs_kappa <= 1.0 / std::tan(focal.focal_radius) + 1e-6);
}

TEST_CASE("inequality chain guards") {
    CHECK_THROWS_AS((void)verify_inequality_chain(geodesic_sphere(1.0), 0.3,
                                                  QuadratureGrid(64, 64), 1.0),
                    std::invalid_argument);
    const ChainReport vac = verify_inequality_chain(clifford_torus(), 1.2,
                                                    QuadratureGrid(64, 64), M_PI / 4);
    CHECK(vac.vacuous);
}
