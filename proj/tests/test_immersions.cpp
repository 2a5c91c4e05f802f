#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "s3lab/surfaces.hpp"

using namespace s3lab;

namespace {
constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("clifford torus basics") {
    const SurfaceImmersion cl = clifford_torus();
    const Vec4 x = cl.position(0.0, 0.0);
    CHECK(x[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(x[2] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(std::abs(x[1]) <= 1e-15);
    CHECK(std::abs(x[3]) <= 1e-15);

    const SurfaceImmersion rot = rotation_torus(M_PI / 4);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const double u = 2.0 * M_PI * i / 16, v = 2.0 * M_PI * j / 16;
            CHECK(norm(sub(cl.position(u, v), rot.position(u, v))) <= 1e-12);
        }
}

TEST_CASE("geodesic sphere at pi/2 is the equator") {
    const Vec4 center{0, 0, 0, 1};
    const SurfaceImmersion eq = geodesic_sphere(M_PI / 2, center);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            const double u = M_PI * (i + 0.5) / 12, v = 2.0 * M_PI * j / 12;
            CHECK(std::abs(dot(eq.position(u, v), center)) <= 1e-12);
        }
}

TEST_CASE("curvature frames of the built-in families") {
    const CurvatureFrame fc = curvature_frame(clifford_torus(), 0.3, 1.7);
    CHECK(fc.kappa1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fc.kappa2 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(fc.mean) <= 1e-12);

    for (double a : {0.3, M_PI / 6, 1.0}) {
        const CurvatureFrame f = curvature_frame(rotation_torus(a), 1.1, 0.4);
        CHECK(f.kappa1 == doctest::Approx(std::tan(a)).epsilon(1e-12));
        CHECK(f.kappa2 == doctest::Approx(-1.0 / std::tan(a)).epsilon(1e-12));
        CHECK(f.gauss_extrinsic == doctest::Approx(-1.0).epsilon(1e-10));
    }

    for (double rho : {0.4, M_PI / 3, 1.2}) {
        const CurvatureFrame f = curvature_frame(geodesic_sphere(rho), 1.3, 2.2);
        CHECK(f.kappa1 == doctest::Approx(1.0 / std::tan(rho)).epsilon(1e-11));
        CHECK(f.kappa2 == doctest::Approx(1.0 / std::tan(rho)).epsilon(1e-11));
    }
}

TEST_CASE("frame invariants: orthogonality and the eigenvalue equation") {
    const SurfaceImmersion s = fourier_torus(3, 0.04);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double u = 2.0 * M_PI * i / 8, v = 2.0 * M_PI * j / 8;
            const SurfaceJet J = s.jet(u, v);
            const CurvatureFrame f = curvature_frame(J);
            CHECK(std::abs(dot(f.normal, f.point)) <= 1e-9);
            CHECK(std::abs(dot(f.normal, J.xu)) <= 1e-9);
            CHECK(std::abs(dot(f.normal, J.xv)) <= 1e-9);
            const double hnorm = std::abs(f.h11) + std::abs(f.h12) + std::abs(f.h22) + 1e-30;
            for (double k : {f.kappa1, f.kappa2}) {
                const double det = (f.h11 - k * f.g11) * (f.h22 - k * f.g22) -
                                   (f.h12 - k * f.g12) * (f.h12 - k * f.g12);
                CHECK(std::abs(det) <= 1e-8 * hnorm);
            }
            CHECK(f.kappa1 >= f.kappa2);
        }
}

TEST_CASE("unordered principal curvatures survive parameter reflection") {
    const SurfaceImmersion s = fourier_torus(9, 0.05);
    const SurfaceImmersion reflected(
        SurfaceTopology::torus,
        [s](double u, double v) {
            SurfaceJet J = s.jet(2.0 * M_PI - u, v);
            J.xu = scale(J.xu, -1.0);
            J.xuv = scale(J.xuv, -1.0);
            return J;
        },
        "reflected");
    for (int k = 0; k < 24; ++k) {
        const double u = 2.0 * M_PI * k / 24, v = 2.0 * M_PI * ((k * 7) % 24) / 24;
        const CurvatureFrame a = curvature_frame(s, 2.0 * M_PI - u, v);
        const CurvatureFrame b = curvature_frame(reflected, u, v);
        CHECK(std::abs(std::abs(a.kappa1) - std::abs(b.kappa1)) +
                  std::abs(std::abs(a.kappa2) - std::abs(b.kappa2)) <=
              2e-9);
    }
}

TEST_CASE("areas of the closed-form families") {
    const QuadratureGrid g(256, 256);
    CHECK(std::abs(area(clifford_torus(), g) - kTwoPiSq) <= 1e-8);
    CHECK(area(rotation_torus(M_PI / 6), g) ==
          doctest::Approx(M_PI * M_PI * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(area(geodesic_sphere(M_PI / 3), QuadratureGrid(128, 256)) ==
          doctest::Approx(3.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("willmore energies") {
    const QuadratureGrid g(256, 256);
    CHECK(std::abs(willmore_energy(clifford_torus(), g) - kTwoPiSq) <= 1e-8);
    // Rotation torus: area 2 pi^2 sin 2a with constant H = cot 2a.
    const double expected = 2.0 * kTwoPiSq / std::sqrt(3.0);
    CHECK(willmore_energy(rotation_torus(M_PI / 6), g) ==
          doctest::Approx(expected).epsilon(1e-12));
    for (double rho : {0.3, M_PI / 3, 1.2})
        CHECK(std::abs(willmore_energy(geodesic_sphere(rho), QuadratureGrid(128, 256)) -
                       4.0 * M_PI) <= 1e-8);
}

TEST_CASE("willmore properties: lower bounds") {
    const QuadratureGrid g(128, 128);
    for (double a : {0.3, 0.6, M_PI / 4, 1.1}) {
        const SurfaceImmersion t = rotation_torus(a);
        const double w = willmore_energy(t, g);
        CHECK(w >= area(t, g) - 1e-10);
        CHECK(w >= kTwoPiSq - 1e-6);
    }
    for (std::uint64_t seed : {2u, 5u, 8u}) {
        const SurfaceImmersion t = fourier_torus(seed, 0.05);
        const double w = willmore_energy(t, QuadratureGrid(192, 192));
        CHECK(w >= area(t, QuadratureGrid(192, 192)) - 1e-10);
        CHECK(w >= kTwoPiSq - 1e-6);
    }
}

TEST_CASE("Gauss-Bonnet recovers the Euler characteristic") {
    const QuadratureGrid g(256, 256);
    for (double a : {0.3, M_PI / 4, 1.2})
        CHECK(std::abs(gauss_bonnet_characteristic(rotation_torus(a), g)) <= 1e-8);
    for (double rho : {0.5, M_PI / 3})
        CHECK(std::abs(gauss_bonnet_characteristic(geodesic_sphere(rho),
                                                   QuadratureGrid(128, 256)) -
                       2.0) <= 1e-8);
    CHECK(std::abs(gauss_bonnet_characteristic(fourier_torus(1, 0.05), g)) <= 1e-6);
}

TEST_CASE("builtin factory dispatch") {
    CHECK(std::holds_alternative<SurfaceImmersion>(make_builtin("clifford_torus", {})));
    CHECK(std::holds_alternative<SurfaceImmersion>(make_builtin("rotation_torus", {0.5})));
    CHECK(std::holds_alternative<SurfaceImmersion>(make_builtin("geodesic_sphere", {1.0})));
    CHECK(std::holds_alternative<SurfaceImmersion>(make_builtin("fourier_torus", {3, 0.03})));
    CHECK(std::holds_alternative<ClosedCurve>(make_builtin("great_circle", {})));
    CHECK(std::holds_alternative<ClosedCurve>(make_builtin("torus_knot_curve", {2, 3, 0.7})));
    using Pair = std::pair<ClosedCurve, ClosedCurve>;
    CHECK(std::holds_alternative<Pair>(make_builtin("hopf_pair", {})));

    CHECK_THROWS_AS(make_builtin("moebius", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_builtin("rotation_torus", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_builtin("rotation_torus", {1.6}), std::invalid_argument);
    CHECK_THROWS_AS(make_builtin("torus_knot_curve", {2, 4, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(make_builtin("fourier_torus", {1, 0.2}), std::invalid_argument);
}

TEST_CASE("curve validation") {
    CHECK_THROWS_AS(ClosedCurve([](double u) { return Vec4{std::cos(u / 2), std::sin(u / 2), 0, 0}; },
                                [](double u) {
                                    return Vec4{-std::sin(u / 2) / 2, std::cos(u / 2) / 2, 0, 0};
                                },
                                64, "open"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)great_circle(Vec4{1, 0, 0, 0}, Vec4{2, 0, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)torus_knot_curve(2, 4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)torus_knot_curve(2, 3, 1.6), std::invalid_argument);

    auto [a, b] = hopf_pair();
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(dist_s3(a.position(2.0 * M_PI * i / 16), b.position(2.0 * M_PI * j / 16)) ==
                  doctest::Approx(M_PI / 2).epsilon(1e-15));

    // Finite-difference velocity from a bare position map.
    const ClosedCurve fd = ClosedCurve::from_position_fn(
        [](double u) { return Vec4{std::cos(u), std::sin(u), 0, 0}; }, 64, "fd_circle");
    CHECK(norm(sub(fd.velocity(0.9), Vec4{-std::sin(0.9), std::cos(0.9), 0, 0})) <= 1e-9);
}

TEST_CASE("analytic and finite-difference jets agree on built-ins") {
    const SurfaceImmersion cl = clifford_torus();
    const SurfaceImmersion fd = surface_from_position(
        SurfaceTopology::torus, [cl](double u, double v) { return cl.position(u, v); }, 5e-3,
        "clifford_fd");
    for (int k = 0; k < 16; ++k) {
        const double u = 2.0 * M_PI * k / 16, v = 2.0 * M_PI * ((3 * k) % 16) / 16;
        const SurfaceJet a = cl.jet(u, v);
        const SurfaceJet b = fd.jet(u, v);
        CHECK(norm(sub(a.xu, b.xu)) <= 1e-6);
        CHECK(norm(sub(a.xv, b.xv)) <= 1e-6);
        CHECK(norm(sub(a.xuu, b.xuu)) <= 1e-6);
        CHECK(norm(sub(a.xuv, b.xuv)) <= 1e-6);
        CHECK(norm(sub(a.xvv, b.xvv)) <= 1e-6);
    }
}

TEST_CASE("grid surface round trip") {
    const std::string path = temp_path("s3lab_grid_test.txt");
    save_grid_surface(clifford_torus(), 128, 128, path);
    const SurfaceImmersion loaded = load_grid_surface(path);

    const QuadratureGrid g(128, 128);
    CHECK(std::abs(area(loaded, g) - kTwoPiSq) < 1e-6);

    // Node jets from the file agree with the analytic ones.
    const SurfaceImmersion cl = clifford_torus();
    for (int k = 0; k < 8; ++k) {
        const double u = 2.0 * M_PI * (k * 16) / 128, v = 2.0 * M_PI * ((k * 48) % 128) / 128;
        const SurfaceJet a = cl.jet(u, v);
        const SurfaceJet b = loaded.jet(u, v);
        CHECK(norm(sub(a.x, b.x)) <= 1e-15);
        CHECK(norm(sub(a.xu, b.xu)) <= 1e-6);
        CHECK(norm(sub(a.xvv, b.xvv)) <= 1e-6);
    }

    // Bit-exact writer/reader: re-saving the loaded surface reproduces the file.
    const std::string path2 = temp_path("s3lab_grid_test2.txt");
    save_grid_surface(loaded, 128, 128, path2);
    std::ifstream f1(path), f2(path2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);

    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("coarse grids still load") {
    const std::string path = temp_path("s3lab_grid_coarse.txt");
    save_grid_surface(clifford_torus(), 8, 8, path);
    const SurfaceImmersion loaded = load_grid_surface(path);
    const double a = area(loaded, QuadratureGrid(8, 8));
    CHECK(std::abs(a - kTwoPiSq) / kTwoPiSq < 0.05);
    std::filesystem::remove(path);
}

TEST_CASE("grid surface error paths") {
    const std::string path = temp_path("s3lab_grid_bad.txt");
    {
        std::ofstream out(path);
        out << "8 8\n";
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                if (i == 3 && j == 5)
                    out << "3 5 0.25 0.25 0.25 0.25\n";  // norm 0.5
                else {
                    const double u = 2.0 * M_PI * i / 8, v = 2.0 * M_PI * j / 8;
                    const Vec4 x = clifford_torus().position(u, v);
                    char buf[160];
                    std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g %.17g %.17g\n", i, j, x[0],
                                  x[1], x[2], x[3]);
                    out << buf;
                }
            }
    }
    CHECK_THROWS_WITH_AS((void)load_grid_surface(path),
                         doctest::Contains("i=3 j=5"), std::runtime_error);
    {
        std::ofstream out(path);
        out << "8 8\n0 0 1 0 0 0\n";  // truncated
    }
    CHECK_THROWS_AS((void)load_grid_surface(path), std::runtime_error);
    {
        std::ofstream out(path);
        out << "not a header\n";
    }
    CHECK_THROWS_AS((void)load_grid_surface(path), std::runtime_error);
    CHECK_THROWS_AS((void)load_grid_surface(temp_path("missing_grid_file.txt")),
                    std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("fourier torus construction rules") {
    CHECK_THROWS_AS((void)fourier_torus(1, 0.15), std::invalid_argument);
    const SurfaceImmersion t = fourier_torus(4, 0.05);
    for (int k = 0; k < 32; ++k) {
        const Vec4 x = t.position(0.37 * k, 0.61 * k);
        CHECK(std::abs(norm(x) - 1.0) <= 1e-12);
    }
    // Identical seeds reproduce identical surfaces.
    const SurfaceImmersion t2 = fourier_torus(4, 0.05);
    CHECK(norm(sub(t.position(1.0, 2.0), t2.position(1.0, 2.0))) == 0.0);
}
