#include <cmath>
#include <random>

#include <doctest.h>

#include "s3lab/quadrature.hpp"
#include "s3lab/sphere.hpp"

using namespace s3lab;

namespace {

SpherePoint random_point(std::mt19937_64& rng, int dim = 3) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(dim + 1);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (double& x : v) {
            x = gauss(rng);
            n2 += x * x;
        }
    } while (n2 < 1e-8);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : v) x *= inv;
    return SpherePoint(std::move(v));
}

}  // namespace

TEST_CASE("geodesic distance basics") {
    const SpherePoint e0({1, 0, 0, 0});
    const SpherePoint e1({0, 1, 0, 0});
    const SpherePoint anti({-1, 0, 0, 0});
    CHECK(geodesic_distance(e0, e1) == doctest::Approx(M_PI / 2).epsilon(1e-15));
    CHECK(geodesic_distance(e0, e0) == 0.0);
    CHECK(geodesic_distance(e0, anti) == doctest::Approx(M_PI).epsilon(1e-15));

    const SpherePoint p5({1, 0, 0, 0, 0});
    CHECK_THROWS_AS((void)geodesic_distance(e0, p5), std::invalid_argument);
}

TEST_CASE("geodesic distance is a metric on random triples") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 200; ++k) {
        const SpherePoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
        const double dab = geodesic_distance(a, b);
        CHECK(dab == geodesic_distance(b, a));
        CHECK(dab >= 0.0);
        CHECK(geodesic_distance(a, c) <= dab + geodesic_distance(b, c) + 1e-10);
    }
}

TEST_CASE("exp map") {
    const SpherePoint base({1, 0, 0, 0});
    const TangentVector v(base, {0, 1, 0, 0});
    const SpherePoint quarter = exp_map(v, M_PI / 2);
    CHECK(quarter[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(geodesic_distance(exp_map(v, 0.0), base) == 0.0);

    const TangentVector w(base, {0, 0, 1, 0});
    const SpherePoint eighth = exp_map(w, M_PI / 4);
    CHECK(eighth[0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
    CHECK(eighth[2] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));

    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        const SpherePoint p = random_point(rng);
        const SpherePoint q = random_point(rng);
        const TangentVector u = log_map(p, q);
        const SpherePoint out = exp_map(u, 1.2345);
        double n = 0.0;
        for (double x : out.coords()) n += x * x;
        CHECK(std::abs(std::sqrt(n) - 1.0) <= 1e-12);
        const double t = 0.77;
        CHECK(geodesic_distance(exp_map(u, t), p) == doctest::Approx(t).epsilon(1e-10));
    }

    CHECK_THROWS_AS((void)exp_map(TangentVector(base, {0, 0.5, 0, 0}), 1.0),
                    std::invalid_argument);
}

TEST_CASE("log map inverts exp map") {
    const SpherePoint p({1, 0, 0, 0});
    const SpherePoint q({0, 1, 0, 0});
    const TangentVector u = log_map(p, q);
    CHECK(u.dir[1] == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        const SpherePoint a = random_point(rng), b = random_point(rng);
        const TangentVector dir = log_map(a, b);
        const SpherePoint back = exp_map(dir, geodesic_distance(a, b));
        CHECK(geodesic_distance(back, b) <= 1e-9);
    }

    const SpherePoint anti({-1, 0, 0, 0});
    CHECK_THROWS_AS((void)log_map(p, anti), std::invalid_argument);
    CHECK_THROWS_AS((void)log_map(p, p), std::invalid_argument);
}

TEST_CASE("tangent vectors must be orthogonal to their base") {
    const SpherePoint p({1, 0, 0, 0});
    CHECK_THROWS_AS(TangentVector(p, {0.1, 1, 0, 0}), std::invalid_argument);
}

TEST_CASE("ball volume") {
    CHECK(ball_volume(M_PI) == 2.0 * M_PI * M_PI);
    CHECK(ball_volume(M_PI / 2) == M_PI * M_PI);
    CHECK(2.0 * ball_volume(M_PI / 2) == ball_volume(M_PI));

    // Independent oracle: quadrature of the sphere-area integrand 4 pi sin^2.
    for (double s : {0.1, 0.3, 1.0, M_PI / 2, 2.2, 3.0}) {
        const double oracle = integrate_gl(
            [](double t) { return 4.0 * M_PI * std::sin(t) * std::sin(t); }, 0.0, s, 64);
        CHECK(std::abs(ball_volume(s) - oracle) <= 1e-9);
    }

    double prev = -1.0;
    for (int k = 0; k <= 32; ++k) {
        const double v = ball_volume(M_PI * k / 32);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS((void)ball_volume(-0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)ball_volume(3.2), std::invalid_argument);
}

TEST_CASE("stereographic projection") {
    const SpherePoint pole({0, 0, 0, 1});
    const StereographicChart chart(pole);

    const auto origin = chart.project(SpherePoint({0, 0, 0, -1}));
    for (double x : origin) CHECK(std::abs(x) <= 1e-15);

    const auto eq = chart.project(SpherePoint({1, 0, 0, 0}));
    double n = 0.0;
    for (double x : eq) n += x * x;
    CHECK(std::sqrt(n) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        SpherePoint p = random_point(rng);
        if (geodesic_distance(p, pole) <= 1e-3) continue;
        const SpherePoint back = chart.unproject(chart.project(p));
        CHECK(geodesic_distance(back, p) <= 1e-10);
    }

    CHECK_THROWS_AS((void)chart.project(pole), std::invalid_argument);

    // Differential agrees with finite differences of the chart.
    const SpherePoint p({0.5, 0.5, 0.5, -0.5});
    const std::vector<double> w{0.5, -0.5, 0.5, 0.5};  // tangent at p
    const auto push = chart.push_forward(p, w);
    const double h = 1e-6;
    std::vector<double> moved(4);
    for (int i = 0; i < 4; ++i) moved[i] = p[i] + h * w[i];
    double nn = 0.0;
    for (double x : moved) nn += x * x;
    for (double& x : moved) x /= std::sqrt(nn);
    const auto y1 = chart.project(SpherePoint(moved));
    const auto y0 = chart.project(p);
    for (std::size_t i = 0; i < y0.size(); ++i)
        CHECK(push[i] == doctest::Approx((y1[i] - y0[i]) / h).epsilon(1e-4));
}

TEST_CASE("dual great subspheres of S^4 sit at distance pi/2") {
    // A = S^1 in coordinates (0, 1), B = S^2 in coordinates (2, 3, 4).
    double min_d = M_PI, max_d = 0.0;
    for (int i = 0; i < 24; ++i) {
        const double a = 2.0 * M_PI * i / 24;
        const SpherePoint pa({std::cos(a), std::sin(a), 0, 0, 0});
        for (int j = 0; j < 24; ++j)
            for (int k = 0; k < 12; ++k) {
                const double th = 2.0 * M_PI * j / 24, ph = M_PI * (k + 0.5) / 12;
                const SpherePoint pb({0, 0, std::sin(ph) * std::cos(th),
                                      std::sin(ph) * std::sin(th), std::cos(ph)});
                const double d = geodesic_distance(pa, pb);
                min_d = std::min(min_d, d);
                max_d = std::max(max_d, d);
            }
    }
    CHECK(min_d == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(max_d == doctest::Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("periodic quadrature") {
    const QuadratureGrid g64(64, 64);
    const auto ones = sample_periodic(g64, [](double, double) { return 1.0; });
    CHECK(integrate_periodic(ones, g64) == (2.0 * M_PI) * (2.0 * M_PI));

    const auto sin2 = sample_periodic(g64, [](double u, double) { return std::sin(u) * std::sin(u); });
    CHECK(integrate_periodic(sin2, g64) ==
          doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));

    const auto mode = sample_periodic(
        g64, [](double u, double v) { return std::cos(3 * u) * std::cos(5 * v); });
    CHECK(std::abs(integrate_periodic(mode, g64)) <= 1e-12);

    // Exactness on every Fourier mode below the Nyquist limit.
    for (int k = 1; k < 32; k += 7)
        for (int l = 0; l < 32; l += 9) {
            const auto f = sample_periodic(g64, [k, l](double u, double v) {
                return std::sin(k * u + 0.3) * std::cos(l * v - 0.1);
            });
            CHECK(std::abs(integrate_periodic(f, g64)) <= 1e-12);
        }

    CHECK_THROWS_AS((void)QuadratureGrid(4, 64), std::invalid_argument);
    std::vector<double> wrong(100, 1.0);
    CHECK_THROWS_AS((void)integrate_periodic(wrong, g64), std::invalid_argument);
}

TEST_CASE("periodic quadrature converges spectrally on analytic integrands") {
    const double a = 1.05;
    const double exact = std::pow(2.0 * M_PI / std::sqrt(a * a - 1.0), 2);
    auto f = [a](double u, double v) { return 1.0 / ((a - std::cos(u)) * (a - std::cos(v))); };
    const QuadratureGrid g32(32, 32), g64(64, 64);
    const double e32 = std::abs(integrate_periodic(sample_periodic(g32, f), g32) - exact);
    const double e64 = std::abs(integrate_periodic(sample_periodic(g64, f), g64) - exact);
    CHECK(e32 / e64 >= 16.0);
}

TEST_CASE("Gauss-Legendre rules") {
    // Exact for polynomials of degree < 2n.
    const double i5 = integrate_gl([](double x) { return x * x * x * x * x; }, 0.0, 1.0, 8);
    CHECK(i5 == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    const double is = integrate_gl([](double x) { return std::sin(x); }, 0.0, M_PI, 32);
    CHECK(is == doctest::Approx(2.0).epsilon(1e-14));
    const auto& rule = gauss_legendre(32);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sphere point construction normalizes and validates") {
    const SpherePoint p({1.0 + 5e-9, 0, 0, 0});
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(SpherePoint({1.1, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(SpherePoint({0.5}), std::invalid_argument);
}
