#include "s3lab/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "s3lab/bands.hpp"
#include "s3lab/links.hpp"
#include "s3lab/quadrature.hpp"
#include "s3lab/sphere.hpp"
#include "s3lab/surfaces.hpp"
#include "s3lab/tubes.hpp"

namespace s3lab {

namespace {

constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;

struct Tally {
    int failures = 0;

    void check(Report& rep, std::string name, double value, double tolerance, bool pass) {
        rep.add(std::move(name), value, tolerance, pass ? "pass" : "fail");
        if (!pass) ++failures;
    }
    void close(Report& rep, const std::string& criterion) {
        rep.add(criterion, failures == 0 ? 1.0 : 0.0, 0.0, failures == 0 ? "pass" : "fail");
        failures = 0;
    }
};

// Shared expensive artifacts: the random tori and their focal reports are
// used by three criteria.
struct RandomTorus {
    SurfaceImmersion surface;
    FocalReport focal;
};

std::vector<RandomTorus> make_random_tori(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.01, 0.05);
    std::vector<RandomTorus> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const std::uint64_t s = rng();
        const double a = amp(rng);
        SurfaceImmersion torus = fourier_torus(s, a);
        FocalParams fp;
        fp.curvature_grid = 192;
        fp.reach.resolution = 96;
        fp.reach.tolerance = 0.08;
        FocalReport rep = focal_radius(torus, fp);
        out.push_back(RandomTorus{std::move(torus), rep});
    }
    return out;
}

void criterion_1_volume(Report& rep, Tally& tally) {
    tally.check(rep, "c1.ball_volume_pi_minus_2pi2", ball_volume(M_PI) - kTwoPiSq, 0.0,
                ball_volume(M_PI) == kTwoPiSq);
    for (double s : {0.3, 1.0, M_PI / 2.0, 2.5}) {
        const double numeric =
            integrate_gl([](double t) { return 4.0 * M_PI * std::sin(t) * std::sin(t); }, 0.0, s,
                         64);
        tally.check(rep, "c1.ball_volume_quadrature_err_s" + std::to_string(s),
                    std::abs(numeric - ball_volume(s)), 1e-9,
                    std::abs(numeric - ball_volume(s)) <= 1e-9);
    }
    tally.close(rep, "criterion-1-volume-calibration");
}

void criterion_2_clifford(Report& rep, Tally& tally) {
    const SurfaceImmersion cl = clifford_torus();
    const QuadratureGrid grid(256, 256);
    const double a = area(cl, grid);
    const double w = willmore_energy(cl, grid);
    const double chi = gauss_bonnet_characteristic(cl, grid);
    const CurvatureFrame f = curvature_frame(cl, 0.37, 2.11);
    FocalParams fp;
    fp.curvature_grid = 256;
    fp.reach.resolution = 96;
    fp.reach.tolerance = 0.06;
    const FocalReport focal = focal_radius(cl, fp);

    tally.check(rep, "c2.area", a, 1e-8, std::abs(a - kTwoPiSq) <= 1e-8);
    tally.check(rep, "c2.willmore", w, 1e-8, std::abs(w - kTwoPiSq) <= 1e-8);
    tally.check(rep, "c2.kappa1", f.kappa1, 1e-9, std::abs(f.kappa1 - 1.0) <= 1e-9);
    tally.check(rep, "c2.kappa2", f.kappa2, 1e-9, std::abs(f.kappa2 + 1.0) <= 1e-9);
    tally.check(rep, "c2.focal_radius", focal.focal_radius, 5e-3,
                std::abs(focal.focal_radius - M_PI / 4.0) <= 5e-3);
    tally.check(rep, "c2.gauss_bonnet_chi", chi, 1e-8, std::abs(chi) <= 1e-8);
    tally.close(rep, "criterion-2-clifford-constants");
}

void criterion_3_tube_formula(Report& rep, Tally& tally) {
    const QuadratureGrid grid(128, 128);
    const std::pair<double, double> cases[10] = {{0.3, 0.25}, {0.4, 0.35},        {0.5, 0.45},
                                                 {0.6, 0.5},  {M_PI / 4, 0.7},    {M_PI / 4, M_PI / 4},
                                                 {0.9, 0.6},  {1.0, 0.5},         {1.1, 0.4},
                                                 {1.2, 0.3}};
    for (const auto& [a, r] : cases) {
        const SurfaceImmersion torus = rotation_torus(a);
        const double focal = std::min(a, M_PI / 2.0 - a);
        const TubeVolume tv = tube_volume_numeric(TubeSpec(torus, r), grid, 32, focal);
        const double closed = std::sin(2.0 * r) * area(torus, grid);
        const double tol = 1e-6 * (1.0 + tv.value);
        std::ostringstream name;
        name << "c3.rotation_a" << a << "_r" << r;
        tally.check(rep, name.str(), std::abs(tv.value - closed), tol,
                    std::abs(tv.value - closed) <= tol);
    }
    for (const auto& [rho, r] : {std::pair{M_PI / 3.0, 0.2}, std::pair{1.1, 0.35}}) {
        const SurfaceImmersion sph = geodesic_sphere(rho);
        const TubeVolume tv = tube_volume_numeric(TubeSpec(sph, r), QuadratureGrid(128, 256), 32,
                                                  std::min(rho, M_PI - rho));
        const double oracle = ball_volume(rho + r) - ball_volume(rho - r);
        std::ostringstream name;
        name << "c3.sphere_rho" << rho << "_r" << r;
        tally.check(rep, name.str(), std::abs(tv.value - oracle), 1e-6,
                    std::abs(tv.value - oracle) <= 1e-6);
    }
    tally.close(rep, "criterion-3-tube-formula");
}

void criterion_4_chain(Report& rep, Tally& tally, const std::vector<RandomTorus>& tori) {
    const QuadratureGrid grid(256, 256);
    const ChainReport cl =
        verify_inequality_chain(clifford_torus(), M_PI / 4.0, grid, M_PI / 4.0);
    double max_eq_gap = 0.0;
    bool all_hold = !cl.vacuous;
    for (const ChainRow& row : cl.rows) {
        max_eq_gap = std::max(max_eq_gap, std::abs(row.lhs - row.rhs));
        if (row.asserted && !row.holds) all_hold = false;
    }
    tally.check(rep, "c4.clifford_chain_max_equality_gap", max_eq_gap, 1e-6,
                all_hold && max_eq_gap <= 1e-6);

    const QuadratureGrid tgrid(192, 192);
    for (std::size_t i = 0; i < tori.size(); ++i) {
        const double r = tori[i].focal.focal_radius;
        const ChainReport chain =
            verify_inequality_chain(tori[i].surface, r, tgrid, r);
        double worst_slack = 1e300;
        bool ok = !chain.vacuous;
        for (const ChainRow& row : chain.rows) {
            if (!row.asserted) continue;
            worst_slack = std::min(worst_slack, row.rhs - row.lhs);
            if (!row.holds) ok = false;
        }
        tally.check(rep, "c4.random_torus_" + std::to_string(i) + "_worst_slack", worst_slack,
                    1e-6, ok && worst_slack >= -1e-6);
    }
    tally.close(rep, "criterion-4-inequality-chain");
}

void criterion_5_willmore(Report& rep, Tally& tally, const std::vector<RandomTorus>& tori) {
    const QuadratureGrid grid(128, 128);
    for (int k = 0; k < 10; ++k) {
        const double a = 0.3 + 0.1 * k;
        const double w = willmore_energy(rotation_torus(a), grid);
        std::ostringstream name;
        name << "c5.rotation_willmore_a" << a;
        tally.check(rep, name.str(), w, 1e-6, w >= kTwoPiSq - 1e-6);
    }
    const QuadratureGrid tgrid(192, 192);
    for (std::size_t i = 0; i < tori.size(); ++i) {
        const double w = willmore_energy(tori[i].surface, tgrid);
        tally.check(rep, "c5.random_torus_" + std::to_string(i) + "_willmore", w, 1e-6,
                    w >= kTwoPiSq - 1e-6);
    }
    for (double rho : {0.3, M_PI / 3.0, 0.8, 1.2}) {
        const double w = willmore_energy(geodesic_sphere(rho), QuadratureGrid(128, 256));
        std::ostringstream name;
        name << "c5.sphere_willmore_rho" << rho;
        tally.check(rep, name.str(), w, 1e-8, std::abs(w - 4.0 * M_PI) <= 1e-8);
    }
    tally.close(rep, "criterion-5-willmore");
}

void criterion_6_focal(Report& rep, Tally& tally, const std::vector<RandomTorus>& tori) {
    for (std::size_t i = 0; i < tori.size(); ++i) {
        const double f = tori[i].focal.focal_radius;
        tally.check(rep, "c6.random_torus_" + std::to_string(i) + "_focal", f, 5e-3,
                    f <= M_PI / 4.0 + 5e-3);
    }
    for (double a : {0.3, 0.5, M_PI / 4.0, 1.0}) {
        FocalParams fp;
        fp.curvature_grid = 192;
        fp.reach.resolution = 128;
        fp.reach.tolerance = 0.06;
        const FocalReport f = focal_radius(rotation_torus(a), fp);
        const double expect = std::min(a, M_PI / 2.0 - a);
        std::ostringstream name;
        name << "c6.rotation_focal_a" << a;
        tally.check(rep, name.str(), f.focal_radius, 5e-3,
                    std::abs(f.focal_radius - expect) <= 5e-3);
    }
    tally.close(rep, "criterion-6-focal-radius");
}

void criterion_7_gehring(Report& rep, Tally& tally, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> amp(0.02, 0.30);
    int tested = 0;
    int attempts = 0;
    double worst = 0.0;
    bool all_ok = true;
    while (tested < 50 && attempts < 200) {
        ++attempts;
        const std::uint64_t s = rng();
        const double a = amp(rng);
        FourierLoopFamily fam = FourierLoopFamily::perturbed_hopf(s, a);
        CurvePair pair = fam.pair(512);
        int lk;
        try {
            lk = linking_number(pair);
        } catch (const std::exception&) {
            continue;
        }
        if (lk == 0) continue;
        ++tested;
        const double d = set_distance(pair, true);
        worst = std::max(worst, d);
        if (d > M_PI / 2.0 + 1e-6) all_ok = false;
    }
    tally.check(rep, "c7.linked_pairs_tested", tested, 0.0, tested == 50);
    tally.check(rep, "c7.linked_pairs_max_distance", worst, 1e-6,
                all_ok && worst <= M_PI / 2.0 + 1e-6);

    auto [ha, hb] = hopf_pair();
    CurvePair hopf(ha, hb, 512, 512);
    const double hd = set_distance(hopf, true);
    const int hlk = linking_number(hopf);
    tally.check(rep, "c7.hopf_distance", hd, 1e-10, std::abs(hd - M_PI / 2.0) <= 1e-10);
    tally.check(rep, "c7.hopf_linking_abs", std::abs(hlk), 0.0, std::abs(hlk) == 1);

    const auto t0 = std::chrono::steady_clock::now();
    FourierLoopFamily start = FourierLoopFamily::perturbed_hopf(seed, 0.05);
    SearchConfig cfg;
    cfg.seed = seed;
    SearchResult res = extremal_search(start, cfg);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    tally.check(rep, "c7.search_final_distance", res.best_distance, 0.05,
                res.best_distance >= M_PI / 2.0 - 0.05 &&
                    res.best_distance <= M_PI / 2.0 + 1e-6);
    tally.check(rep, "c7.search_elapsed_seconds", elapsed, 300.0, elapsed < 300.0);
    tally.close(rep, "criterion-7-gehring-bound");
}

void criterion_8_linking(Report& rep, Tally& tally, std::uint64_t seed) {
    struct Case {
        std::string name;
        CurvePair pair;
        int expect;  // 0 means "whatever the baseline is"
    };
    auto axis = great_circle(Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1});
    auto [ha, hb] = hopf_pair();
    std::vector<Case> cases;
    cases.push_back({"hopf", CurvePair(ha, hb, 256, 256), 0});
    cases.push_back({"knot23", CurvePair(torus_knot_curve(2, 3, M_PI / 4), axis, 512, 256), 2});
    cases.push_back({"knot34", CurvePair(torus_knot_curve(3, 4, 0.9), axis, 768, 256), 3});
    cases.push_back(
        {"fourier_a", FourierLoopFamily::perturbed_hopf(seed + 1, 0.2).pair(384), 0});
    cases.push_back(
        {"fourier_b", FourierLoopFamily::perturbed_hopf(seed + 2, 0.25).pair(384), 0});

    const auto design = sphere_design(600);
    for (const Case& c : cases) {
        const int base = linking_number(c.pair);
        bool stable = true;
        // 20 alternative admissible poles, deterministic order.
        const auto sa = c.pair.a.sample(256);
        const auto sb = c.pair.b.sample(256);
        int used = 0;
        for (const Vec4& pole : design) {
            if (used == 20) break;
            double clear = M_PI;
            for (const Vec4& p : sa) clear = std::min(clear, dist_s3(pole, p));
            for (const Vec4& p : sb) clear = std::min(clear, dist_s3(pole, p));
            if (clear <= 0.25) continue;
            ++used;
            if (linking_number(c.pair, pole) != base) stable = false;
        }
        // Resolution doubling.
        CurvePair doubled(c.pair.a, c.pair.b, 2 * c.pair.m_a, 2 * c.pair.m_b);
        if (linking_number(doubled) != base) stable = false;
        const bool expect_ok = c.expect == 0 || base == c.expect;
        tally.check(rep, "c8.linking_stable_" + c.name, base, 0.0,
                    stable && used == 20 && expect_ok);
    }
    tally.close(rep, "criterion-8-linking-robustness");
}

void criterion_9_convexity(Report& rep, Tally& tally, std::uint64_t seed) {
    // Point.
    std::vector<Vec4> point{{1, 0, 0, 0}};
    const ConvexityReport cp = complement_convexity_check(point, 3.0 * M_PI / 5.0, 1000, seed);
    tally.check(rep, "c9.point_violations", cp.violations, 0.0,
                !cp.empty && cp.pairs_checked == 1000 && cp.violations == 0);

    // Small circle, 100 samples, r = 0.52 pi.
    std::vector<Vec4> circle;
    const double rho = 0.3;
    for (int i = 0; i < 100; ++i) {
        const double t = 2.0 * M_PI * i / 100;
        circle.push_back(Vec4{std::cos(rho), std::sin(rho) * std::cos(t),
                              std::sin(rho) * std::sin(t), 0.0});
    }
    const ConvexityReport cc = complement_convexity_check(circle, 0.52 * M_PI, 1000, seed + 1);
    tally.check(rep, "c9.circle_violations", cc.violations, 0.0,
                !cc.empty && cc.pairs_checked == 1000 && cc.violations == 0);

    // A wobbly closed curve contained in a small cap.
    std::vector<Vec4> curve;
    for (int i = 0; i < 200; ++i) {
        const double t = 2.0 * M_PI * i / 200;
        Vec4 y{1.0, 0.35 * std::cos(t), 0.35 * std::sin(t), 0.12 * std::sin(2.0 * t)};
        curve.push_back(normalized(y));
    }
    const ConvexityReport cv = complement_convexity_check(curve, 0.52 * M_PI, 1000, seed + 2);
    tally.check(rep, "c9.curve_violations", cv.violations, 0.0,
                !cv.empty && cv.pairs_checked == 1000 && cv.violations == 0);

    // Hopf great circle: complement of the 0.55 pi neighborhood is empty.
    std::vector<Vec4> hopf;
    for (int i = 0; i < 256; ++i) {
        const double t = 2.0 * M_PI * i / 256;
        hopf.push_back(Vec4{std::cos(t), std::sin(t), 0.0, 0.0});
    }
    const ConvexityReport ch = complement_convexity_check(hopf, 0.55 * M_PI, 10, seed + 3);
    tally.check(rep, "c9.hopf_circle_empty", ch.empty ? 1.0 : 0.0, 0.0, ch.empty);
    tally.close(rep, "criterion-9-convexity");
}

void criterion_10_bands(Report& rep, Tally& tally) {
    const SurfaceImmersion cl = clifford_torus();
    const FocalReport focal{M_PI / 4.0, M_PI / 2.0, 0.02, M_PI / 4.0, 0.0, 0.0};
    double family_max = 0.0;
    for (double r : {0.3, 0.5, 0.7, 0.98 * M_PI / 4.0}) {
        const Band band = build_tube_band(cl, r, focal);
        const BandWidthReport w = band_width(band, BandResolution::cubic(64));
        family_max = std::max(family_max, w.width);
        std::ostringstream name;
        name << "c10.width_r" << r;
        tally.check(rep, name.str(), w.width, 0.02 * 2.0 * r,
                    std::abs(w.width - 2.0 * r) <= 0.02 * 2.0 * r);
    }
    tally.check(rep, "c10.family_max_width", family_max, 0.02 * M_PI / 2.0,
                family_max <= 1.02 * M_PI / 2.0);
    for (double r : {0.7, 0.98 * M_PI / 4.0}) {
        const Band band = build_tube_band(cl, r, focal);
        const double w64 = band_width(band, BandResolution::cubic(64)).width;
        const double w128 = band_width(band, BandResolution::cubic(128)).width;
        std::ostringstream name;
        name << "c10.doubling_r" << r;
        tally.check(rep, name.str(), w128 - w64, 1e-9, w128 <= w64 + 1e-9);
    }
    tally.close(rep, "criterion-10-band-width");
}

void run_criteria(Report& rep, const VerifyOptions& options) {
    Tally tally;
    criterion_1_volume(rep, tally);
    criterion_2_clifford(rep, tally);
    criterion_3_tube_formula(rep, tally);
    const std::vector<RandomTorus> tori = make_random_tori(options.seed, 20);
    criterion_4_chain(rep, tally, tori);
    criterion_5_willmore(rep, tally, tori);
    criterion_6_focal(rep, tally, tori);
    criterion_7_gehring(rep, tally, options.seed);
    criterion_8_linking(rep, tally, options.seed);
    criterion_9_convexity(rep, tally, options.seed);
    criterion_10_bands(rep, tally);
}

}  // namespace

Report verify_all(const VerifyOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify-all";
    rep.config["seed"] = std::to_string(options.seed);
    rep.config["determinism"] = options.include_determinism ? "true" : "false";
    run_criteria(rep, options);

    if (options.include_determinism) {
        Report again;
        again.command = rep.command;
        again.config = rep.config;
        run_criteria(again, options);
        const bool identical = rep.to_json() == again.to_json();
        Tally tally;
        tally.check(rep, "c11.reports_byte_identical", identical ? 1.0 : 0.0, 0.0, identical);
        tally.close(rep, "criterion-11-determinism");
    }
    rep.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace s3lab
