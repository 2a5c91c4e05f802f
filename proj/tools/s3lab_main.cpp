// s3lab: command line laboratory for curves, surfaces, tubes and bands in the
// round 3-sphere. Every command emits a deterministic JSON or CSV report.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s3lab/bands.hpp"
#include "s3lab/links.hpp"
#include "s3lab/report.hpp"
#include "s3lab/sphere.hpp"
#include "s3lab/surfaces.hpp"
#include "s3lab/tubes.hpp"
#include "s3lab/verify.hpp"

namespace {

using namespace s3lab;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

SurfaceImmersion parse_surface(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string& name = parts[0];
    auto need = [&](std::size_t n) {
        if (parts.size() != n + 1)
            throw std::invalid_argument("surface '" + name + "' expects " + std::to_string(n) +
                                        " parameter(s)");
    };
    if (name == "clifford" || name == "clifford_torus") {
        need(0);
        return clifford_torus();
    }
    if (name == "rotation" || name == "rotation_torus") {
        need(1);
        return rotation_torus(std::stod(parts[1]));
    }
    if (name == "sphere" || name == "geodesic_sphere") {
        need(1);
        return geodesic_sphere(std::stod(parts[1]));
    }
    if (name == "fourier" || name == "fourier_torus") {
        need(2);
        return fourier_torus(std::stoull(parts[1]), std::stod(parts[2]));
    }
    if (name == "grid") {
        need(1);
        return load_grid_surface(parts[1]);
    }
    throw std::invalid_argument(
        "unknown surface '" + name +
        "' (expected clifford | rotation:A | sphere:RHO | fourier:SEED:AMP | grid:PATH)");
}

CurvePair parse_pair(const std::string& spec, int samples) {
    const auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "hopf") {
        auto [a, b] = hopf_pair();
        return CurvePair(std::move(a), std::move(b), samples, samples);
    }
    if (name == "hopf-perturbed") {
        if (parts.size() != 3)
            throw std::invalid_argument("hopf-perturbed expects :SEED:AMPLITUDE");
        return FourierLoopFamily::perturbed_hopf(std::stoull(parts[1]), std::stod(parts[2]))
            .pair(samples);
    }
    if (name == "knot-axis") {
        if (parts.size() != 4) throw std::invalid_argument("knot-axis expects :P:Q:A");
        auto fam = FourierLoopFamily::knot_axis(std::stoi(parts[1]), std::stoi(parts[2]),
                                                std::stod(parts[3]));
        return fam.pair(samples);
    }
    throw std::invalid_argument("unknown pair '" + name +
                                "' (expected hopf | hopf-perturbed:SEED:AMP | knot-axis:P:Q:A)");
}

std::vector<Vec4> parse_set(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "point") return {Vec4{1, 0, 0, 0}};
    if (name == "circle") {
        if (parts.size() != 2) throw std::invalid_argument("circle expects :RHO");
        const double rho = std::stod(parts[1]);
        std::vector<Vec4> out;
        for (int i = 0; i < 128; ++i) {
            const double t = 2.0 * M_PI * i / 128;
            out.push_back(Vec4{std::cos(rho), std::sin(rho) * std::cos(t),
                               std::sin(rho) * std::sin(t), 0.0});
        }
        return out;
    }
    if (name == "hopf-circle") {
        std::vector<Vec4> out;
        for (int i = 0; i < 256; ++i) {
            const double t = 2.0 * M_PI * i / 256;
            out.push_back(Vec4{std::cos(t), std::sin(t), 0.0, 0.0});
        }
        return out;
    }
    if (name == "loop") {
        if (parts.size() != 3) throw std::invalid_argument("loop expects :SEED:AMP");
        auto fam = FourierLoopFamily::perturbed_hopf(std::stoull(parts[1]), std::stod(parts[2]));
        std::vector<Vec4> out;
        for (int i = 0; i < 256; ++i) out.push_back(fam.position(0, 2.0 * M_PI * i / 256));
        return out;
    }
    throw std::invalid_argument("unknown set '" + name +
                                "' (expected point | circle:RHO | hopf-circle | loop:SEED:AMP)");
}

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::string surface;
    std::string pair;
    std::string set_spec;
    std::string trajectory_path;
    double radius = -1.0;
    double level = -1.0;
    int resolution = -1;
    int nt = -1;
    int pairs = -1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool degrees = false;
};

RunConfig resolve_config(const std::string& command, const CliOptions& opt) {
    RunConfig cfg = opt.config_path.empty() ? RunConfig(command)
                                            : RunConfig::from_file(opt.config_path, command);
    auto set_if = [&](const std::string& key, bool given, const std::string& value) {
        if (given) cfg.set(key, value);
    };
    auto angle = [&](double x) { return opt.degrees ? x * M_PI / 180.0 : x; };
    auto full = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    set_if("surface", !opt.surface.empty(), opt.surface);
    set_if("pair", !opt.pair.empty(), opt.pair);
    set_if("set", !opt.set_spec.empty(), opt.set_spec);
    set_if("radius", opt.radius >= 0.0, full(angle(opt.radius)));
    set_if("level", opt.level >= 0.0, full(angle(opt.level)));
    set_if("resolution", opt.resolution > 0, std::to_string(opt.resolution));
    set_if("nt", opt.nt > 0, std::to_string(opt.nt));
    set_if("pairs", opt.pairs > 0, std::to_string(opt.pairs));
    set_if("seed", opt.seed_given, std::to_string(opt.seed));
    set_if("format", true, opt.format);
    set_if("trajectory", !opt.trajectory_path.empty(), opt.trajectory_path);
    cfg.validate();
    return cfg;
}

FocalReport focal_with(const SurfaceImmersion& s, int resolution) {
    FocalParams fp;
    fp.curvature_grid = std::max(128, resolution);
    fp.reach.resolution = std::max(96, resolution / 2);
    fp.reach.tolerance = 0.08;
    return focal_radius(s, fp);
}

Report run_command(const RunConfig& cfg) {
    Report rep;
    rep.command = cfg.command();
    rep.config = cfg.values();
    const std::string cmd = cfg.command();
    const int res = cfg.get_int("resolution", kDefaultReportGrid);
    const std::uint64_t seed = cfg.get_seed();

    if (cmd == "surface-report") {
        const SurfaceImmersion s = parse_surface(cfg.get("surface", "clifford"));
        const QuadratureGrid grid(res, res);
        rep.add("area", area(s, grid), 1e-8, "info");
        rep.add("willmore_energy", willmore_energy(s, grid), 1e-8, "info");
        const double chi = gauss_bonnet_characteristic(s, grid);
        rep.add("gauss_bonnet_chi", chi, 1e-6, "info");
        const int expected_chi = s.topology() == SurfaceTopology::torus ? 0 : 2;
        rep.add("gauss_bonnet_integer_gap", std::abs(chi - expected_chi), 1e-6,
                std::abs(chi - expected_chi) <= 1e-6 ? "pass" : "fail");
        double mk = 0.0;
        const double cf = curvature_focal_radius(s, grid, nullptr, nullptr, &mk);
        rep.add("curvature_focal_radius", cf, 1e-6, "info");
        rep.add("max_abs_principal_curvature", mk, 1e-6, "info");
    } else if (cmd == "tube-volume") {
        const SurfaceImmersion s = parse_surface(cfg.get("surface", "clifford"));
        const double r = cfg.get_double("radius", M_PI / 8.0);
        const QuadratureGrid grid(res, res);
        const FocalReport focal = focal_with(s, res);
        const TubeSpec spec(s, r);
        const TubeVolume tv = tube_volume_numeric(spec, grid, cfg.get_int("nt", 32),
                                                  focal.focal_radius);
        const double closed = tube_volume_closed(spec, grid);
        rep.add("tube_volume_numeric", tv.value, 1e-6, "info");
        rep.add("tube_volume_closed", closed, 1e-6, "info");
        rep.add("numeric_vs_closed_gap", std::abs(tv.value - closed),
                1e-6 * (1.0 + tv.value),
                tv.beyond_focal || std::abs(tv.value - closed) <= 1e-6 * (1.0 + tv.value)
                    ? (tv.beyond_focal ? "vacuous" : "pass")
                    : "fail");
        rep.add("beyond_focal_radius", tv.beyond_focal ? 1.0 : 0.0, 0.0, "info");
    } else if (cmd == "focal-radius") {
        const SurfaceImmersion s = parse_surface(cfg.get("surface", "clifford"));
        const FocalReport focal = focal_with(s, res);
        rep.add("curvature_focal", focal.curvature_focal, 1e-6, "info");
        rep.add("reach_estimate", focal.reach_value, focal.reach_tolerance, "info");
        rep.add("focal_radius", focal.focal_radius, focal.reach_tolerance, "info");
        rep.add("argmin_u", focal.argmin_u, 0.0, "info");
        rep.add("argmin_v", focal.argmin_v, 0.0, "info");
        rep.add("focal_within_half_pi", focal.focal_radius, 1e-9,
                focal.focal_radius <= M_PI / 2.0 + 1e-9 ? "pass" : "fail");
    } else if (cmd == "verify-chain") {
        const SurfaceImmersion s = parse_surface(cfg.get("surface", "clifford"));
        const double r = cfg.get_double("radius", M_PI / 4.0);
        const QuadratureGrid grid(res, res);
        const FocalReport focal = focal_with(s, res);
        const ChainReport chain = verify_inequality_chain(s, r, grid, focal.focal_radius);
        rep.add("radius", chain.radius, 0.0, "info");
        rep.add("focal_radius", chain.focal, 0.0, "info");
        rep.add("vacuous", chain.vacuous ? 1.0 : 0.0, 0.0, chain.vacuous ? "vacuous" : "info");
        rep.add("area", chain.area, 1e-8, "info");
        rep.add("willmore_energy", chain.willmore, 1e-8, "info");
        rep.add("tube_volume", chain.tube_volume, 1e-6, "info");
        for (const ChainRow& row : chain.rows) {
            rep.add(row.id + ".lhs", row.lhs, 1e-6, "info");
            rep.add(row.id + ".rhs", row.rhs, 1e-6, "info");
            rep.add(row.id, row.rhs - row.lhs, 1e-6,
                    !row.asserted ? "skipped" : (row.holds ? "pass" : "fail"));
        }
    } else if (cmd == "link-distance") {
        CurvePair pair = parse_pair(cfg.get("pair", "hopf"), std::min(res, 1024));
        rep.add("distance_coarse", set_distance(pair, false), 1e-6, "info");
        rep.add("distance_refined", set_distance(pair, true), 1e-9, "info");
    } else if (cmd == "link-number") {
        CurvePair pair = parse_pair(cfg.get("pair", "hopf"), std::min(res, 1024));
        rep.add("linking_number", linking_number(pair), 0.0, "info");
    } else if (cmd == "gehring-search") {
        FourierLoopFamily fam = FourierLoopFamily::perturbed_hopf(
            seed, cfg.get_double("amplitude", 0.05));
        SearchConfig sc;
        sc.seed = seed;
        SearchResult result = extremal_search(fam, sc);
        if (cfg.has("trajectory"))
            write_trajectory_csv(cfg.get("trajectory", ""), result.trajectory);
        rep.add("final_distance", result.best_distance, 1e-6, "info");
        rep.add("linking_number", result.linking, 0.0, "info");
        rep.add("iterations", result.iterations, 0.0, "info");
        rep.add("distance_bound", result.best_distance, 1e-6,
                result.best_distance <= M_PI / 2.0 + 1e-6 ? "pass" : "fail");
    } else if (cmd == "convexity-check") {
        const std::vector<Vec4> a = parse_set(cfg.get("set", "point"));
        const double r = cfg.get_double("radius", 0.55 * M_PI);
        const ConvexityReport cr =
            complement_convexity_check(a, r, cfg.get_int("pairs", 1000), seed);
        rep.add("empty_complement", cr.empty ? 1.0 : 0.0, 0.0, "info");
        rep.add("pairs_checked", cr.pairs_checked, 0.0, "info");
        rep.add("draws", static_cast<double>(cr.draws), 0.0, "info");
        rep.add("violations", cr.violations, 0.0,
                cr.violations == 0 ? "pass" : "fail");
        rep.add("min_margin", cr.min_margin, 1e-6, "info");
    } else if (cmd == "band-width") {
        const SurfaceImmersion s = parse_surface(cfg.get("surface", "clifford"));
        const double r = cfg.get_double("radius", 0.5);
        const FocalReport focal = focal_with(s, std::max(res, 128));
        const Band band = build_tube_band(s, r, focal);
        const int n = cfg.get_int("resolution", 64);
        const BandWidthReport w = band_width(band, BandResolution::cubic(n));
        rep.add("width", w.width, w.error_bound, "info");
        rep.add("error_bound", w.error_bound, 0.0, "info");
        rep.add("nominal_2r", 2.0 * r, 0.0, "info");
        rep.add("width_bound", w.width, 0.02 * M_PI / 2.0,
                w.width <= 1.02 * M_PI / 2.0 ? "pass" : "fail");
    } else if (cmd == "verify-all") {
        VerifyOptions opt;
        opt.seed = seed;
        opt.include_determinism = cfg.get("determinism", "true") != "false";
        Report inner = verify_all(opt);
        rep.results = std::move(inner.results);
    } else {
        throw std::invalid_argument("unknown command '" + cmd + "'");
    }
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"s3lab: numerical geometry of curves, surfaces, tubes and bands in S^3"};
    app.require_subcommand(1);

    CliOptions opt;
    const std::vector<std::string> commands = {
        "surface-report", "tube-volume",    "focal-radius",    "verify-chain", "link-distance",
        "link-number",    "gehring-search", "convexity-check", "band-width",   "verify-all"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "key = value config file");
        sub->add_option("--out", opt.out_path, "report output path (atomic write)");
        sub->add_option("--format", opt.format, "json | csv")->default_val("json");
        sub->add_option("--seed", opt.seed, "RNG seed")->each([&](const std::string&) {
            opt.seed_given = true;
        });
        sub->add_option("--resolution", opt.resolution, "grid resolution");
        sub->add_option("--radius", opt.radius, "radius (radians unless --degrees)");
        sub->add_option("--level", opt.level, "band level (radians unless --degrees)");
        sub->add_option("--surface", opt.surface, "surface spec NAME[:params]");
        sub->add_option("--pair", opt.pair, "curve pair spec");
        sub->add_option("--set", opt.set_spec, "sample set spec for convexity checks");
        sub->add_option("--nt", opt.nt, "Gauss-Legendre nodes along tube fibers");
        sub->add_option("--pairs", opt.pairs, "number of probe pairs");
        sub->add_option("--trajectory", opt.trajectory_path, "CSV path for search trajectories");
        sub->add_flag("--degrees", opt.degrees, "interpret angle inputs as degrees");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        const auto t0 = std::chrono::steady_clock::now();
        const RunConfig cfg = resolve_config(command, opt);
        Report rep = run_command(cfg);
        rep.duration_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        const std::string payload =
            cfg.get("format", "json") == "csv" ? rep.to_csv() : rep.to_json();
        if (!opt.out_path.empty())
            write_atomic(opt.out_path, payload);
        else
            std::cout << payload;
        return rep.all_pass() ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
