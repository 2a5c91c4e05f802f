#include "s3lab/bands.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace s3lab {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

Band::Band(SurfaceImmersion core, double r, FocalReport focal)
    : core_(std::move(core)),
      radius_(r),
      focal_(focal),
      axis_sign_(core_.topology() == SurfaceTopology::torus ? 1.0 : -1.0) {
    if (!(r > 0.0 && r < M_PI / 2.0))
        throw std::invalid_argument("band radius must lie in (0, pi/2)");
    if (r > 0.98 * focal_.focal_radius)
        throw std::invalid_argument("band radius " + std::to_string(r) +
                                    " exceeds 0.98 x focal radius " +
                                    std::to_string(focal_.focal_radius));
    // The Fermi factor must stay positive through the whole slab.
    const bool torus = core_.topology() == SurfaceTopology::torus;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            for (int k = 0; k <= 4; ++k) {
                const double t = -radius_ + 2.0 * radius_ * k / 4.0;
                const double u = torus ? kTwoPi * i / 16 : M_PI * (i + 0.5) / 16;
                if (metric_factor(u, kTwoPi * j / 16, t) <= 0.0)
                    throw std::invalid_argument("Fermi area element vanishes inside the band");
            }
}

Vec4 Band::embed(double u, double v, double t) const {
    const CurvatureFrame f = curvature_frame(core_, u, v);
    return combine(std::cos(t), f.point, axis_sign_ * std::sin(t), f.normal);
}

double Band::metric_factor(double u, double v, double t) const {
    const CurvatureFrame f = curvature_frame(core_, u, v);
    const double ct = std::cos(t), st = std::sin(t);
    return (ct - axis_sign_ * f.kappa1 * st) * (ct - axis_sign_ * f.kappa2 * st);
}

Band build_tube_band(const SurfaceImmersion& S, double r, std::optional<FocalReport> focal_hint) {
    const FocalReport focal = focal_hint ? *focal_hint : focal_radius(S);
    return Band(S, r, focal);
}

BandWidthReport band_width(const Band& band, const BandResolution& res) {
    const int nu = res.n_u, nv = res.n_v, nt = res.n_t;
    if (nu < 8 || nv < 8 || nt < 3)
        throw std::invalid_argument("band width grid must be at least 8x8x3");
    const double r = band.radius();

    const bool torus = band.core().topology() == SurfaceTopology::torus;

    // Vertex positions, layer by layer: index = (k * nu + i) * nv + j.
    const std::size_t total = static_cast<std::size_t>(nu) * nv * nt;
    std::vector<Vec4> pos(total);
    {
        // One frame per (i, j); layers reuse it.
        std::vector<Vec4> base(static_cast<std::size_t>(nu) * nv), nrm(base.size());
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nv; ++j) {
                const double u = torus ? kTwoPi * i / nu : M_PI * (i + 0.5) / nu;
                const CurvatureFrame f = curvature_frame(band.core(), u, kTwoPi * j / nv);
                base[static_cast<std::size_t>(i) * nv + j] = f.point;
                nrm[static_cast<std::size_t>(i) * nv + j] = f.normal;
            }
        for (int k = 0; k < nt; ++k) {
            const double t = -r + 2.0 * r * k / (nt - 1);
            const double ct = std::cos(t), st = std::sin(t);
            for (int i = 0; i < nu; ++i)
                for (int j = 0; j < nv; ++j) {
                    const std::size_t ij = static_cast<std::size_t>(i) * nv + j;
                    pos[(static_cast<std::size_t>(k) * nu + i) * nv + j] =
                        combine(ct, base[ij], band.axis_sign() * st, nrm[ij]);
                }
        }
    }

    // Multi-source Dijkstra from the lower face; stops at the first settled
    // upper-face vertex. Ties in the priority queue break on vertex index.
    constexpr double kInf = 1e300;
    std::vector<double> dist(total, kInf);
    std::vector<bool> done(total, false);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            const std::size_t id = static_cast<std::size_t>(i) * nv + j;
            dist[id] = 0.0;
            heap.push({0.0, id});
        }

    const std::size_t upper_start = static_cast<std::size_t>(nt - 1) * nu * nv;
    double width = -1.0;
    while (!heap.empty()) {
        const auto [d, id] = heap.top();
        heap.pop();
        if (done[id]) continue;
        done[id] = true;
        if (id >= upper_start) {
            width = d;
            break;
        }
        const int k = static_cast<int>(id / (static_cast<std::size_t>(nu) * nv));
        const int i = static_cast<int>((id / nv) % nu);
        const int j = static_cast<int>(id % nv);
        for (int dk = -1; dk <= 1; ++dk) {
            const int k2 = k + dk;
            if (k2 < 0 || k2 >= nt) continue;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (dk == 0 && di == 0 && dj == 0) continue;
                    const int i2 = torus ? (i + di + nu) % nu : i + di;
                    if (i2 < 0 || i2 >= nu) continue;
                    const int j2 = (j + dj + nv) % nv;
                    const std::size_t id2 =
                        (static_cast<std::size_t>(k2) * nu + i2) * nv + j2;
                    if (done[id2]) continue;
                    const double w = dist_s3(pos[id], pos[id2]);
                    if (d + w < dist[id2]) {
                        dist[id2] = d + w;
                        heap.push({dist[id2], id2});
                    }
                }
        }
    }
    if (width < 0.0)
        throw std::runtime_error("band grid is disconnected; resolution too coarse");
    return BandWidthReport{width, r, res, 0.08 * width};
}

LevelsetReport levelset_convexity_probe(const Band& band, double level,
                                        const QuadratureGrid& grid) {
    const double r = band.radius();
    if (!(level > 0.0 && level < 2.0 * r))
        throw std::invalid_argument("level must lie strictly between the faces (0, 2r)");
    const double t = level - r;
    const SurfaceImmersion parallel = offset_surface(band.core(), band.axis_sign() * t, 1e-3);

    LevelsetReport rep;
    rep.level = level;
    rep.t_offset = t;
    rep.samples = grid.n_u * grid.n_v;
    rep.kappa_min = 1e300;
    rep.kappa_max = -1e300;
    rep.min_toward_lower = 1e300;
    const bool torus = band.core().topology() == SurfaceTopology::torus;
    for (int i = 0; i < grid.n_u; ++i)
        for (int j = 0; j < grid.n_v; ++j) {
            const double u = torus ? grid.u(i) : M_PI * (i + 0.5) / grid.n_u;
            const double v = grid.v(j);
            const CurvatureFrame fc = curvature_frame(band.core(), u, v);
            const CurvatureFrame fp = curvature_frame(parallel, u, v);
            // Reference normal pointing back toward the lower face.
            const Vec4 toward_lower =
                combine(std::sin(t), fc.point, -band.axis_sign() * std::cos(t), fc.normal);
            const double sign = dot(fp.normal, toward_lower) >= 0.0 ? 1.0 : -1.0;
            const double k1 = sign * fp.kappa1, k2 = sign * fp.kappa2;
            rep.kappa_min = std::min(rep.kappa_min, std::min(k1, k2));
            rep.kappa_max = std::max(rep.kappa_max, std::max(k1, k2));
            rep.min_toward_lower = std::min(rep.min_toward_lower, std::min(k1, k2));
        }
    rep.strictly_convex = rep.min_toward_lower > 0.0;
    return rep;
}

}  // namespace s3lab
