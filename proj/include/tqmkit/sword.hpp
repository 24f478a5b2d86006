#pragma once

// Samurai-versus-pirate trace: a charged packet crosses a magnetic field
// region and a time-sensitive detector plane at x = L records flux binned in
// (y, arrival time). Runs twice: SQM mode on an (x, y) grid (arrival time is
// clock time) and TQM mode on a (t, x, y) grid (arrival time is the
// coordinate-time axis). Spin ignored.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "tqmkit/detection.hpp"
#include "tqmkit/evolver.hpp"
#include "tqmkit/gtf.hpp"

namespace tqmkit {

struct SwordConfig {
    double m = 1.0;
    double q = 1.0;
    double B = 0.0;        // uniform field along z, symmetric gauge
    double p0x = 1.0;      // beam momentum
    double sigma_t = 5.0;
    double sigma_x = 10.0;
    double sigma_y = 8.0;
    double L = 64.0;       // detector plane
    double tau_max = 100.0;
    double dtau = 0.5;
    AxisSpec t_axis{-25.0, 196.2, 128};
    AxisSpec x_axis{-32.0, 80.0, 128};
    AxisSpec y_axis{-32.0, 32.0, 64};
    double gauge_center_x = 0.0;   // symmetric-gauge origin
    double gauge_center_y = 0.0;
    double sponge_width = 5.0;
    double sponge_rate = 6.0;
    double flux_goal = 0.99;
    double populated_fraction = 1e-3;
    double x0 = 0.0;  // packet start
};

struct SwordRow {
    double y = 0.0;
    double weight_tqm = 0.0;
    double mean_t = 0.0;
    double var_t = 0.0;
    double weight_sqm = 0.0;
    double mean_tau = 0.0;
    double var_tau = 0.0;
    bool populated = false;
};

struct SwordResult {
    std::vector<double> y_centers;
    std::vector<double> t_centers;
    std::vector<double> tau_centers;
    std::vector<std::vector<double>> hist_tqm;  // [iy][it], flux density
    std::vector<std::vector<double>> hist_sqm;  // [iy][itau]
    std::vector<SwordRow> rows;
    double transmitted_tqm = 0.0;
    double transmitted_sqm = 0.0;
};

namespace detail {

inline EMField sword_field(const SwordConfig& c) {
    EMField f;
    f.q = c.q;
    if (c.B != 0.0) {
        const double B = c.B, yc = c.gauge_center_y, xc = c.gauge_center_x;
        f.A[0] = [B, yc](double, double, double y, double) { return -0.5 * B * (y - yc); };
        f.A[1] = [B, xc](double, double x, double, double) { return 0.5 * B * (x - xc); };
    }
    return f;
}

inline void moments_from_hist(const std::vector<double>& centers, const std::vector<double>& h,
                              double& w, double& mean, double& var) {
    w = 0;
    double m1 = 0;
    for (size_t i = 0; i < h.size(); ++i) {
        w += h[i];
        m1 += h[i] * centers[i];
    }
    if (w <= 0) {
        mean = var = 0;
        return;
    }
    mean = m1 / w;
    double m2 = 0;
    for (size_t i = 0; i < h.size(); ++i) m2 += h[i] * (centers[i] - mean) * (centers[i] - mean);
    var = m2 / w;
}

}  // namespace detail

inline SwordResult sword_trace(const SwordConfig& cfg) {
    if (!(cfg.L > cfg.x0) || !(cfg.tau_max > 0) || !(cfg.dtau > 0))
        throw std::invalid_argument("sword_trace: bad geometry");
    const double e0 = on_shell_energy(cfg.m, cfg.p0x, 0, 0);
    const EMField field = detail::sword_field(cfg);
    const int nsteps = static_cast<int>(std::ceil(cfg.tau_max / cfg.dtau));

    SwordResult res;
    const int ny = cfg.y_axis.n, nt = cfg.t_axis.n;
    res.y_centers.resize(ny);
    res.t_centers.resize(nt);
    res.tau_centers.resize(nsteps);

    // the grid stores the field without its e^{-i E0 t} carrier; the
    // evolver reads energies as E0 - k_t
    Gaussian1 gt;
    gt.axis = Axis::time;
    gt.rep = Representation::coordinate;
    gt.coordinate_center = 0.0;
    gt.conjugate_center = 0.0;
    gt.sigma_sq = cfg.sigma_t * cfg.sigma_t;
    EvolveOptions opt;
    opt.energy_offset = e0;
    Gaussian1 gx;
    gx.axis = Axis::x;
    gx.rep = Representation::coordinate;
    gx.coordinate_center = cfg.x0;
    gx.conjugate_center = cfg.p0x;
    gx.sigma_sq = cfg.sigma_x * cfg.sigma_x;
    Gaussian1 gy;
    gy.axis = Axis::y;
    gy.rep = Representation::coordinate;
    gy.coordinate_center = 0.0;
    gy.conjugate_center = 0.0;
    gy.sigma_sq = cfg.sigma_y * cfg.sigma_y;

    // --- TQM mode: (t, x, y) grid ---
    {
        Grid g({cfg.t_axis, cfg.x_axis, cfg.y_axis}, true);
        fill_product_packet(g, {gt, gx, gy});
        for (int j = 0; j < ny; ++j) res.y_centers[j] = g.coord(2, j);
        for (int j = 0; j < nt; ++j) res.t_centers[j] = g.coord(0, j);
        res.hist_tqm.assign(ny, std::vector<double>(nt, 0.0));
        const double dt = g.dx(0), dy = g.dx(2);
        for (int s = 0; s < nsteps; ++s) {
            if (cfg.B != 0.0)
                fst_potential_step(g, field, cfg.dtau, cfg.m, opt);
            else
                fst_free_step(g, cfg.dtau, cfg.m, opt);
            auto j = flux_through_plane(g, 1, cfg.L, cfg.m, &field);  // [t][y] flattened
            for (int it = 0; it < nt; ++it)
                for (int iy = 0; iy < ny; ++iy) {
                    double f = j[static_cast<size_t>(it) * ny + iy] * cfg.dtau;
                    res.hist_tqm[iy][it] += f;
                    res.transmitted_tqm += f * dt * dy;
                }
            apply_sponge(g, 1, true, true, cfg.sponge_width, cfg.sponge_rate, cfg.dtau);
            apply_sponge(g, 2, true, true, cfg.sponge_width, cfg.sponge_rate, cfg.dtau);
        }
        if (res.transmitted_tqm < cfg.flux_goal)
            throw std::runtime_error("sword_trace: TQM packet did not reach the plane (flux " +
                                     std::to_string(res.transmitted_tqm) + ")");
    }

    // --- SQM mode: (x, y) grid, arrival time is clock time ---
    {
        Grid g({cfg.x_axis, cfg.y_axis}, false);
        fill_product_packet(g, {gx, gy});
        res.hist_sqm.assign(ny, std::vector<double>(nsteps, 0.0));
        const double dy = g.dx(1);
        for (int s = 0; s < nsteps; ++s) {
            res.tau_centers[s] = (s + 0.5) * cfg.dtau;
            if (cfg.B != 0.0)
                fst_potential_step(g, field, cfg.dtau, cfg.m);
            else
                fst_free_step(g, cfg.dtau, cfg.m);
            auto j = flux_through_plane(g, 0, cfg.L, cfg.m, &field);  // [y]
            for (int iy = 0; iy < ny; ++iy) {
                double f = j[iy] * cfg.dtau;
                res.hist_sqm[iy][s] += f;
                res.transmitted_sqm += f * dy;
            }
            apply_sponge(g, 0, true, true, cfg.sponge_width, cfg.sponge_rate, cfg.dtau);
            apply_sponge(g, 1, true, true, cfg.sponge_width, cfg.sponge_rate, cfg.dtau);
        }
        if (res.transmitted_sqm < cfg.flux_goal)
            throw std::runtime_error("sword_trace: SQM packet did not reach the plane (flux " +
                                     std::to_string(res.transmitted_sqm) + ")");
    }

    // --- per-y statistics ---
    res.rows.resize(ny);
    double wmax = 0.0;
    std::vector<double> wt(ny), ws(ny);
    for (int iy = 0; iy < ny; ++iy) {
        SwordRow& r = res.rows[iy];
        r.y = res.y_centers[iy];
        detail::moments_from_hist(res.t_centers, res.hist_tqm[iy], wt[iy], r.mean_t, r.var_t);
        detail::moments_from_hist(res.tau_centers, res.hist_sqm[iy], ws[iy], r.mean_tau,
                                  r.var_tau);
        r.weight_tqm = wt[iy];
        r.weight_sqm = ws[iy];
        wmax = std::max(wmax, std::min(wt[iy], ws[iy]));
    }
    for (int iy = 0; iy < ny; ++iy)
        res.rows[iy].populated = std::min(wt[iy], ws[iy]) > cfg.populated_fraction * wmax;
    return res;
}

}  // namespace tqmkit
