#include "hslab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hslab {

std::vector<std::size_t> distance_order(const GridSpec& grid) {
    const std::size_t total = grid.total_cells();
    std::vector<double> r(total);
    for (std::size_t i = 0; i < total; ++i) r[i] = grid.radius(i);
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&r](std::size_t a, std::size_t b) { return r[a] < r[b]; });
    return order;
}

Field sd_rearrangement(const Field& f) {
    for (double v : f.values)
        if (v < 0.0) throw std::invalid_argument("rearrangement input must be nonnegative");
    std::vector<double> sorted = f.values;
    std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
    const auto order = distance_order(f.grid);
    Field out = make_field(f.grid);
    for (std::size_t k = 0; k < order.size(); ++k) out.values[order[k]] = sorted[k];
    return out;
}

namespace {

void require_nonneg_same_grid(const Field& f, const Field& g) {
    if (f.grid != g.grid) throw std::invalid_argument("grid mismatch");
    for (double v : f.values)
        if (v < 0.0) throw std::invalid_argument("inputs must be nonnegative");
    for (double v : g.values)
        if (v < 0.0) throw std::invalid_argument("inputs must be nonnegative");
}

}  // namespace

MajorizationReport majorizes(const Field& f, const Field& g, double slack_rel) {
    require_nonneg_same_grid(f, g);
    const Field fs = sd_rearrangement(f);
    const Field gs = sd_rearrangement(g);
    const auto order = distance_order(f.grid);
    const double vol = f.grid.cell_volume();

    double g_l1 = 0.0;
    for (double v : g.values) g_l1 += v;
    g_l1 *= vol;
    const double slack = slack_rel * g_l1;

    MajorizationReport rep;
    rep.worst_violation = 0.0;
    double cum = 0.0;
    // The relation compares ball integrals, so gaps are recorded once
    // per complete group of equidistant cells.
    for (std::size_t k = 0; k < order.size(); ++k) {
        cum += gs.values[order[k]] - fs.values[order[k]];
        const double r = f.grid.radius(order[k]);
        const bool group_end =
            (k + 1 == order.size()) || (f.grid.radius(order[k + 1]) > r);
        if (group_end) {
            rep.radii.push_back(r);
            rep.cumulative_gap.push_back(cum * vol);
            if (cum * vol < rep.worst_violation) rep.worst_violation = cum * vol;
        }
    }
    rep.holds = rep.worst_violation >= -slack;
    return rep;
}

ConvexTestFamily ConvexTestFamily::log_spaced(const Field& f, const Field& g, int m) {
    double vmax = 0.0;
    for (double v : f.values) vmax = std::max(vmax, v);
    for (double v : g.values) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;
    ConvexTestFamily fam;
    fam.thresholds.resize(m);
    const double lo = std::log(vmax * 1e-8), hi = std::log(vmax);
    for (int i = 0; i < m; ++i)
        fam.thresholds[i] = std::exp(lo + (hi - lo) * i / (m - 1.0));
    return fam;
}

SDTestFamily SDTestFamily::all_distances(const GridSpec& grid) {
    const std::size_t total = grid.total_cells();
    std::vector<double> r(total);
    for (std::size_t i = 0; i < total; ++i) r[i] = grid.radius(i);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    SDTestFamily fam;
    fam.ball_radii = std::move(r);
    return fam;
}

CharacterizationResult check_convex_characterization(const Field& f, const Field& g,
                                                     const ConvexTestFamily& fam,
                                                     double slack) {
    require_nonneg_same_grid(f, g);
    const double vol = f.grid.cell_volume();
    CharacterizationResult res{true, 0.0};
    // phi_t sums only depend on the value multisets, so the
    // rearrangements themselves are not needed.
    for (double t : fam.thresholds) {
        double sf = 0.0, sg = 0.0;
        for (double v : f.values) sf += std::max(v - t, 0.0);
        for (double v : g.values) sg += std::max(v - t, 0.0);
        const double margin = (sg - sf) * vol;
        if (margin < res.worst_slack) res.worst_slack = margin;
        if (margin < -slack) res.ok = false;
    }
    return res;
}

CharacterizationResult check_sd_characterization(const Field& f, const Field& g,
                                                 const SDTestFamily& fam,
                                                 double slack) {
    require_nonneg_same_grid(f, g);
    const Field fs = sd_rearrangement(f);
    const Field gs = sd_rearrangement(g);
    const auto order = distance_order(f.grid);
    const double vol = f.grid.cell_volume();

    std::vector<double> radii(order.size());
    std::vector<double> pf(order.size() + 1, 0.0), pg(order.size() + 1, 0.0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        radii[k] = f.grid.radius(order[k]);
        pf[k + 1] = pf[k] + fs.values[order[k]];
        pg[k + 1] = pg[k] + gs.values[order[k]];
    }

    CharacterizationResult res{true, 0.0};
    for (double r : fam.ball_radii) {
        const std::size_t k =
            std::upper_bound(radii.begin(), radii.end(), r) - radii.begin();
        const double margin = (pg[k] - pf[k]) * vol;
        if (margin < res.worst_slack) res.worst_slack = margin;
        if (margin < -slack) res.ok = false;
    }
    return res;
}

}  // namespace hslab
