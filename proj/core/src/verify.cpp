#include "hslab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hslab/norms.hpp"
#include "hslab/radial.hpp"

namespace hslab {

TheoremReport verify_theorem(const Field& u, const TheoremOptions& opts) {
    double mean = 0.0, vmax = 0.0, vmin = 0.0;
    for (double v : u.values) mean += v;
    if (std::all_of(u.values.begin(), u.values.end(), [](double v) { return v == 0.0; }))
        throw std::invalid_argument("zero field");
    const double flip = mean >= 0.0 ? 1.0 : -1.0;

    Field w = u;
    for (double& v : w.values) v *= flip;
    for (double v : w.values) {
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }

    TheoremReport rep;
    rep.noise_floor = opts.noise_floor;
    rep.min_over_max = vmax > 0.0 ? vmin / vmax : -1.0;
    rep.sign_ok = rep.min_over_max > -opts.sign_tol;

    Field absw = w;
    for (double& v : absw.values) v = std::fabs(v);
    const Field star = sd_rearrangement(absw);
    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        const double d = w.values[i] - star.values[i];
        diff2 += d * d;
        norm2 += w.values[i] * w.values[i];
    }
    rep.symmetry_residual = std::sqrt(diff2 / norm2);

    const RadialProfile prof = radial_profile(w);
    const double floor = opts.noise_floor * vmax;
    rep.smallest_decrement = std::numeric_limits<double>::infinity();
    double prev = 0.0;
    bool have_prev = false;
    for (std::size_t k = 0; k < prof.bin_means.size(); ++k) {
        if (prof.bin_counts[k] == 0) continue;
        if (prof.bin_means[k] <= floor) break;  // resolved region ends here
        if (have_prev)
            rep.smallest_decrement = std::min(rep.smallest_decrement, prev - prof.bin_means[k]);
        prev = prof.bin_means[k];
        have_prev = true;
    }
    if (!std::isfinite(rep.smallest_decrement)) rep.smallest_decrement = 0.0;
    rep.monotonicity_ok = rep.smallest_decrement > 0.0;
    return rep;
}

ProofChainReport proof_chain_check(const Field& u, const ExponentConfig& cfg,
                                   const SpectralPlan& plan, const ProofChainOptions& opts) {
    if (std::all_of(u.values.begin(), u.values.end(), [](double v) { return v == 0.0; }))
        throw std::invalid_argument("zero field");

    Field f = fractional_power(u, cfg.s, plan);
    for (double& v : f.values) v = std::fabs(v);
    const Field fstar = sd_rearrangement(f);
    const Field U = riesz_potential(f, cfg.s, plan);
    const Field V = riesz_potential(fstar, cfg.s, plan);

    ProofChainReport rep;
    double gap = std::numeric_limits<double>::infinity(), Umax = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        gap = std::min(gap, U.values[i] - std::fabs(u.values[i]));
        Umax = std::max(Umax, U.values[i]);
    }
    rep.step1_min_gap = gap;
    rep.step2_majorization = majorizes(U, V, opts.majorization_slack_rel);
    rep.step2_norm_gap = std::fabs(l2_norm(fstar) - l2_norm(f)) / l2_norm(f);
    rep.all_ok = rep.step1_min_gap >= -opts.step1_tol_rel * Umax &&
                 rep.step2_majorization.holds &&
                 rep.step2_norm_gap <= opts.norm_gap_tol;
    return rep;
}

}  // namespace hslab
