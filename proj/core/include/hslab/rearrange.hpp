#pragma once

#include <cstddef>
#include <vector>

#include "hslab/field.hpp"

namespace hslab {

// Cells sorted by (distance from origin, then row-major index).
// This fixed order makes the rearrangement deterministic on grids
// where whole groups of cells share a distance.
std::vector<std::size_t> distance_order(const GridSpec& grid);

// Symmetric-decreasing rearrangement: sort the values descending
// (stable) and assign them along distance_order. Equimeasurable with
// the input by construction. Requires f >= 0.
Field sd_rearrangement(const Field& f);

// Ball-wise cumulative comparison behind the relation f < g (majorization):
// integrals of f* over balls never exceed those of g*.
struct MajorizationReport {
    std::vector<double> radii;           // distinct cell distances, ascending
    std::vector<double> cumulative_gap;  // sum over B_r of (g* - f*) h^n
    bool holds;
    double worst_violation;  // most negative gap, 0 if none
};

// slack_rel scales with the 1-norm of g; gaps are evaluated at complete
// distance groups, matching the ball-indicator definition.
MajorizationReport majorizes(const Field& f, const Field& g, double slack_rel = 1e-12);

// phi_t(v) = max(v - t, 0), a generating family of convex functions
// vanishing at 0.
struct ConvexTestFamily {
    std::vector<double> thresholds;
    static ConvexTestFamily log_spaced(const Field& f, const Field& g, int m = 32);
};

// Ball indicators, the symmetric-decreasing test functions.
struct SDTestFamily {
    std::vector<double> ball_radii;
    static SDTestFamily all_distances(const GridSpec& grid);
};

struct CharacterizationResult {
    bool ok;
    double worst_slack;  // most negative margin seen, 0 if none
};

// sum phi_t(f*) h^n <= sum phi_t(g*) h^n for every threshold.
CharacterizationResult check_convex_characterization(const Field& f, const Field& g,
                                                     const ConvexTestFamily& fam,
                                                     double slack = 1e-10);
// sum f* 1_{B_r} h^n <= sum g* 1_{B_r} h^n for every radius.
CharacterizationResult check_sd_characterization(const Field& f, const Field& g,
                                                 const SDTestFamily& fam,
                                                 double slack = 1e-10);

}  // namespace hslab
