#pragma once

#include <vector>

#include "hslab/field.hpp"

namespace hslab {

// Radial bin averages with bin width h: bin k collects cells whose
// center distance lies in [k h, (k+1) h).
struct RadialProfile {
    std::vector<double> bin_edges;  // size bins + 1, starts at 0
    std::vector<double> bin_means;  // 0 for empty bins
    std::vector<long> bin_counts;
};

RadialProfile radial_profile(const Field& u);

}  // namespace hslab
