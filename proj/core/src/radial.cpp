#include "hslab/radial.hpp"

#include <cmath>

namespace hslab {

RadialProfile radial_profile(const Field& u) {
    const GridSpec& g = u.grid;
    const double rmax = g.L * std::sqrt(static_cast<double>(g.ndim));
    const std::size_t bins = static_cast<std::size_t>(std::floor(rmax / g.h)) + 1;

    RadialProfile prof;
    prof.bin_edges.resize(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k) prof.bin_edges[k] = k * g.h;
    prof.bin_means.assign(bins, 0.0);
    prof.bin_counts.assign(bins, 0);

    std::vector<double> sums(bins, 0.0);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        std::size_t k = static_cast<std::size_t>(g.radius(i) / g.h);
        if (k >= bins) k = bins - 1;
        sums[k] += u.values[i];
        ++prof.bin_counts[k];
    }
    for (std::size_t k = 0; k < bins; ++k)
        if (prof.bin_counts[k] > 0) prof.bin_means[k] = sums[k] / prof.bin_counts[k];
    return prof;
}

}  // namespace hslab
