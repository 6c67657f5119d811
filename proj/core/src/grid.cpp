#include "hslab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hslab {

std::array<int, 3> GridSpec::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = ndim - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % n_cells);
        flat /= n_cells;
    }
    return idx;
}

double GridSpec::radius(std::size_t flat) const {
    const auto idx = unflatten(flat);
    double r2 = 0.0;
    for (int d = 0; d < ndim; ++d) {
        const double x = coord(idx[d]);
        r2 += x * x;
    }
    return std::sqrt(r2);
}

GridSpec make_grid(int ndim, int n_cells, double L) {
    if (ndim < 1 || ndim > 3) throw std::invalid_argument("ndim must be 1, 2 or 3");
    if (n_cells < 2 || (n_cells & (n_cells - 1)) != 0)
        throw std::invalid_argument("n_cells must be a power of two >= 2");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("L must be positive");
    GridSpec g;
    g.ndim = ndim;
    g.n_cells = n_cells;
    g.L = L;
    g.h = 2.0 * L / n_cells;
    return g;
}

}  // namespace hslab
