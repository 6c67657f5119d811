#pragma once

#include <array>
#include <cstddef>

namespace hslab {

// Cell-centered truncated grid on [-L, L]^ndim with n_cells per axis.
// Centers sit at x_i = -L + (i + 1/2) h, so no cell touches the origin.
struct GridSpec {
    int ndim;
    int n_cells;  // per axis, power of two
    double L;
    double h;  // = 2L / n_cells

    std::size_t total_cells() const {
        std::size_t t = 1;
        for (int d = 0; d < ndim; ++d) t *= static_cast<std::size_t>(n_cells);
        return t;
    }
    double cell_volume() const {
        double v = 1.0;
        for (int d = 0; d < ndim; ++d) v *= h;
        return v;
    }
    double coord(int i) const { return -L + (i + 0.5) * h; }

    // Per-axis indices of a row-major flat index, last axis fastest.
    std::array<int, 3> unflatten(std::size_t flat) const;
    // Euclidean distance of the cell center from the origin.
    double radius(std::size_t flat) const;

    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int ndim, int n_cells, double L);

}  // namespace hslab
