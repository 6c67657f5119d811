#pragma once

#include <filesystem>
#include <vector>

#include "hslab/grid.hpp"

namespace hslab {

// Real scalar field sampled on a grid, one value per cell, row-major
// with the last axis fastest.
struct Field {
    GridSpec grid;
    std::vector<double> values;
};

Field make_field(const GridSpec& grid, double fill = 0.0);

// Largest |value| over the outermost cell shell divided by the largest
// |value| overall; a proxy for "vanishing at infinity". Returns 0 for
// the zero field.
double boundary_shell_fraction(const Field& u);

// Text format, bit-exact round trip:
//   line 1:  "ndim n_cells L"
//   then one value per line in row-major order, last axis fastest.
void save_field(const Field& u, const std::filesystem::path& path);
Field load_field(const std::filesystem::path& path);

}  // namespace hslab
