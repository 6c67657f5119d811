#pragma once

#include <vector>

#include "hslab/exponents.hpp"
#include "hslab/field.hpp"

namespace hslab {

// Tabulates w(x) = |x|^exponent per cell. For negative exponents the
// weight is singular at the origin; cells whose center lies within 4h
// of it get the cell average by 16^ndim midpoint subsampling, all other
// cells use the center value.
std::vector<double> singular_weight(const GridSpec& grid, double exponent);

// ( sum_cells w |u|^q h^n )^{1/q} with w = |x|^{-beta q}.
double weighted_q_norm(const Field& u, const ExponentConfig& cfg);
// Same, with a precomputed weight table (must match the grid).
double weighted_q_norm(const Field& u, double q, const std::vector<double>& weight);

double l2_norm(const Field& u);
double lp_norm(const Field& u, double p);
double inner_product(const Field& u, const Field& v);

}  // namespace hslab
