#include "hslab/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace hslab {

namespace {

// Average of |x|^e over one cell by midpoint subsampling, 16 points per axis.
double cell_average_pow(const GridSpec& g, const std::array<int, 3>& idx, double e) {
    const int sub = 16;
    double acc = 0.0;
    long npts = 1;
    for (int d = 0; d < g.ndim; ++d) npts *= sub;
    for (long p = 0; p < npts; ++p) {
        long rem = p;
        double r2 = 0.0;
        for (int d = g.ndim - 1; d >= 0; --d) {
            const int j = static_cast<int>(rem % sub);
            rem /= sub;
            const double off = ((j + 0.5) / sub - 0.5) * g.h;
            const double x = g.coord(idx[d]) + off;
            r2 += x * x;
        }
        acc += std::pow(std::sqrt(r2), e);
    }
    return acc / npts;
}

}  // namespace

std::vector<double> singular_weight(const GridSpec& grid, double exponent) {
    const std::size_t total = grid.total_cells();
    std::vector<double> w(total);
    if (exponent == 0.0) {
        std::fill(w.begin(), w.end(), 1.0);
        return w;
    }
    const double near = 4.0 * grid.h;
    for (std::size_t i = 0; i < total; ++i) {
        const double r = grid.radius(i);
        if (exponent < 0.0 && r <= near)
            w[i] = cell_average_pow(grid, grid.unflatten(i), exponent);
        else
            w[i] = std::pow(r, exponent);
    }
    return w;
}

double weighted_q_norm(const Field& u, double q, const std::vector<double>& weight) {
    if (weight.size() != u.values.size())
        throw std::invalid_argument("weight table does not match the field's grid");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        acc += weight[i] * std::pow(std::fabs(u.values[i]), q);
    return std::pow(acc * u.grid.cell_volume(), 1.0 / q);
}

double weighted_q_norm(const Field& u, const ExponentConfig& cfg) {
    if (cfg.n != u.grid.ndim)
        throw std::invalid_argument("exponent config dimension does not match the grid");
    const auto w = singular_weight(u.grid, -cfg.beta * cfg.q);
    return weighted_q_norm(u, cfg.q, w);
}

double l2_norm(const Field& u) {
    double acc = 0.0;
    for (double v : u.values) acc += v * v;
    return std::sqrt(acc * u.grid.cell_volume());
}

double lp_norm(const Field& u, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
    double acc = 0.0;
    for (double v : u.values) acc += std::pow(std::fabs(v), p);
    return std::pow(acc * u.grid.cell_volume(), 1.0 / p);
}

double inner_product(const Field& u, const Field& v) {
    if (u.grid != v.grid) throw std::invalid_argument("grid mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) acc += u.values[i] * v.values[i];
    return acc * u.grid.cell_volume();
}

}  // namespace hslab
