#pragma once

#include <string>
#include <vector>

#include "hslab/exponents.hpp"
#include "hslab/field.hpp"
#include "hslab/spectral.hpp"

namespace hslab {

enum class SolveMethod { gradient_flow, fixed_point };

const char* to_string(SolveMethod m);

struct SolverOptions {
    double tol_q = 1e-9;    // relative quotient stall threshold (gradient flow)
    double tol_u = 1e-8;    // relative sup-norm change threshold (fixed point)
    int max_iters = 100000;
    int stall_window = 20;  // consecutive stalled iterations before stopping
};

struct SolveReport {
    ExponentConfig cfg;
    GridSpec grid;
    SolveMethod method;
    double s_q_estimate;  // Rayleigh quotient at the final iterate
    int iterations;
    std::vector<double> quotient_history;
    double residual;  // fixed-point equation residual at the final iterate
    bool converged;
    Field minimizer;  // weighted q-norm 1
};

// Q(u) = seminorm_sq(u, s) / weighted_q_norm(u)^2; its infimum is the
// best constant of the inequality.
double rayleigh_quotient(const Field& u, const ExponentConfig& cfg,
                         const SpectralPlan& plan);

// Preconditioned descent on the quotient under weighted_q_norm(u) = 1:
// u <- normalize(u - tau P g) with g = 2 (A u - Q w |u|^{q-2} u),
// A the multiplier of order 2s and P = (|xi|^s + 1)^{-1}. Backtracking
// keeps the quotient non-increasing; stops when the relative change
// stays below tol_q for stall_window iterations.
SolveReport gradient_flow_minimize(const Field& init, const ExponentConfig& cfg,
                                   const SpectralPlan& plan,
                                   const SolverOptions& opts = {});

// Picard iteration on the optimality equation u = c A^{-1}(w u^{q-1}),
// the normalization absorbing the free constant. Stops when the
// relative sup-norm change drops below tol_u.
SolveReport fixed_point_minimize(const Field& init, const ExponentConfig& cfg,
                                 const SpectralPlan& plan,
                                 const SolverOptions& opts = {});

// min_c || u - c A^{-1}(w |u|^{q-1}) ||_2 / || u ||_2.
double euler_lagrange_residual(const Field& u, const ExponentConfig& cfg,
                               const SpectralPlan& plan);

// Centered Gaussian of width L/8, the default starting point.
Field default_init(const GridSpec& grid);
// Same Gaussian shifted along the first axis, for symmetry tests.
Field offcenter_init(const GridSpec& grid, double shift);

}  // namespace hslab
