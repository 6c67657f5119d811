#pragma once

#include "hslab/exponents.hpp"
#include "hslab/field.hpp"
#include "hslab/rearrange.hpp"
#include "hslab/spectral.hpp"

namespace hslab {

struct TheoremOptions {
    double sign_tol = 1e-8;       // min/max may dip this far below 0
    double symmetry_tol = 1e-3;   // on ||u - u*||_2 / ||u||_2
    double noise_floor = 1e-6;    // bins below noise_floor * max are skipped
};

// Executable form of the qualitative claims about a minimizer: single
// sign up to a flip, radial symmetry, strict radial decrease.
struct TheoremReport {
    bool sign_ok;
    double min_over_max;       // after sign normalization
    double symmetry_residual;  // ||u - u*||_2 / ||u||_2
    bool monotonicity_ok;
    double smallest_decrement;  // min over adjacent qualifying radial bins
    double noise_floor;
    bool all_ok() const { return sign_ok && symmetry_residual >= 0 && monotonicity_ok; }
    bool passed(const TheoremOptions& opts) const {
        return sign_ok && symmetry_residual <= opts.symmetry_tol && monotonicity_ok;
    }
};

TheoremReport verify_theorem(const Field& u, const TheoremOptions& opts = {});

struct ProofChainOptions {
    double step1_tol_rel = 1e-8;   // on min(U - |u|), relative to max U
    double norm_gap_tol = 1e-10;   // on the seminorm gap
    double majorization_slack_rel = 1e-12;
};

// The comparison chain built from f = |D^{s/2} u|: the potentials
// U of f and V of f* must satisfy U >= |u|, U < V (majorization), and
// the seminorms of V and u agree (equimeasurability of f and f*).
struct ProofChainReport {
    double step1_min_gap;  // min over cells of U - |u|
    MajorizationReport step2_majorization;
    double step2_norm_gap;  // | ||f*||_2 - ||f||_2 | / ||f||_2
    bool all_ok;
};

ProofChainReport proof_chain_check(const Field& u, const ExponentConfig& cfg,
                                   const SpectralPlan& plan,
                                   const ProofChainOptions& opts = {});

}  // namespace hslab
