#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "hslab/field.hpp"

namespace hslab {

// FFT plans for one grid: an unpadded transform for multiplier
// operators and a 2x zero-padded transform for linear (non-circular)
// convolution with slowly decaying kernels. Planning is serialized
// internally; executing on distinct buffers is safe concurrently.
class SpectralPlan {
public:
    explicit SpectralPlan(const GridSpec& grid);
    ~SpectralPlan();
    SpectralPlan(const SpectralPlan&) = delete;
    SpectralPlan& operator=(const SpectralPlan&) = delete;

    const GridSpec& grid() const { return grid_; }
    int padded_size() const { return 2 * grid_.n_cells; }  // per axis

    // Angular frequency magnitude |xi| per unpadded mode, xi_k = pi k / L.
    const std::vector<double>& freq_mag() const { return freq_mag_; }

    // In-place unnormalized c2c transforms; backward() divides by the
    // element count so forward+backward is the identity.
    void forward(std::complex<double>* buf) const;
    void backward(std::complex<double>* buf) const;
    void forward_padded(std::complex<double>* buf) const;
    void backward_padded(std::complex<double>* buf) const;

private:
    GridSpec grid_;
    std::vector<double> freq_mag_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Riesz normalization C(n, alpha) = Gamma((n-alpha)/2) / (2^alpha pi^{n/2}
// Gamma(alpha/2)), so that the kernel C(n,alpha) |x|^{alpha-n} inverts the
// multiplier |xi|^alpha. Requires 0 < alpha < n.
double riesz_constant(int n, double alpha);

// The multiplier |xi|^sigma annihilates constants; on the truncated box
// the natural stand-in for the zero mode is the reciprocal of the kernel
// mass over the ball of radius L. See fractional_multiplier.
double zero_mode_multiplier(int n, double sigma, double L);

// |xi|^sigma per unpadded mode, with the zero mode replaced by
// zero_mode_multiplier (identity for sigma == 0).
std::vector<double> fractional_multiplier(const SpectralPlan& plan, double sigma);

// Applies the multiplier |xi|^sigma, 0 <= sigma <= 2n.
Field fractional_power(const Field& u, double sigma, const SpectralPlan& plan);

// Divides by a strictly positive multiplier table (spectral solve).
Field multiplier_solve(const Field& u, const std::vector<double>& mult,
                       const SpectralPlan& plan);

// Linear convolution with the cell-averaged kernel C(n,alpha)|x|^{alpha-n}
// via zero-padded transforms; 0 < alpha < n.
Field riesz_potential(const Field& f, double alpha, const SpectralPlan& plan);

// The discrete kernel as a field on the unpadded grid (cell-averaged
// near the origin like the convolution kernel).
Field riesz_kernel_field(const GridSpec& grid, double alpha);

// sum |xi|^{2 sigma} |u_hat|^2 h^n / total, the squared seminorm of
// order sigma evaluated in multiplier space (zero mode included via
// zero_mode_multiplier).
double seminorm_sq(const Field& u, double sigma, const SpectralPlan& plan);

}  // namespace hslab
