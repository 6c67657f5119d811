#include "hslab/spectral.hpp"

#include <fftw3.h>

#include "hslab/norms.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace hslab {

namespace {

// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Signed mode number for index j of an N-point transform.
int mode_number(int j, int N) { return j < N / 2 ? j : j - N; }

fftw_plan make_plan(int ndim, int n, int sign) {
    int dims[3] = {n, n, n};
    std::vector<fftw_complex> tmp(static_cast<std::size_t>(std::pow(n, ndim)));
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_UNALIGNED lets the plan run on any caller buffer later.
    return fftw_plan_dft(ndim, dims, tmp.data(), tmp.data(), sign,
                         FFTW_ESTIMATE | FFTW_UNALIGNED);
}

void run(fftw_plan p, std::complex<double>* buf) {
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf),
                     reinterpret_cast<fftw_complex*>(buf));
}

}  // namespace

struct SpectralPlan::Impl {
    fftw_plan fwd, bwd, fwd_pad, bwd_pad;
    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_destroy_plan(fwd_pad);
        fftw_destroy_plan(bwd_pad);
    }
};

SpectralPlan::SpectralPlan(const GridSpec& grid) : grid_(grid) {
    impl_ = std::make_unique<Impl>();
    impl_->fwd = make_plan(grid.ndim, grid.n_cells, FFTW_FORWARD);
    impl_->bwd = make_plan(grid.ndim, grid.n_cells, FFTW_BACKWARD);
    impl_->fwd_pad = make_plan(grid.ndim, 2 * grid.n_cells, FFTW_FORWARD);
    impl_->bwd_pad = make_plan(grid.ndim, 2 * grid.n_cells, FFTW_BACKWARD);

    const int N = grid.n_cells;
    const double dxi = 2.0 * M_PI / (N * grid.h);  // = pi / L
    freq_mag_.resize(grid.total_cells());
    for (std::size_t i = 0; i < freq_mag_.size(); ++i) {
        const auto idx = grid.unflatten(i);
        double sum2 = 0.0;
        for (int d = 0; d < grid.ndim; ++d) {
            const double xi = dxi * mode_number(idx[d], N);
            sum2 += xi * xi;
        }
        freq_mag_[i] = std::sqrt(sum2);
    }
}

SpectralPlan::~SpectralPlan() = default;

void SpectralPlan::forward(std::complex<double>* buf) const { run(impl_->fwd, buf); }

void SpectralPlan::backward(std::complex<double>* buf) const {
    run(impl_->bwd, buf);
    const double scale = 1.0 / static_cast<double>(grid_.total_cells());
    for (std::size_t i = 0; i < grid_.total_cells(); ++i) buf[i] *= scale;
}

void SpectralPlan::forward_padded(std::complex<double>* buf) const {
    run(impl_->fwd_pad, buf);
}

void SpectralPlan::backward_padded(std::complex<double>* buf) const {
    run(impl_->bwd_pad, buf);
    std::size_t total = 1;
    for (int d = 0; d < grid_.ndim; ++d) total *= 2 * grid_.n_cells;
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) buf[i] *= scale;
}

double riesz_constant(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (!(alpha > 0.0 && alpha < n))
        throw std::invalid_argument("kernel order must lie in (0, n)");
    return std::tgamma(0.5 * (n - alpha)) /
           (std::pow(2.0, alpha) * std::pow(M_PI, 0.5 * n) * std::tgamma(0.5 * alpha));
}

double zero_mode_multiplier(int n, double sigma, double L) {
    // Reciprocal of the kernel mass over the ball of radius L:
    // int_{B_L} C(n,sigma) |x|^{sigma-n} dx = C omega_{n-1} L^sigma / sigma.
    const double omega = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
    return sigma / (omega * riesz_constant(n, sigma) * std::pow(L, sigma));
}

std::vector<double> fractional_multiplier(const SpectralPlan& plan, double sigma) {
    const auto& mag = plan.freq_mag();
    std::vector<double> m(mag.size());
    if (sigma == 0.0) {
        std::fill(m.begin(), m.end(), 1.0);
        return m;
    }
    for (std::size_t i = 0; i < mag.size(); ++i) m[i] = std::pow(mag[i], sigma);
    const GridSpec& g = plan.grid();
    if (sigma < g.ndim)
        m[0] = zero_mode_multiplier(g.ndim, sigma, g.L);
    else
        m[0] = 0.0;  // order too high for the kernel picture; constants die
    return m;
}

namespace {

std::vector<std::complex<double>> to_complex(const Field& u) {
    std::vector<std::complex<double>> buf(u.values.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = u.values[i];
    return buf;
}

Field apply_multiplier(const Field& u, const std::vector<double>& mult,
                       const SpectralPlan& plan, bool invert) {
    if (u.grid != plan.grid()) throw std::invalid_argument("field grid does not match plan");
    if (mult.size() != u.values.size()) throw std::invalid_argument("multiplier size mismatch");
    auto buf = to_complex(u);
    plan.forward(buf.data());
    for (std::size_t i = 0; i < buf.size(); ++i) {
        if (invert) {
            if (mult[i] == 0.0) throw std::invalid_argument("multiplier has a zero entry");
            buf[i] /= mult[i];
        } else {
            buf[i] *= mult[i];
        }
    }
    plan.backward(buf.data());
    Field out = make_field(u.grid);
    for (std::size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
    return out;
}

}  // namespace

Field fractional_power(const Field& u, double sigma, const SpectralPlan& plan) {
    if (!(sigma >= 0.0 && sigma <= 2.0 * u.grid.ndim))
        throw std::invalid_argument("multiplier order out of [0, 2n]");
    return apply_multiplier(u, fractional_multiplier(plan, sigma), plan, false);
}

Field multiplier_solve(const Field& u, const std::vector<double>& mult,
                       const SpectralPlan& plan) {
    return apply_multiplier(u, mult, plan, true);
}

namespace {

// Cell average of |x|^{alpha-n} over the cell at integer offset d from
// the origin (in units of h). Closed form in 1D; midpoint subsampling
// near the origin and plain midpoint evaluation beyond it otherwise.
double kernel_cell_average(int ndim, const std::array<int, 3>& d, double alpha, double h) {
    if (ndim == 1) {
        const double a = alpha;
        const int ad = std::abs(d[0]);
        const double hi = std::pow(ad * h + 0.5 * h, a);
        const double lo = ad > 0 ? std::pow(ad * h - 0.5 * h, a) : -std::pow(0.5 * h, a);
        return (hi - lo) / (a * h);
    }
    int linf = 0;
    for (int k = 0; k < ndim; ++k) linf = std::max(linf, std::abs(d[k]));
    if (linf > 4) {
        double r2 = 0.0;
        for (int k = 0; k < ndim; ++k) r2 += static_cast<double>(d[k]) * d[k];
        return std::pow(std::sqrt(r2) * h, alpha - ndim);
    }
    const int sub = 16;
    long npts = 1;
    for (int k = 0; k < ndim; ++k) npts *= sub;
    double acc = 0.0;
    for (long p = 0; p < npts; ++p) {
        long rem = p;
        double r2 = 0.0;
        for (int k = ndim - 1; k >= 0; --k) {
            const int j = static_cast<int>(rem % sub);
            rem /= sub;
            const double x = (d[k] + (j + 0.5) / sub - 0.5) * h;
            r2 += x * x;
        }
        acc += std::pow(std::sqrt(r2), alpha - ndim);
    }
    return acc / npts;
}

}  // namespace

Field riesz_potential(const Field& f, double alpha, const SpectralPlan& plan) {
    const GridSpec& g = f.grid;
    if (g != plan.grid()) throw std::invalid_argument("field grid does not match plan");
    if (!(alpha > 0.0 && alpha < g.ndim))
        throw std::invalid_argument("kernel order must lie in (0, n)");

    const int N = g.n_cells, M = plan.padded_size();
    std::size_t total_pad = 1;
    for (int d = 0; d < g.ndim; ++d) total_pad *= M;

    const double C = riesz_constant(g.ndim, alpha);
    std::vector<std::complex<double>> K(total_pad), F(total_pad, 0.0);
    for (std::size_t i = 0; i < total_pad; ++i) {
        std::array<int, 3> d{0, 0, 0};
        std::size_t rem = i;
        for (int k = g.ndim - 1; k >= 0; --k) {
            d[k] = mode_number(static_cast<int>(rem % M), M);
            rem /= M;
        }
        K[i] = C * kernel_cell_average(g.ndim, d, alpha, g.h);
    }
    // Source placed in the low corner of the padded box; the signed
    // kernel offsets make this a linear convolution.
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const auto idx = g.unflatten(i);
        std::size_t pi = 0;
        for (int k = 0; k < g.ndim; ++k) pi = pi * M + idx[k];
        F[pi] = f.values[i];
    }
    plan.forward_padded(K.data());
    plan.forward_padded(F.data());
    for (std::size_t i = 0; i < total_pad; ++i) F[i] *= K[i];
    plan.backward_padded(F.data());

    Field out = make_field(g);
    const double vol = g.cell_volume();
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const auto idx = g.unflatten(i);
        std::size_t pi = 0;
        for (int k = 0; k < g.ndim; ++k) pi = pi * M + idx[k];
        out.values[i] = vol * F[pi].real();
    }
    return out;
}

Field riesz_kernel_field(const GridSpec& grid, double alpha) {
    if (!(alpha > 0.0 && alpha < grid.ndim))
        throw std::invalid_argument("kernel order must lie in (0, n)");
    Field out = make_field(grid);
    // Center-value sampling: exactly monotone in the computed cell
    // radius, so the rearrangement fixes it. The convolution path uses
    // cell averages instead, which near the origin reorder low bits.
    const double C = riesz_constant(grid.ndim, alpha);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = C * std::pow(grid.radius(i), alpha - grid.ndim);
    return out;
}

double seminorm_sq(const Field& u, double sigma, const SpectralPlan& plan) {
    if (u.grid != plan.grid()) throw std::invalid_argument("field grid does not match plan");
    const auto mult = fractional_multiplier(plan, sigma);
    auto buf = to_complex(u);
    plan.forward(buf.data());
    double acc = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i)
        acc += mult[i] * mult[i] * std::norm(buf[i]);
    return acc * u.grid.cell_volume() / static_cast<double>(u.grid.total_cells());
}

}  // namespace hslab
