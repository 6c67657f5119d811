#include "hslab/solver.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hslab/norms.hpp"

namespace hslab {

const char* to_string(SolveMethod m) {
    return m == SolveMethod::gradient_flow ? "gradient_flow" : "fixed_point";
}

namespace {

// Shared per-run tables: the squared multiplier of the quadratic form,
// the descent preconditioner and the singular weight.
struct Workspace {
    const SpectralPlan& plan;
    const ExponentConfig& cfg;
    std::vector<double> m2;   // (|xi|^s)^2 with the boxed zero mode
    std::vector<double> pre;  // 1 / (|xi|^s + 1)
    std::vector<double> w;    // |x|^{-beta q}, cell-averaged near 0
    double vol;
    std::size_t total;

    Workspace(const ExponentConfig& cfg_, const SpectralPlan& plan_)
        : plan(plan_), cfg(cfg_) {
        const GridSpec& g = plan.grid();
        if (cfg.n != g.ndim)
            throw std::invalid_argument("exponent config dimension does not match the grid");
        const auto m = fractional_multiplier(plan, cfg.s);
        m2.resize(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) m2[i] = m[i] * m[i];
        const auto& mag = plan.freq_mag();
        pre.resize(mag.size());
        for (std::size_t i = 0; i < mag.size(); ++i)
            pre[i] = 1.0 / (std::pow(mag[i], cfg.s) + 1.0);
        w = singular_weight(g, -cfg.beta * cfg.q);
        vol = g.cell_volume();
        total = g.total_cells();
    }

    double wq_norm(const std::vector<double>& u) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            acc += w[i] * std::pow(std::fabs(u[i]), cfg.q);
        return std::pow(acc * vol, 1.0 / cfg.q);
    }

    void spectral(std::vector<double>& u, const std::vector<double>& mult,
                  bool invert) const {
        std::vector<std::complex<double>> buf(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) buf[i] = u[i];
        plan.forward(buf.data());
        for (std::size_t i = 0; i < u.size(); ++i)
            buf[i] = invert ? buf[i] / mult[i] : buf[i] * mult[i];
        plan.backward(buf.data());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = buf[i].real();
    }

    double energy(const std::vector<double>& u) const {
        std::vector<std::complex<double>> buf(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) buf[i] = u[i];
        plan.forward(buf.data());
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) acc += m2[i] * std::norm(buf[i]);
        return acc * vol / static_cast<double>(total);
    }
};

double residual_impl(const std::vector<double>& u, const Workspace& ws) {
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        v[i] = ws.w[i] * std::pow(std::fabs(u[i]), ws.cfg.q - 1.0);
    ws.spectral(v, ws.m2, true);
    double uv = 0.0, vv = 0.0, uu = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uv += u[i] * v[i];
        vv += v[i] * v[i];
        uu += u[i] * u[i];
    }
    if (uu == 0.0) throw std::invalid_argument("zero field");
    const double c = vv > 0.0 ? uv / vv : 0.0;
    double rr = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - c * v[i];
        rr += d * d;
    }
    return std::sqrt(rr / uu);
}

}  // namespace

double rayleigh_quotient(const Field& u, const ExponentConfig& cfg,
                         const SpectralPlan& plan) {
    const double den = weighted_q_norm(u, cfg);
    if (den == 0.0) throw std::invalid_argument("zero field");
    return seminorm_sq(u, cfg.s, plan) / (den * den);
}

SolveReport gradient_flow_minimize(const Field& init, const ExponentConfig& cfg,
                                   const SpectralPlan& plan, const SolverOptions& opts) {
    if (!(opts.tol_q > 0.0)) throw std::invalid_argument("tolerance must be positive");
    Workspace ws(cfg, plan);
    std::vector<double> u = init.values;
    {
        const double nrm = ws.wq_norm(u);
        if (nrm == 0.0) throw std::invalid_argument("initial field is zero");
        for (double& v : u) v /= nrm;
    }

    double quot = ws.energy(u);
    SolveReport rep;
    rep.cfg = cfg;
    rep.grid = plan.grid();
    rep.method = SolveMethod::gradient_flow;
    rep.quotient_history.push_back(quot);
    rep.converged = false;

    std::vector<double> grad(u.size()), trial(u.size());
    double tau = 1.0;
    int stalled = 0, it = 0;
    for (; it < opts.max_iters; ++it) {
        std::vector<double> Au = u;
        ws.spectral(Au, ws.m2, false);
        for (std::size_t i = 0; i < u.size(); ++i)
            grad[i] = 2.0 * (Au[i] -
                             quot * ws.w[i] * std::pow(std::fabs(u[i]), cfg.q - 2.0) * u[i]);
        ws.spectral(grad, ws.pre, false);

        const double q0 = quot;
        double qn;
        while (true) {
            for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] - tau * grad[i];
            const double nrm = ws.wq_norm(trial);
            for (double& v : trial) v /= nrm;
            qn = ws.energy(trial);
            if (qn <= q0 * (1.0 + 1e-12) || tau < 1e-15) break;
            tau *= 0.5;
        }
        u.swap(trial);
        quot = qn;
        tau *= 1.2;
        rep.quotient_history.push_back(quot);
        stalled = std::fabs(qn - q0) < opts.tol_q * std::fabs(q0) ? stalled + 1 : 0;
        if (stalled >= opts.stall_window) {
            rep.converged = true;
            ++it;
            break;
        }
    }
    rep.iterations = it;
    rep.s_q_estimate = quot;
    rep.residual = residual_impl(u, ws);
    rep.minimizer = make_field(plan.grid());
    rep.minimizer.values = std::move(u);
    return rep;
}

SolveReport fixed_point_minimize(const Field& init, const ExponentConfig& cfg,
                                 const SpectralPlan& plan, const SolverOptions& opts) {
    if (!(opts.tol_u > 0.0)) throw std::invalid_argument("tolerance must be positive");
    Workspace ws(cfg, plan);
    std::vector<double> u(init.values.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::fabs(init.values[i]);
    {
        const double nrm = ws.wq_norm(u);
        if (nrm == 0.0) throw std::invalid_argument("initial field is zero");
        for (double& v : u) v /= nrm;
    }

    SolveReport rep;
    rep.cfg = cfg;
    rep.grid = plan.grid();
    rep.method = SolveMethod::fixed_point;
    rep.quotient_history.push_back(ws.energy(u));
    rep.converged = false;

    std::vector<double> v(u.size());
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        for (std::size_t i = 0; i < u.size(); ++i)
            v[i] = ws.w[i] * std::pow(std::fabs(u[i]), cfg.q - 1.0);
        ws.spectral(v, ws.m2, true);
        const double nrm = ws.wq_norm(v);
        if (nrm == 0.0) throw std::runtime_error("iteration collapsed to zero");
        double change = 0.0, vmax = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            v[i] /= nrm;
            change = std::max(change, std::fabs(v[i] - u[i]));
            vmax = std::max(vmax, std::fabs(v[i]));
        }
        u.swap(v);
        rep.quotient_history.push_back(ws.energy(u));
        if (change < opts.tol_u * vmax) {
            rep.converged = true;
            ++it;
            break;
        }
    }
    rep.iterations = it;
    rep.s_q_estimate = rep.quotient_history.back();
    rep.residual = residual_impl(u, ws);
    rep.minimizer = make_field(plan.grid());
    rep.minimizer.values = std::move(u);
    return rep;
}

double euler_lagrange_residual(const Field& u, const ExponentConfig& cfg,
                               const SpectralPlan& plan) {
    Workspace ws(cfg, plan);
    return residual_impl(u.values, ws);
}

Field default_init(const GridSpec& grid) {
    Field f = make_field(grid);
    const double width = grid.L / 8.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double r = grid.radius(i);
        f.values[i] = std::exp(-(r * r) / (width * width));
    }
    return f;
}

Field offcenter_init(const GridSpec& grid, double shift) {
    Field f = make_field(grid);
    const double width = grid.L / 8.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const auto idx = grid.unflatten(i);
        double r2 = 0.0;
        for (int d = 0; d < grid.ndim; ++d) {
            double x = grid.coord(idx[d]);
            if (d == 0) x -= shift;
            r2 += x * x;
        }
        f.values[i] = std::exp(-r2 / (width * width));
    }
    return f;
}

}  // namespace hslab
