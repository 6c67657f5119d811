#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "hslab/exponents.hpp"
#include "hslab/field.hpp"
#include "hslab/norms.hpp"
#include "hslab/radial.hpp"
#include "hslab/rearrange.hpp"
#include "hslab/report_json.hpp"
#include "hslab/solver.hpp"
#include "hslab/spectral.hpp"
#include "hslab/verify.hpp"

namespace fs = std::filesystem;
using namespace hslab;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitNotConverged = 3;

struct RunConfig {
    int n = 1;
    double s = 0.3;
    std::string q = "3.0";  // one value, or a comma list for sweep
    std::string s_list;     // optional comma list for sweep
    int grid = 1024;
    double L = 30.0;
    std::string method = "gradient_flow";
    double tol = 0.0;  // 0 means the method default
    int max_iters = 100000;
    std::string init = "gaussian";
    std::string out = "out";
    int jobs = 1;
    unsigned long seed = 0;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "'");
        vals.push_back(v);
    }
    return vals;
}

void apply_config_file(RunConfig& rc, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string t) {
            const auto b = t.find_first_not_of(" \t");
            const auto e = t.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "n") rc.n = std::stoi(val);
        else if (key == "s") rc.s = std::stod(val);
        else if (key == "q") rc.q = val;
        else if (key == "s_list") rc.s_list = val;
        else if (key == "grid") rc.grid = std::stoi(val);
        else if (key == "L") rc.L = std::stod(val);
        else if (key == "method") rc.method = val;
        else if (key == "tol") rc.tol = std::stod(val);
        else if (key == "max_iters") rc.max_iters = std::stoi(val);
        else if (key == "init") rc.init = val;
        else if (key == "out") rc.out = val;
        else if (key == "jobs") rc.jobs = std::stoi(val);
        else if (key == "seed") rc.seed = std::stoul(val);
        else throw std::runtime_error(path + ": unknown key '" + key + "'");
    }
}

Field build_init(const RunConfig& rc, const GridSpec& grid) {
    if (rc.init == "gaussian") return default_init(grid);
    if (rc.init == "offcenter") return offcenter_init(grid, grid.L / 12.0);
    if (rc.init == "random") {
        // smooth seeded bump mixture, strictly positive baseline
        std::mt19937_64 rng(rc.seed);
        std::uniform_real_distribution<double> pos(-grid.L / 4.0, grid.L / 4.0);
        std::uniform_real_distribution<double> wid(grid.L / 16.0, grid.L / 4.0);
        std::uniform_real_distribution<double> amp(0.2, 1.0);
        Field u = make_field(grid);
        for (int b = 0; b < 5; ++b) {
            const double x0 = pos(rng), w = wid(rng), a = amp(rng);
            for (std::size_t i = 0; i < u.values.size(); ++i) {
                const auto idx = grid.unflatten(i);
                double r2 = 0.0;
                for (int d = 0; d < grid.ndim; ++d) {
                    double x = grid.coord(idx[d]);
                    if (d == 0) x -= x0;
                    r2 += x * x;
                }
                u.values[i] += a * std::exp(-r2 / (w * w));
            }
        }
        return u;
    }
    return load_field(rc.init);  // treat as a field file path
}

void write_profile_csv(const Field& u, const fs::path& path) {
    const auto prof = radial_profile(u);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "r,u_mean\n";
    char buf[64];
    for (std::size_t k = 0; k < prof.bin_means.size(); ++k) {
        if (prof.bin_counts[k] == 0) continue;
        const double r = 0.5 * (prof.bin_edges[k] + prof.bin_edges[k + 1]);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r, prof.bin_means[k]);
        out << buf;
    }
}

SolverOptions make_opts(const RunConfig& rc) {
    SolverOptions opts;
    if (rc.tol > 0.0) {
        opts.tol_q = rc.tol;
        opts.tol_u = rc.tol;
    }
    opts.max_iters = rc.max_iters;
    return opts;
}

// One solver run plus its artifact files; reused by solve and sweep.
SolveReport run_point(const RunConfig& rc, const ExponentConfig& cfg,
                      const fs::path& dir) {
    const GridSpec grid = make_grid(cfg.n, rc.grid, rc.L);
    SpectralPlan plan(grid);
    const Field init = build_init(rc, grid);
    const SolverOptions opts = make_opts(rc);

    SolveReport rep;
    if (rc.method == "gradient_flow")
        rep = gradient_flow_minimize(init, cfg, plan, opts);
    else if (rc.method == "fixed_point")
        rep = fixed_point_minimize(init, cfg, plan, opts);
    else
        throw std::invalid_argument("unknown method '" + rc.method + "'");

    fs::create_directories(dir);
    save_field(rep.minimizer, dir / "minimizer.field");
    write_json(to_json(rep, "minimizer.field"), dir / "report.json");
    write_profile_csv(rep.minimizer, dir / "profile.csv");
    write_json(to_json(verify_theorem(rep.minimizer)), dir / "theorem.json");
    return rep;
}

int cmd_solve(const RunConfig& rc) {
    ExponentConfig cfg;
    SolveReport rep;
    try {
        const auto qs = parse_list(rc.q);
        if (qs.size() != 1) throw std::invalid_argument("solve expects a single q");
        cfg = make_exponents(rc.n, rc.s, qs[0], true);
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitBadConfig;
    }
    try {
        rep = run_point(rc, cfg, rc.out);
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return kExitBadConfig;
    }
    std::cout << "S_q = " << rep.s_q_estimate << " (" << rep.iterations
              << " iterations, residual " << rep.residual << ")\n";
    return rep.converged ? 0 : kExitNotConverged;
}

int cmd_verify(const RunConfig& rc, const std::string& field_path) {
    Field u;
    ExponentConfig cfg;
    try {
        u = load_field(field_path);
        const auto qs = parse_list(rc.q);
        if (qs.size() != 1) throw std::invalid_argument("verify expects a single q");
        cfg = make_exponents(u.grid.ndim, rc.s, qs[0], true);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    SpectralPlan plan(u.grid);
    const TheoremReport thm = verify_theorem(u);
    // On a minimizer the sign chain degenerates to near equality, so the
    // gap sits at discretization level rather than at rounding level.
    ProofChainOptions chain_opts;
    chain_opts.step1_tol_rel = 5e-2;
    const ProofChainReport chain = proof_chain_check(u, cfg, plan, chain_opts);

    fs::create_directories(rc.out);
    write_json(to_json(thm), fs::path(rc.out) / "theorem.json");
    write_json(to_json(chain), fs::path(rc.out) / "proof_chain.json");

    const bool ok = thm.passed(TheoremOptions{}) && chain.all_ok;
    std::cout << (ok ? "all checks passed" : "checks FAILED") << "\n";
    return ok ? 0 : kExitChecksFailed;
}

int cmd_sweep(const RunConfig& rc) {
    std::vector<std::pair<double, double>> points;  // (s, q)
    std::vector<ExponentConfig> cfgs;
    try {
        const auto qs = parse_list(rc.q);
        std::vector<double> ss;
        if (!rc.s_list.empty()) ss = parse_list(rc.s_list);
        else ss.push_back(rc.s);
        for (double sv : ss)
            for (double qv : qs) points.emplace_back(sv, qv);
        if (points.empty()) throw std::invalid_argument("empty parameter list");
        for (auto [sv, qv] : points) cfgs.push_back(make_exponents(rc.n, sv, qv, true));
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitBadConfig;
    }

    std::vector<SolveReport> reports(points.size());
    std::vector<std::string> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            char tag[64];
            std::snprintf(tag, sizeof tag, "s_%g_q_%g", points[i].first, points[i].second);
            RunConfig prc = rc;
            prc.s = points[i].first;
            try {
                reports[i] = run_point(prc, cfgs[i], fs::path(rc.out) / tag);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int jobs = std::max(1, rc.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < points.size(); ++i)
        if (!errors[i].empty()) {
            std::cerr << "sweep point failed: " << errors[i] << "\n";
            return kExitBadConfig;
        }

    // summary sorted by (n, s, q); points were generated in that order
    fs::create_directories(rc.out);
    std::ofstream csv(fs::path(rc.out) / "summary.csv");
    csv << "n,s,q,beta,S_q,residual,converged\n";
    char buf[256];
    bool all_converged = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& rep = reports[i];
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      rep.cfg.n, rep.cfg.s, rep.cfg.q, rep.cfg.beta, rep.s_q_estimate,
                      rep.residual, rep.converged ? 1 : 0);
        csv << buf;
        all_converged = all_converged && rep.converged;
    }
    return all_converged ? 0 : kExitNotConverged;
}

int cmd_rearrange(const RunConfig& rc, const std::string& field_path) {
    Field u;
    try {
        u = load_field(field_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    for (double& v : u.values) v = std::fabs(v);
    fs::create_directories(rc.out);
    save_field(sd_rearrangement(u), fs::path(rc.out) / "rearranged.field");
    return 0;
}

int cmd_majorize(const RunConfig& rc, const std::string& f_path, const std::string& g_path) {
    Field f, g;
    try {
        f = load_field(f_path);
        g = load_field(g_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    for (double& v : f.values) v = std::fabs(v);
    for (double& v : g.values) v = std::fabs(v);
    MajorizationReport rep;
    try {
        rep = majorizes(f, g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    fs::create_directories(rc.out);
    write_json(to_json(rep), fs::path(rc.out) / "majorize.json");
    std::cout << (rep.holds ? "relation holds" : "relation fails") << " (worst violation "
              << rep.worst_violation << ")\n";
    return rep.holds ? 0 : kExitChecksFailed;
}

int cmd_kernel_op(const RunConfig& rc, const std::string& field_path, bool potential) {
    Field u;
    try {
        u = load_field(field_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    try {
        SpectralPlan plan(u.grid);
        const Field out = potential ? riesz_potential(u, rc.s, plan)
                                    : fractional_power(u, rc.s, plan);
        fs::create_directories(rc.out);
        save_field(out, fs::path(rc.out) / (potential ? "potential.field" : "laplacian.field"));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best constants and minimizers of a weighted fractional inequality"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string config_path, field_path, field_path2;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value config file");
        cmd->add_option("--n", rc.n, "dimension (1-3)");
        cmd->add_option("--s", rc.s, "operator order");
        cmd->add_option("--q", rc.q, "norm exponent (comma list for sweep)");
        cmd->add_option("--s-list", rc.s_list, "comma list of s values (sweep)");
        cmd->add_option("--grid", rc.grid, "cells per axis (power of two)");
        cmd->add_option("--L", rc.L, "half-width of the box");
        cmd->add_option("--method", rc.method, "gradient_flow or fixed_point");
        cmd->add_option("--tol", rc.tol, "solver tolerance");
        cmd->add_option("--max-iters", rc.max_iters, "iteration cap");
        cmd->add_option("--init", rc.init, "gaussian, offcenter, random, or a field file");
        cmd->add_option("--out", rc.out, "output directory");
        cmd->add_option("--jobs", rc.jobs, "concurrent sweep points");
        cmd->add_option("--seed", rc.seed, "seed for randomized inits");
    };

    auto* solve = app.add_subcommand("solve", "compute a minimizer and the best constant");
    add_common(solve);
    auto* verify = app.add_subcommand("verify", "run the qualitative checks on a field file");
    verify->add_option("field", field_path, "field file")->required();
    add_common(verify);
    auto* sweep = app.add_subcommand("sweep", "solve over a parameter list");
    add_common(sweep);
    auto* rearr = app.add_subcommand("rearrange", "symmetric-decreasing rearrangement of |f|");
    rearr->add_option("field", field_path, "field file")->required();
    add_common(rearr);
    auto* major = app.add_subcommand("majorize", "ball-wise comparison of two fields");
    major->add_option("f", field_path, "field file")->required();
    major->add_option("g", field_path2, "field file")->required();
    add_common(major);
    auto* pot = app.add_subcommand("potential", "kernel convolution of order --s");
    pot->add_option("field", field_path, "field file")->required();
    add_common(pot);
    auto* lap = app.add_subcommand("laplacian", "spectral multiplier of order --s");
    lap->add_option("field", field_path, "field file")->required();
    add_common(lap);

    CLI11_PARSE(app, argc, argv);

    // config file first, then re-parse so explicit flags win
    if (!config_path.empty()) {
        try {
            RunConfig from_file;
            apply_config_file(from_file, config_path);
            rc = from_file;
        } catch (const std::exception& e) {
            std::cerr << "invalid config: " << e.what() << "\n";
            return kExitBadConfig;
        }
        try {
            app.clear();
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            return app.exit(e);
        }
    }

    if (solve->parsed()) return cmd_solve(rc);
    if (verify->parsed()) return cmd_verify(rc, field_path);
    if (sweep->parsed()) return cmd_sweep(rc);
    if (rearr->parsed()) return cmd_rearrange(rc, field_path);
    if (major->parsed()) return cmd_majorize(rc, field_path, field_path2);
    if (pot->parsed()) return cmd_kernel_op(rc, field_path, true);
    if (lap->parsed()) return cmd_kernel_op(rc, field_path, false);
    return kExitBadConfig;
}
