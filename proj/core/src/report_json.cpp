#include "hslab/report_json.hpp"

#include <fstream>

namespace hslab {

nlohmann::json to_json(const ExponentConfig& cfg) {
    return {{"n", cfg.n}, {"s", cfg.s},       {"q", cfg.q},
            {"beta", cfg.beta}, {"q_crit", cfg.q_crit}};
}

nlohmann::json to_json(const GridSpec& grid) {
    return {{"ndim", grid.ndim}, {"n_cells", grid.n_cells}, {"L", grid.L}, {"h", grid.h}};
}

nlohmann::json to_json(const SolveReport& rep, const std::string& minimizer_path) {
    return {{"cfg", to_json(rep.cfg)},
            {"grid", to_json(rep.grid)},
            {"method", to_string(rep.method)},
            {"s_q_estimate", rep.s_q_estimate},
            {"iterations", rep.iterations},
            {"quotient_history", rep.quotient_history},
            {"residual", rep.residual},
            {"converged", rep.converged},
            {"minimizer_path", minimizer_path}};
}

nlohmann::json to_json(const TheoremReport& rep) {
    return {{"sign_ok", rep.sign_ok},
            {"min_over_max", rep.min_over_max},
            {"symmetry_residual", rep.symmetry_residual},
            {"monotonicity_ok", rep.monotonicity_ok},
            {"smallest_decrement", rep.smallest_decrement},
            {"noise_floor", rep.noise_floor}};
}

nlohmann::json to_json(const MajorizationReport& rep) {
    return {{"holds", rep.holds},
            {"worst_violation", rep.worst_violation},
            {"n_radii", rep.radii.size()}};
}

nlohmann::json to_json(const ProofChainReport& rep) {
    return {{"step1_min_gap", rep.step1_min_gap},
            {"step2_majorization", to_json(rep.step2_majorization)},
            {"step2_norm_gap", rep.step2_norm_gap},
            {"all_ok", rep.all_ok}};
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace hslab
