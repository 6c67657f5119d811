#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hslab/solver.hpp"
#include "hslab/verify.hpp"

namespace hslab {

// JSON views of the report types. Scalars are emitted with shortest
// round-trip formatting, so identical runs produce byte-identical
// documents.
nlohmann::json to_json(const ExponentConfig& cfg);
nlohmann::json to_json(const GridSpec& grid);
// minimizer_path is recorded in place of the field data.
nlohmann::json to_json(const SolveReport& rep, const std::string& minimizer_path);
nlohmann::json to_json(const TheoremReport& rep);
nlohmann::json to_json(const MajorizationReport& rep);
nlohmann::json to_json(const ProofChainReport& rep);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace hslab
