#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include <json.hpp>

#include "fracneumann/certify.hpp"
#include "fracneumann/config.hpp"
#include "fracneumann/kernel.hpp"
#include "fracneumann/model.hpp"
#include "fracneumann/solve.hpp"

namespace fracneumann {

enum ExitCode { kExitOk = 0, kExitInput = 1, kExitHypothesis = 2 };

FracParams params_from(const Config& cfg);
QuadratureOptions quadrature_from(const Config& cfg);
std::shared_ptr<const Mesh> mesh_from(const Config& cfg, const FracParams& params);
Coefficient coefficient_from(const Config& cfg, std::shared_ptr<const Mesh> mesh);
/// `rho` is used by the example31 type (the resolved rho).
Nonlinearity nonlinearity_from(const Config& cfg, double rho = 0.0);

nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const EnergyBreakdown& e);
nlohmann::json to_json(const SolveReport& report, bool timing);

/// Runs one command (assemble, constants, certify, solve, example31) and
/// writes its reports under output.dir.  Throws InputError on bad input.
int run_command(const std::string& command, const Config& cfg, std::ostream& log);

/// run_command with InputError mapped to exit code 1 (message on err).
int run(const std::string& command, const std::string& config_path, std::ostream& log, std::ostream& err);

}  // namespace fracneumann
