/*
* Copyright (C) 2026 episdyn contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef EPISDYN_COMMANDS_HPP
#define EPISDYN_COMMANDS_HPP

#include "episdyn/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace episdyn
{

/// Process exit codes shared by every command.
namespace exit_code
{
inline constexpr int ok = 0;
inline constexpr int invalid_input = 1; ///< parse or validation error
inline constexpr int failed = 2; ///< domain escape, failed certification, unmet precondition
inline constexpr int io_error = 3;
} // namespace exit_code

struct CommandResult
{
    int exit_code = exit_code::ok;
    std::string report; ///< text for stdout
    std::string diagnostics; ///< text for stderr
    std::vector<std::filesystem::path> files_written;
};

/// "SIR" or the SIRS label naming the mu3 + rho reduction.
std::string model_label(const Params& p);

/// R0, both equilibria with residuals and their stability reports.
CommandResult cmd_analyze(const RunConfig& cfg);

/// One t,S,I,R CSV per initial condition (plus phase_portrait.svg when emit_svg) in output_dir.
CommandResult cmd_simulate(const RunConfig& cfg);

/// Dulac scan, the applicable Lyapunov scan and the expanded-vs-chain-rule V' comparison.
CommandResult cmd_certify(const RunConfig& cfg);

/// Sweep table as CSV text, rows ordered by parameter value.
std::string sweep_csv(const RunConfig& cfg);

/// Writes sweep_csv to output_dir/sweep.csv.
CommandResult cmd_sweep(const RunConfig& cfg);

/// Maps an exception from any command onto the exit-code contract and a message.
int exit_code_for(const std::exception& err);

} // namespace episdyn

#endif // EPISDYN_COMMANDS_HPP
