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
#ifndef EPISDYN_CONFIG_HPP
#define EPISDYN_CONFIG_HPP

#include "episdyn/certify.hpp"
#include "episdyn/integrate.hpp"
#include "episdyn/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace episdyn
{

enum class Command
{
    Analyze,
    Simulate,
    Certify,
    Sweep,
};

/// Which vector field simulate integrates.
enum class SystemKind
{
    Planar,
    Full,
};

Command parse_command(std::string_view name);
std::string_view to_string(Command c);

struct SweepSpec
{
    std::string parameter; ///< one of beta, alpha, mu2, mu3, gamma, rho
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

struct RunConfig
{
    Params params;
    Command command = Command::Analyze;
    IntegratorConfig integrator;
    SystemKind system = SystemKind::Planar;
    std::vector<PlanarState> initial_conditions;
    std::optional<SweepSpec> sweep; ///< present iff command == Sweep
    ScanOptions scan;
    std::filesystem::path output_dir = "episdyn_out";
    bool emit_svg = false;
};

/// key/value pairs applied after the file, e.g. from command-line flags.
using Overrides = std::vector<std::pair<std::string, std::string>>;

/**
 * Parses a `key = value` document (one entry per line, `#` starts a comment).
 *
 * Recognized keys: beta alpha mu1 mu2 mu3 gamma rho n_total incidence scale, method step
 * abs_tol rel_tol min_step max_step t_max convergence_radius convergence_window guard_tol
 * system initial, sweep_param sweep_min sweep_max sweep_count, resolution margin inset, out svg.
 * `initial = s, i` may repeat; every other key may appear once. With `scale = raw`, beta and
 * alpha are per-capita values and are multiplied by n_total and n_total^2.
 *
 * Throws ParseError (with line number; 0 for overrides) on malformed lines or unknown keys and
 * ValidationError when the merged configuration violates an invariant.
 */
RunConfig parse_config(std::string_view text, Command command, const Overrides& overrides = {});

/// Names accepted by sweep_param.
bool is_sweepable(std::string_view name);

/// Sets a sweepable parameter by name.
void set_parameter(Params& p, std::string_view name, double value);

} // namespace episdyn

#endif // EPISDYN_CONFIG_HPP
