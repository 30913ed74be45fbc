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
#include "episdyn/commands.hpp"
#include "episdyn/csv.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    using namespace episdyn;

    CLI::App app{"Equilibria, stability certification and simulation of SIR/SIRS models with "
                 "non-monotone incidence"};
    app.name("episdyn");

    std::string command;
    std::string config_path;
    app.add_option("command", command, "analyze | simulate | certify | sweep")
        ->required()
        ->check(CLI::IsMember({"analyze", "simulate", "certify", "sweep"}));
    app.add_option("--config", config_path, "key = value configuration file");

    // flag name -> config key; values are forwarded as text and parsed with the file's rules
    const std::vector<std::pair<std::string, std::string>> value_flags{
        {"--beta", "beta"},
        {"--alpha", "alpha"},
        {"--mu1", "mu1"},
        {"--mu2", "mu2"},
        {"--mu3", "mu3"},
        {"--gamma", "gamma"},
        {"--rho", "rho"},
        {"--n-total", "n_total"},
        {"--incidence", "incidence"},
        {"--scale", "scale"},
        {"--method", "method"},
        {"--step", "step"},
        {"--abs-tol", "abs_tol"},
        {"--rel-tol", "rel_tol"},
        {"--min-step", "min_step"},
        {"--max-step", "max_step"},
        {"--t-max", "t_max"},
        {"--convergence-radius", "convergence_radius"},
        {"--convergence-window", "convergence_window"},
        {"--guard-tol", "guard_tol"},
        {"--system", "system"},
        {"--sweep-param", "sweep_param"},
        {"--sweep-min", "sweep_min"},
        {"--sweep-max", "sweep_max"},
        {"--sweep-count", "sweep_count"},
        {"--resolution", "resolution"},
        {"--margin", "margin"},
        {"--inset", "inset"},
        {"--out", "out"},
    };
    std::map<std::string, std::string> values;
    for (const auto& [flag, key] : value_flags) {
        app.add_option(flag, values[key], "overrides '" + key + "'");
    }
    std::vector<std::string> initial;
    app.add_option("--initial", initial, "initial condition 's,i' (repeatable)");
    bool svg = false;
    app.add_flag("--svg", svg, "write phase_portrait.svg (simulate)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::invalid_input;
    }

    try {
        Overrides overrides;
        for (const auto& [flag, key] : value_flags) {
            if (app.count(flag) > 0) {
                overrides.emplace_back(key, values[key]);
            }
        }
        for (const auto& x : initial) {
            overrides.emplace_back("initial", x);
        }
        if (svg) {
            overrides.emplace_back("svg", "true");
        }

        const std::string text = config_path.empty() ? std::string{} : read_text_file(config_path);
        const Command cmd = parse_command(command);
        const RunConfig cfg = parse_config(text, cmd, overrides);

        CommandResult result;
        switch (cmd) {
        case Command::Analyze:
            result = cmd_analyze(cfg);
            break;
        case Command::Simulate:
            result = cmd_simulate(cfg);
            break;
        case Command::Certify:
            result = cmd_certify(cfg);
            break;
        case Command::Sweep:
            result = cmd_sweep(cfg);
            break;
        }
        std::cout << result.report;
        std::cerr << result.diagnostics;
        return result.exit_code;
    }
    catch (const std::exception& e) {
        std::cerr << "episdyn: " << e.what() << '\n';
        return exit_code_for(e);
    }
}
