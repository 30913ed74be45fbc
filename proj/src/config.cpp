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
#include "episdyn/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace episdyn
{

Command parse_command(std::string_view name)
{
    if (name == "analyze") {
        return Command::Analyze;
    }
    if (name == "simulate") {
        return Command::Simulate;
    }
    if (name == "certify") {
        return Command::Certify;
    }
    if (name == "sweep") {
        return Command::Sweep;
    }
    throw ValidationError("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command c)
{
    switch (c) {
    case Command::Analyze:
        return "analyze";
    case Command::Simulate:
        return "simulate";
    case Command::Certify:
        return "certify";
    case Command::Sweep:
        return "sweep";
    }
    return "?";
}

bool is_sweepable(std::string_view name)
{
    return name == "beta" || name == "alpha" || name == "mu2" || name == "mu3" || name == "gamma" || name == "rho";
}

void set_parameter(Params& p, std::string_view name, double value)
{
    if (name == "beta") {
        p.beta = value;
    }
    else if (name == "alpha") {
        p.alpha = value;
    }
    else if (name == "mu2") {
        p.mu2 = value;
    }
    else if (name == "mu3") {
        p.mu3 = value;
    }
    else if (name == "gamma") {
        p.gamma = value;
    }
    else if (name == "rho") {
        p.rho = value;
    }
    else {
        throw ValidationError("parameter '" + std::string(name) +
                              "' cannot be swept (expected beta, alpha, mu2, mu3, gamma or rho)");
    }
}

namespace
{

std::string_view trim(std::string_view s)
{
    auto space = [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) != 0;
    };
    while (!s.empty() && space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

double to_double(std::string_view text, int line, std::string_view key)
{
    text = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw ParseError(line, "value of '" + std::string(key) + "' is not a number: '" + std::string(text) + "'");
    }
    return v;
}

int to_int(std::string_view text, int line, std::string_view key)
{
    text = trim(text);
    int v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw ParseError(line, "value of '" + std::string(key) + "' is not an integer: '" + std::string(text) + "'");
    }
    return v;
}

bool to_bool(std::string_view text, int line, std::string_view key)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw ParseError(line, "value of '" + std::string(key) + "' is not a boolean: '" + std::string(text) + "'");
}

PlanarState to_point(std::string_view text, int line)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw ParseError(line, "initial condition must be 's, i'");
    }
    return {to_double(text.substr(0, comma), line, "initial"), to_double(text.substr(comma + 1), line, "initial")};
}

const std::set<std::string, std::less<>> known_keys{
    "beta",    "alpha",       "mu1",         "mu2",         "mu3",       "gamma",    "rho",
    "n_total", "incidence",   "scale",       "method",      "step",      "abs_tol",  "rel_tol",
    "min_step", "max_step",   "t_max",       "convergence_radius",       "convergence_window",
    "guard_tol", "system",    "initial",     "sweep_param", "sweep_min", "sweep_max", "sweep_count",
    "resolution", "margin",   "inset",       "out",         "svg"};

struct Entry
{
    std::string value;
    int line = 0;
};

struct Document
{
    std::map<std::string, Entry, std::less<>> values;
    std::vector<Entry> initial;
};

void add_entry(Document& doc, std::string key, std::string value, int line, bool allow_replace)
{
    if (!known_keys.contains(key)) {
        throw ParseError(line, "unknown key '" + key + "'");
    }
    if (key == "initial") {
        doc.initial.push_back({std::move(value), line});
        return;
    }
    if (!allow_replace && doc.values.contains(key)) {
        throw ParseError(line, "duplicate key '" + key + "'");
    }
    doc.values[key] = {std::move(value), line};
}

Document read_document(std::string_view text)
{
    Document doc;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ParseError(line_no, "missing key before '='");
        }
        add_entry(doc, std::string(key), std::string(value), line_no, false);
    }
    return doc;
}

Method to_method(std::string_view text, int line)
{
    std::string key;
    for (char c : trim(text)) {
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (key == "rk45" || key == "rk45adaptive" || key == "dopri5") {
        return Method::RK45Adaptive;
    }
    if (key == "rk4" || key == "rk4fixed") {
        return Method::RK4Fixed;
    }
    throw ParseError(line, "unknown integration method '" + std::string(text) + "' (expected rk45 or rk4)");
}

} // namespace

RunConfig parse_config(std::string_view text, Command command, const Overrides& overrides)
{
    Document doc = read_document(text);
    bool initial_overridden = false;
    for (const auto& [key, value] : overrides) {
        if (key == "initial" && !initial_overridden) {
            doc.initial.clear();
            initial_overridden = true;
        }
        add_entry(doc, key, value, 0, true);
    }

    RunConfig cfg;
    cfg.command = command;
    const auto get = [&doc](std::string_view key) -> const Entry* {
        const auto it = doc.values.find(key);
        return it == doc.values.end() ? nullptr : &it->second;
    };
    const auto number = [&](std::string_view key, double& target) {
        if (const Entry* e = get(key)) {
            target = to_double(e->value, e->line, key);
        }
    };

    Params& p = cfg.params;
    number("beta", p.beta);
    number("alpha", p.alpha);
    number("mu1", p.mu1);
    number("mu2", p.mu2);
    number("mu3", p.mu3);
    number("gamma", p.gamma);
    number("rho", p.rho);
    number("n_total", p.n_total);
    if (const Entry* e = get("incidence")) {
        try {
            p.incidence = parse_incidence(e->value);
        }
        catch (const ValidationError& err) {
            throw ParseError(e->line, err.what());
        }
    }
    if (const Entry* e = get("scale")) {
        const auto scale = trim(e->value);
        if (scale == "raw") {
            p = Params::from_raw(p);
        }
        else if (scale != "normalized") {
            throw ParseError(e->line, "scale must be 'normalized' or 'raw'");
        }
    }

    IntegratorConfig& ic = cfg.integrator;
    if (const Entry* e = get("method")) {
        ic.method = to_method(e->value, e->line);
    }
    number("step", ic.step);
    number("abs_tol", ic.abs_tol);
    number("rel_tol", ic.rel_tol);
    number("min_step", ic.min_step);
    number("max_step", ic.max_step);
    number("t_max", ic.t_max);
    number("convergence_radius", ic.convergence_radius);
    number("guard_tol", ic.guard_tol);
    if (const Entry* e = get("convergence_window")) {
        ic.convergence_window = to_int(e->value, e->line, "convergence_window");
    }
    if (const Entry* e = get("system")) {
        const auto sys = trim(e->value);
        if (sys == "planar") {
            cfg.system = SystemKind::Planar;
        }
        else if (sys == "full") {
            cfg.system = SystemKind::Full;
        }
        else {
            throw ParseError(e->line, "system must be 'planar' or 'full'");
        }
    }
    for (const Entry& e : doc.initial) {
        cfg.initial_conditions.push_back(to_point(e.value, e.line));
    }

    if (const Entry* e = get("resolution")) {
        cfg.scan.resolution = to_int(e->value, e->line, "resolution");
    }
    number("margin", cfg.scan.margin);
    number("inset", cfg.scan.boundary_inset);
    if (const Entry* e = get("out")) {
        cfg.output_dir = e->value;
    }
    if (const Entry* e = get("svg")) {
        cfg.emit_svg = to_bool(e->value, e->line, "svg");
    }

    if (command == Command::Sweep) {
        SweepSpec sweep;
        const Entry* name = get("sweep_param");
        if (name == nullptr || !get("sweep_min") || !get("sweep_max") || !get("sweep_count")) {
            throw ValidationError("sweep requires sweep_param, sweep_min, sweep_max and sweep_count");
        }
        sweep.parameter = name->value;
        number("sweep_min", sweep.min);
        number("sweep_max", sweep.max);
        const Entry* count = get("sweep_count");
        sweep.count = to_int(count->value, count->line, "sweep_count");
        if (!is_sweepable(sweep.parameter)) {
            throw ValidationError("parameter '" + sweep.parameter +
                                  "' cannot be swept (expected beta, alpha, mu2, mu3, gamma or rho)");
        }
        if (sweep.count < 1) {
            throw ValidationError("sweep_count >= 1");
        }
        if (!(sweep.min <= sweep.max)) {
            throw ValidationError("sweep_min <= sweep_max");
        }
        cfg.sweep = sweep;
    }

    // The swept parameter is validated per point.
    if (command != Command::Sweep) {
        p.validate();
    }
    ic.validate();
    if (command == Command::Simulate) {
        if (cfg.initial_conditions.empty()) {
            throw ValidationError("simulate requires at least one initial condition ('initial = s, i')");
        }
        for (const auto& x : cfg.initial_conditions) {
            if (simplex_violation(x) > 0.0) {
                throw ValidationError("initial condition (" + std::to_string(x.s) + ", " + std::to_string(x.i) +
                                      ") is outside the simplex s >= 0, i >= 0, s + i <= 1");
            }
        }
    }
    if (cfg.scan.resolution < 2) {
        throw ValidationError("resolution >= 2");
    }
    return cfg;
}

} // namespace episdyn
