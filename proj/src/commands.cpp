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
#include "episdyn/equilibria.hpp"
#include "episdyn/format.hpp"
#include "episdyn/svg.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

namespace episdyn
{

std::string model_label(const Params& p)
{
    return p.is_sirs() ? "SIRS (reduced: mu3 -> mu3 + rho)" : "SIR";
}

int exit_code_for(const std::exception& err)
{
    if (dynamic_cast<const ParseError*>(&err) || dynamic_cast<const ValidationError*>(&err)) {
        return exit_code::invalid_input;
    }
    if (dynamic_cast<const IoError*>(&err)) {
        return exit_code::io_error;
    }
    return exit_code::failed;
}

namespace
{

std::string complex_text(std::complex<double> z)
{
    if (z.imag() == 0.0) {
        return fmt17(z.real());
    }
    return fmt17(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt17(std::abs(z.imag())) + "i";
}

void write_params(std::ostream& os, const Params& p)
{
    os << "model = " << model_label(p) << '\n';
    os << "incidence = " << to_string(p.incidence) << '\n';
    os << "beta = " << fmt17(p.beta) << '\n';
    os << "alpha = " << fmt17(p.alpha) << '\n';
    os << "mu1 = " << fmt17(p.mu1) << '\n';
    os << "mu2 = " << fmt17(p.mu2) << '\n';
    os << "mu3 = " << fmt17(p.mu3) << '\n';
    os << "gamma = " << fmt17(p.gamma) << '\n';
    os << "rho = " << fmt17(p.rho) << '\n';
    if (p.is_sirs()) {
        os << "mu3_effective = " << fmt17(p.mu3_eff()) << '\n';
    }
    os << "R0 = " << fmt17(r0(p)) << '\n';
}

void write_report(std::ostream& os, const Equilibrium& eq, const StabilityReport& rep)
{
    const auto& j = rep.jacobian;
    os << "S = " << fmt17(eq.point.s) << '\n';
    os << "I = " << fmt17(eq.point.i) << '\n';
    os << "residual = " << fmt17(eq.residual) << '\n';
    os << "jacobian = [[" << fmt17(j[0][0]) << ", " << fmt17(j[0][1]) << "], [" << fmt17(j[1][0]) << ", "
       << fmt17(j[1][1]) << "]]\n";
    os << "eigenvalue_1 = " << complex_text(rep.eigenvalues[0]) << '\n';
    os << "eigenvalue_2 = " << complex_text(rep.eigenvalues[1]) << '\n';
    os << "trace = " << fmt17(rep.trace) << '\n';
    os << "determinant = " << fmt17(rep.determinant) << '\n';
    if (rep.x_quantity) {
        os << "X = " << fmt17(*rep.x_quantity) << '\n';
        os << "Y = " << fmt17(*rep.y_quantity) << '\n';
        os << "closed_form_trace = " << fmt17(*rep.closed_form_trace) << '\n';
        os << "closed_form_determinant = " << fmt17(*rep.closed_form_determinant) << '\n';
    }
    os << "classification = " << to_string(rep.classification) << '\n';
}

std::vector<PortraitMarker> markers_for(const Params& p)
{
    std::vector<PortraitMarker> out;
    out.push_back({compute_dfe(p).point, "DFE",
                   classify_dfe(p).classification == Stability::LocallyAsymptoticallyStable});
    const auto endemic = classify_endemic(p);
    if (const auto* rep = std::get_if<StabilityReport>(&endemic)) {
        out.push_back({rep->point, "endemic", rep->classification == Stability::LocallyAsymptoticallyStable});
    }
    return out;
}

void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
}

struct RunOutput
{
    std::string csv;
    std::vector<PlanarState> path;
    TerminalReason reason = TerminalReason::TimeLimit;
    double t_end = 0.0;
    PlanarState last;
    std::string diagnostic;
};

template <class State>
RunOutput summarize(const Trajectory<State>& traj)
{
    RunOutput out;
    out.csv = trajectory_csv(traj);
    out.path.reserve(traj.states.size());
    for (const auto& x : traj.states) {
        if constexpr (std::is_same_v<State, FullState>) {
            out.path.push_back(x.planar());
        }
        else {
            out.path.push_back(x);
        }
    }
    out.reason = traj.terminal_reason;
    out.t_end = traj.times.back();
    out.last = out.path.back();
    out.diagnostic = traj.diagnostic;
    return out;
}

std::string file_name(const char* stem, std::size_t index, const char* ext)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, index, ext);
    return buf;
}

} // namespace

CommandResult cmd_analyze(const RunConfig& cfg)
{
    const Params& p = cfg.params;
    std::ostringstream os;
    write_params(os, p);

    os << "\n[disease_free]\n";
    write_report(os, compute_dfe(p), classify_dfe(p));

    os << "\n[endemic]\n";
    const auto endemic = compute_endemic(p);
    if (const auto* none = std::get_if<NoEndemicEquilibrium>(&endemic)) {
        os << "status = no endemic equilibrium (" << none->reason << ")\n";
    }
    else {
        const auto stability = classify_endemic(p);
        write_report(os, std::get<Equilibrium>(endemic), std::get<StabilityReport>(stability));
    }
    return {exit_code::ok, os.str(), {}, {}};
}

CommandResult cmd_simulate(const RunConfig& cfg)
{
    const Params& p = cfg.params;
    const auto& x0s = cfg.initial_conditions;
    std::vector<RunOutput> runs(x0s.size());
    std::vector<std::exception_ptr> errors(x0s.size());

    const auto n = static_cast<std::ptrdiff_t>(x0s.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        try {
            if (cfg.system == SystemKind::Full) {
                const FullState start{x0s[k].s, x0s[k].i, 1.0 - x0s[k].s - x0s[k].i};
                runs[k] = summarize(integrate_full(start, p, cfg.integrator));
            }
            else {
                runs[k] = summarize(integrate_planar(x0s[k], p, cfg.integrator));
            }
        }
        catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }

    ensure_directory(cfg.output_dir);
    CommandResult result;
    std::ostringstream report;
    std::ostringstream diag;
    report << "model = " << model_label(p) << '\n';
    report << "R0 = " << fmt17(r0(p)) << '\n';
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto path = cfg.output_dir / file_name("trajectory", k, "csv");
        write_text_file(path, runs[k].csv);
        result.files_written.push_back(path);
        report << path.filename().string() << ": terminal_reason = " << to_string(runs[k].reason)
               << ", t_end = " << fmt17(runs[k].t_end) << ", S = " << fmt17(runs[k].last.s)
               << ", I = " << fmt17(runs[k].last.i) << '\n';
        if (runs[k].reason == TerminalReason::DomainEscape) {
            result.exit_code = exit_code::failed;
            diag << path.filename().string() << ": domain escape: " << runs[k].diagnostic << '\n';
        }
    }
    if (cfg.emit_svg) {
        std::vector<std::vector<PlanarState>> paths;
        for (const auto& run : runs) {
            paths.push_back(run.path);
        }
        const auto path = cfg.output_dir / "phase_portrait.svg";
        write_text_file(path, phase_portrait_svg(paths, markers_for(p), model_label(p) + ", R0 = " + fmt17(r0(p))));
        result.files_written.push_back(path);
    }
    result.report = report.str();
    result.diagnostics = diag.str();
    return result;
}

CommandResult cmd_certify(const RunConfig& cfg)
{
    const Params& p = cfg.params;
    CommandResult result;
    std::ostringstream os;
    write_params(os, p);

    bool all_certified = true;
    os << "\n[dulac]\n";
    const Certificate dulac = certify_grid(ScanQuantity::DulacDivergence, p, cfg.scan);
    os << to_text(dulac);
    all_certified = all_certified && dulac.verdict == Verdict::Certified;

    const double R0 = r0(p);
    try {
        if (R0 < 1.0 - marginal_r0_band) {
            os << "\n[lyapunov_dfe]\n";
            const Certificate c = certify_grid(ScanQuantity::LyapunovDFEDerivative, p, cfg.scan);
            os << to_text(c);
            all_certified = all_certified && c.verdict == Verdict::Certified;
        }
        else {
            os << "\n[lyapunov_endemic]\n";
            const Certificate c = certify_grid(ScanQuantity::LyapunovEndemicDerivative, p, cfg.scan);
            os << to_text(c);
            all_certified = all_certified && c.verdict == Verdict::Certified;

            os << "\n[lyapunov_form_comparison]\n";
            os << to_text(lyapunov_form_discrepancy(p, cfg.scan.resolution, cfg.scan.boundary_inset));
        }
    }
    catch (const PreconditionViolated& err) {
        os << "status = PreconditionViolated: " << err.what() << '\n';
        result.diagnostics = std::string("precondition violated: ") + err.what() + '\n';
        all_certified = false;
    }

    os << "\nall_certified = " << (all_certified ? "true" : "false") << '\n';
    result.report = os.str();
    result.exit_code = all_certified ? exit_code::ok : exit_code::failed;
    return result;
}

std::string sweep_csv(const RunConfig& cfg)
{
    if (!cfg.sweep) {
        throw ValidationError("sweep requires a sweep specification");
    }
    const SweepSpec& spec = *cfg.sweep;
    struct Row
    {
        double r0 = 0.0;
        Stability dfe = Stability::Marginal;
        bool endemic = false;
        double s = 0.0;
        double i = 0.0;
        Stability endemic_class = Stability::Marginal;
    };

    std::vector<Params> points(spec.count, cfg.params);
    std::vector<double> values(spec.count, spec.min);
    for (int k = 0; k < spec.count; ++k) {
        if (spec.count > 1) {
            values[k] = k == spec.count - 1 ? spec.max : spec.min + k * (spec.max - spec.min) / (spec.count - 1);
        }
        set_parameter(points[k], spec.parameter, values[k]);
        points[k].validate();
    }

    std::vector<Row> rows(spec.count);
    std::vector<std::exception_ptr> errors(spec.count);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < spec.count; ++k) {
        try {
            const Params& p = points[k];
            Row& row = rows[k];
            row.r0 = r0(p);
            row.dfe = classify_dfe(p).classification;
            const auto endemic = classify_endemic(p);
            if (const auto* rep = std::get_if<StabilityReport>(&endemic)) {
                row.endemic = true;
                row.s = rep->point.s;
                row.i = rep->point.i;
                row.endemic_class = rep->classification;
            }
        }
        catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }

    std::string out = spec.parameter + ",R0,dfe_classification,endemic_exists,S_star,I_star,endemic_classification\n";
    for (int k = 0; k < spec.count; ++k) {
        const Row& row = rows[k];
        out += fmt17(values[k]) + ',' + fmt17(row.r0) + ',' + std::string(to_string(row.dfe)) + ',';
        if (row.endemic) {
            out += "1," + fmt17(row.s) + ',' + fmt17(row.i) + ',' + std::string(to_string(row.endemic_class));
        }
        else {
            out += "0,,,None";
        }
        out += '\n';
    }
    return out;
}

CommandResult cmd_sweep(const RunConfig& cfg)
{
    const std::string csv = sweep_csv(cfg);
    ensure_directory(cfg.output_dir);
    const auto path = cfg.output_dir / "sweep.csv";
    write_text_file(path, csv);
    CommandResult result;
    result.files_written.push_back(path);
    result.report = "wrote " + path.string() + '\n';
    return result;
}

} // namespace episdyn
