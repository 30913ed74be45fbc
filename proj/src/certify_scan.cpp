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
// Grid scans behind certify_grid and lyapunov_form_discrepancy. The serial loop is the
// reference; the OpenMP loop must reproduce it bit for bit.

#include "episdyn/certify.hpp"
#include "episdyn/model.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <optional>

namespace episdyn
{

namespace
{

struct Extremum
{
    double value = -std::numeric_limits<double>::infinity();
    double s = 0.0;
    double i = 0.0;
};

// Larger value wins; equal values go to the lexicographically smaller (s, i).
// Associative and commutative, so the reduction order does not matter.
inline Extremum better(const Extremum& a, const Extremum& b)
{
    if (a.value != b.value) {
        return a.value > b.value ? a : b;
    }
    if (a.s != b.s) {
        return a.s < b.s ? a : b;
    }
    return a.i <= b.i ? a : b;
}

#pragma omp declare reduction(extremum:Extremum : omp_out = better(omp_out, omp_in)) initializer(omp_priv = Extremum{})

struct ScanResult
{
    Extremum best;
    long count = 0;
};

struct Grid
{
    int resolution;
    double inset;

    double step() const
    {
        return (1.0 - 2.0 * inset) / (resolution - 1);
    }
    double coord(int k) const
    {
        return inset + k * step();
    }
};

template <class Eval>
ScanResult scan_serial(const Eval& eval, const Grid& g)
{
    ScanResult r;
    for (int j = 0; j < g.resolution; ++j) {
        const double s = g.coord(j);
        for (int k = 0; k < g.resolution; ++k) {
            const double i = g.coord(k);
            if (s + i > 1.0) {
                break;
            }
            if (auto v = eval(PlanarState{s, i})) {
                r.best = better(r.best, Extremum{*v, s, i});
                ++r.count;
            }
        }
    }
    return r;
}

template <class Eval>
ScanResult scan_parallel(const Eval& eval, const Grid& g)
{
    Extremum best;
    long count = 0;
    std::exception_ptr error;
#pragma omp parallel for schedule(static) reduction(extremum : best) reduction(+ : count)
    for (int j = 0; j < g.resolution; ++j) {
        const double s = g.coord(j);
        try {
            for (int k = 0; k < g.resolution; ++k) {
                const double i = g.coord(k);
                if (s + i > 1.0) {
                    break;
                }
                if (auto v = eval(PlanarState{s, i})) {
                    best = better(best, Extremum{*v, s, i});
                    ++count;
                }
            }
        }
        catch (...) {
#pragma omp critical(episdyn_scan_error)
            if (!error) {
                error = std::current_exception();
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return {best, count};
}

template <class Eval>
ScanResult scan(const Eval& eval, const Grid& g, Execution exec)
{
    return exec == Execution::Serial ? scan_serial(eval, g) : scan_parallel(eval, g);
}

// One level of local refinement: a 10x finer grid over the coarse cells around `at`.
template <class Eval>
ScanResult refine_around(const Eval& eval, const Grid& g, const Extremum& at)
{
    ScanResult r;
    const double coarse = g.step();
    const double fine = coarse / 10.0;
    const double hi = 1.0 - g.inset;
    for (int a = -10; a <= 10; ++a) {
        const double s = at.s + a * fine;
        if (s < g.inset || s > hi) {
            continue;
        }
        for (int b = -10; b <= 10; ++b) {
            const double i = at.i + b * fine;
            if (i < g.inset || i > hi || s + i > 1.0) {
                continue;
            }
            if (auto v = eval(PlanarState{s, i})) {
                r.best = better(r.best, Extremum{*v, s, i});
                ++r.count;
            }
        }
    }
    return r;
}

void check_grid(const Params& p, int resolution, double inset, bool boundary_undefined)
{
    p.validate();
    if (resolution < 2) {
        throw PreconditionViolated("scan resolution must be at least 2");
    }
    if (!(inset >= 0.0 && inset < 0.5)) {
        throw PreconditionViolated("boundary inset must lie in [0, 0.5)");
    }
    if (boundary_undefined && !(inset > 0.0)) {
        throw PreconditionViolated("quantity is undefined on the boundary; boundary inset must be > 0");
    }
    if (p.incidence == Incidence::HollingII) {
        throw PreconditionViolated("certification expressions are specific to the non-monotone incidence");
    }
}

Equilibrium require_endemic(const Params& p)
{
    const auto endemic = compute_endemic(p);
    if (const auto* none = std::get_if<NoEndemicEquilibrium>(&endemic)) {
        throw PreconditionViolated("endemic scan requires R0 > 1: " + none->reason);
    }
    return std::get<Equilibrium>(endemic);
}

template <class Eval>
Certificate run(CertificateKind kind, const Eval& eval, const Params& p, const ScanOptions& opts, Execution exec)
{
    const Grid g{opts.resolution, opts.boundary_inset};
    ScanResult r = scan(eval, g, exec);
    if (r.count == 0) {
        throw PreconditionViolated("scan grid contains no admissible points");
    }

    Certificate c;
    c.kind = kind;
    c.params = p;
    c.grid = {opts.resolution, opts.boundary_inset, opts.margin, r.count, false};
    if (opts.refine && verdict_for(r.best.value, opts.margin) != Verdict::Certified) {
        const ScanResult local = refine_around(eval, g, r.best);
        r.best = better(r.best, local.best);
        c.grid.points_scanned += local.count;
        c.grid.refined = true;
    }
    c.extremal_value = r.best.value;
    c.extremal_point = {r.best.s, r.best.i};
    c.verdict = verdict_for(c.extremal_value, opts.margin);
    return c;
}

} // namespace

Certificate certify_grid(ScanQuantity quantity, const Params& p, const ScanOptions& opts, Execution exec)
{
    switch (quantity) {
    case ScanQuantity::DulacDivergence: {
        check_grid(p, opts.resolution, opts.boundary_inset, true);
        auto eval = [&p](const PlanarState& x) -> std::optional<double> {
            return dulac_divergence(x, p);
        };
        return run(CertificateKind::DulacNoLimitCycle, eval, p, opts, exec);
    }
    case ScanQuantity::LyapunovDFEDerivative: {
        check_grid(p, opts.resolution, opts.boundary_inset, false);
        auto eval = [&p](const PlanarState& x) -> std::optional<double> {
            // V' vanishes identically on the invariant S-axis.
            if (x.i == 0.0) {
                return std::nullopt;
            }
            return lyapunov_dfe_derivative(x, p);
        };
        return run(CertificateKind::LyapunovDFE, eval, p, opts, exec);
    }
    case ScanQuantity::LyapunovEndemicDerivative: {
        check_grid(p, opts.resolution, opts.boundary_inset, true);
        const Equilibrium eq = require_endemic(p);
        const double radius = opts.exclusion_radius;
        auto eval = [&p, &eq, radius](const PlanarState& x) -> std::optional<double> {
            if (std::hypot(x.s - eq.point.s, x.i - eq.point.i) < radius) {
                return std::nullopt;
            }
            return lyapunov_endemic_derivative(x, p, eq);
        };
        return run(CertificateKind::LyapunovEndemic, eval, p, opts, exec);
    }
    }
    throw PreconditionViolated("unknown scan quantity");
}

DiscrepancyReport lyapunov_form_discrepancy(const Params& p, int resolution, double boundary_inset, Execution exec)
{
    check_grid(p, resolution, boundary_inset, true);
    const Equilibrium eq = require_endemic(p);
    auto eval = [&p, &eq](const PlanarState& x) -> std::optional<double> {
        return std::abs(lyapunov_endemic_derivative(x, p, eq) - lyapunov_endemic_derivative_expanded(x, p, eq));
    };
    const ScanResult r = scan(eval, Grid{resolution, boundary_inset}, exec);
    return {r.best.value, {r.best.s, r.best.i}, resolution, r.count};
}

} // namespace episdyn
