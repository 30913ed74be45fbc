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
#include "episdyn/certify.hpp"
#include "episdyn/model.hpp"
#include "episdyn/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace episdyn
{

std::string_view to_string(ScanQuantity q)
{
    switch (q) {
    case ScanQuantity::DulacDivergence:
        return "DulacDivergence";
    case ScanQuantity::LyapunovDFEDerivative:
        return "LyapunovDFEDerivative";
    case ScanQuantity::LyapunovEndemicDerivative:
        return "LyapunovEndemicDerivative";
    }
    return "?";
}

std::string_view to_string(CertificateKind k)
{
    switch (k) {
    case CertificateKind::DulacNoLimitCycle:
        return "DulacNoLimitCycle";
    case CertificateKind::LyapunovDFE:
        return "LyapunovDFE";
    case CertificateKind::LyapunovEndemic:
        return "LyapunovEndemic";
    }
    return "?";
}

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Certified:
        return "Certified";
    case Verdict::CounterexampleFound:
        return "CounterexampleFound";
    case Verdict::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

namespace
{

// MassAction is the alpha = 0 member of the non-monotone family.
double inhibition(const Params& p)
{
    return p.incidence == Incidence::MassAction ? 0.0 : p.alpha;
}

double volterra_weight(const Params& p, const Equilibrium& eq)
{
    const double a = inhibition(p);
    const double is = eq.point.i;
    return (2.0 * p.mu3_eff() + p.gamma) / p.beta * (1.0 + a * is * is);
}

void require_positive_i(const PlanarState& x)
{
    if (!(x.i > 0.0)) {
        throw DomainError("endemic Lyapunov function needs i > 0 (log(I/I*) is undefined on the S-axis)");
    }
}

} // namespace

double lyapunov_dfe(const PlanarState& x)
{
    return x.i;
}

double lyapunov_dfe_derivative(const PlanarState& x, const Params& p)
{
    const double v = planar_rhs(x, p).i;
    const double bound = (p.mu2 + p.gamma) * (r0(p) * x.s - 1.0) * x.i;
    if (v > bound + 1e-14) {
        std::ostringstream os;
        os.precision(17);
        os << "V' = " << v << " exceeds the bound (mu2+gamma)(R0 s - 1) i = " << bound << " at (" << x.s << ", "
           << x.i << ")";
        throw FormulaMismatch(os.str());
    }
    return v;
}

double lyapunov_endemic(const PlanarState& x, const Params& p, const Equilibrium& eq)
{
    require_positive_i(x);
    const double ss = eq.point.s;
    const double is = eq.point.i;
    const double sum = x.s - ss + x.i - is;
    return 0.5 * sum * sum + volterra_weight(p, eq) * (x.i - is - is * std::log(x.i / is));
}

double lyapunov_endemic_derivative(const PlanarState& x, const Params& p, const Equilibrium& eq)
{
    require_positive_i(x);
    const auto f = planar_rhs(x, p);
    const double sum = x.s - eq.point.s + x.i - eq.point.i;
    return (f.s + f.i) * sum + volterra_weight(p, eq) * f.i * (1.0 - eq.point.i / x.i);
}

double lyapunov_endemic_derivative_expanded(const PlanarState& x, const Params& p, const Equilibrium& eq)
{
    const double m = p.mu3_eff();
    const double a = inhibition(p);
    const double ds = x.s - eq.point.s;
    const double di = x.i - eq.point.i;
    return -m * ds * ds - (m + p.gamma) * di * di -
           (2.0 * m + p.gamma) * a * x.s * (eq.point.i + x.i) / (1.0 + a * x.i * x.i) * di * di;
}

double dulac_divergence(const PlanarState& x, const Params& p)
{
    if (!(x.s > 0.0) || !(x.i > 0.0)) {
        throw DomainError("Dulac function B = (1 + alpha I^2)/(beta S I) needs s > 0 and i > 0");
    }
    const double a = inhibition(p);
    const double w = 1.0 + a * x.i * x.i;
    const double bs2 = p.beta * x.s * x.s;
    return -p.mu2 * w / bs2 - 2.0 * a * x.i * (p.mu2 + p.gamma) / (p.beta * x.s) +
           p.mu3_eff() * w / bs2 * (1.0 - 1.0 / x.i);
}

Verdict verdict_for(double extremal_value, double margin)
{
    if (extremal_value < -margin) {
        return Verdict::Certified;
    }
    if (extremal_value > margin) {
        return Verdict::CounterexampleFound;
    }
    return Verdict::Inconclusive;
}

std::string to_text(const Certificate& c)
{
    std::ostringstream os;
    os << "kind = " << to_string(c.kind) << '\n';
    os << "verdict = " << to_string(c.verdict) << '\n';
    os << "extremal_value = " << fmt17(c.extremal_value) << '\n';
    os << "extremal_s = " << fmt17(c.extremal_point.s) << '\n';
    os << "extremal_i = " << fmt17(c.extremal_point.i) << '\n';
    os << "grid_resolution = " << c.grid.resolution << '\n';
    os << "grid_boundary_inset = " << fmt17(c.grid.boundary_inset) << '\n';
    os << "grid_margin = " << fmt17(c.grid.margin) << '\n';
    os << "grid_points_scanned = " << c.grid.points_scanned << '\n';
    os << "grid_refined = " << (c.grid.refined ? "true" : "false") << '\n';
    os << "incidence = " << to_string(c.params.incidence) << '\n';
    os << "beta = " << fmt17(c.params.beta) << '\n';
    os << "alpha = " << fmt17(c.params.alpha) << '\n';
    os << "mu2 = " << fmt17(c.params.mu2) << '\n';
    os << "mu3 = " << fmt17(c.params.mu3) << '\n';
    os << "gamma = " << fmt17(c.params.gamma) << '\n';
    os << "rho = " << fmt17(c.params.rho) << '\n';
    return os.str();
}

std::string to_text(const DiscrepancyReport& d)
{
    std::ostringstream os;
    os << "lyapunov_form_max_abs_delta = " << fmt17(d.max_abs_delta) << '\n';
    os << "lyapunov_form_delta_s = " << fmt17(d.location.s) << '\n';
    os << "lyapunov_form_delta_i = " << fmt17(d.location.i) << '\n';
    os << "lyapunov_form_grid_resolution = " << d.resolution << '\n';
    os << "lyapunov_form_points_compared = " << d.points_compared << '\n';
    return os.str();
}

LyapunovMonitor monitor_lyapunov(const Trajectory<PlanarState>& traj, const Params& p)
{
    LyapunovMonitor out;
    const double R0 = r0(p);
    if (traj.states.empty() || std::abs(R0 - 1.0) < marginal_r0_band) {
        return out;
    }
    if (R0 < 1.0) {
        out.applicable = true;
        out.kind = CertificateKind::LyapunovDFE;
        for (std::size_t k = 1; k < traj.states.size(); ++k) {
            out.max_increase =
                std::max(out.max_increase, lyapunov_dfe(traj.states[k]) - lyapunov_dfe(traj.states[k - 1]));
        }
        return out;
    }
    const auto endemic = compute_endemic(p);
    const auto* eq = std::get_if<Equilibrium>(&endemic);
    out.kind = CertificateKind::LyapunovEndemic;
    if (eq == nullptr || !(traj.states.front().i > 0.0)) {
        return out;
    }
    out.applicable = true;
    double prev = lyapunov_endemic(traj.states.front(), p, *eq);
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
        const double v = lyapunov_endemic(traj.states[k], p, *eq);
        out.max_increase = std::max(out.max_increase, v - prev);
        prev = v;
    }
    return out;
}

} // namespace episdyn
