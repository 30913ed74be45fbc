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
#include "episdyn/equilibria.hpp"
#include "episdyn/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace episdyn
{

std::string_view to_string(EquilibriumKind kind)
{
    return kind == EquilibriumKind::DiseaseFree ? "DiseaseFree" : "Endemic";
}

std::string_view to_string(Stability s)
{
    switch (s) {
    case Stability::LocallyAsymptoticallyStable:
        return "LocallyAsymptoticallyStable";
    case Stability::Unstable:
        return "Unstable";
    case Stability::Marginal:
        return "Marginal";
    }
    return "?";
}

double r0(const Params& p)
{
    return p.beta / (p.mu2 + p.gamma);
}

namespace
{

double residual_at(const PlanarState& x, const Params& p)
{
    const auto f = planar_rhs(x, p);
    return std::max(std::abs(f.s), std::abs(f.i));
}

double trace(const Matrix2& m)
{
    return m[0][0] + m[1][1];
}

double det(const Matrix2& m)
{
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

bool rel_close(double a, double b, double rel_tol)
{
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

Equilibrium compute_dfe(const Params& p)
{
    const PlanarState x{1.0, 0.0};
    return {EquilibriumKind::DiseaseFree, x, residual_at(x, p)};
}

EndemicResult compute_endemic(const Params& p)
{
    const double R0 = r0(p);
    if (!(R0 > 1.0)) {
        std::ostringstream os;
        os << "R0 = " << R0 << " <= 1";
        return NoEndemicEquilibrium{os.str()};
    }
    const double m = p.mu3_eff();
    if (m < degenerate_mu3) {
        return NoEndemicEquilibrium{"mu3 + rho = 0: the endemic quadratic degenerates and forces I* = 0"};
    }

    const double c = m * (R0 - 1.0);
    PlanarState x;
    if (p.incidence == Incidence::HollingII) {
        // S* = (1 + alpha I*) / R0 turns the equilibrium condition into a linear equation.
        x.i = c / (p.alpha * m + (m + p.gamma) * R0);
        x.s = (1.0 + p.alpha * x.i) / R0;
    }
    else {
        const double alpha = p.incidence == Incidence::MassAction ? 0.0 : p.alpha;
        const double b = (m + p.gamma) * R0;
        if (alpha < alpha_limit) {
            x.i = c / b;
        }
        else {
            const double a = alpha * m;
            x.i = 2.0 * c / (b + std::sqrt(b * b + 4.0 * a * c));
        }
        x.s = (1.0 + alpha * x.i * x.i) / R0;
    }
    return Equilibrium{EquilibriumKind::Endemic, x, residual_at(x, p)};
}

Matrix2 jacobian(const PlanarState& x, const Params& p)
{
    const double m = p.mu3_eff();
    const double g = incidence_force(x.i, p);
    const double sg = x.s * incidence_slope(x.i, p);
    return {{{-m - g, (p.mu2 - m) - sg}, {g, sg - (p.mu2 + p.gamma)}}};
}

std::array<std::complex<double>, 2> eigenvalues_2x2(const Matrix2& m)
{
    if (m[1][0] == 0.0 || m[0][1] == 0.0) {
        return {std::complex<double>(m[0][0]), std::complex<double>(m[1][1])};
    }
    const double tr = trace(m);
    const double dt = det(m);
    // tr^2 - 4 det rewritten without the cancellation between tr^2 and 4 det.
    const double diff = m[0][0] - m[1][1];
    const double disc = diff * diff + 4.0 * m[0][1] * m[1][0];
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        const double big = 0.5 * (tr + std::copysign(root, tr));
        const double small = big != 0.0 ? dt / big : 0.5 * (tr - std::copysign(root, tr));
        return {std::complex<double>(big), std::complex<double>(small)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(0.5 * tr, im), std::complex<double>(0.5 * tr, -im)};
}

StabilityReport classify_dfe(const Params& p)
{
    StabilityReport report;
    report.kind = EquilibriumKind::DiseaseFree;
    report.point = {1.0, 0.0};
    report.jacobian = jacobian(report.point, p);
    report.eigenvalues = eigenvalues_2x2(report.jacobian);
    report.trace = trace(report.jacobian);
    report.determinant = det(report.jacobian);

    const double R0 = r0(p);
    if (std::abs(R0 - 1.0) < marginal_r0_band) {
        report.classification = Stability::Marginal;
    }
    else {
        report.classification = R0 < 1.0 ? Stability::LocallyAsymptoticallyStable : Stability::Unstable;
    }
    return report;
}

EndemicTerms endemic_terms(const Params& p, const PlanarState& endemic)
{
    if (p.incidence == Incidence::HollingII) {
        throw PreconditionViolated("closed-form endemic terms exist only for the non-monotone incidence");
    }
    const double alpha = p.incidence == Incidence::MassAction ? 0.0 : p.alpha;
    const double m = p.mu3_eff();
    const double s = endemic.s;
    const double i = endemic.i;
    const double d = 1.0 + alpha * i * i;

    EndemicTerms t;
    t.x = p.beta * i / d;
    t.y = 2.0 * alpha * p.beta * s * i * i / (d * d);
    t.trace = -m - t.x - t.y;
    t.determinant = m * t.y + (m / i) * (1.0 - s) * t.x;
    return t;
}

void verify_endemic_terms(const EndemicTerms& terms, const Matrix2& jac, double rel_tol)
{
    const double tr = trace(jac);
    const double dt = det(jac);
    if (!rel_close(terms.trace, tr, rel_tol) || !rel_close(terms.determinant, dt, rel_tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "closed-form trace/det (" << terms.trace << ", " << terms.determinant
           << ") disagree with the assembled Jacobian (" << tr << ", " << dt << ")";
        throw FormulaMismatch(os.str());
    }
}

EndemicStability classify_endemic(const Params& p)
{
    auto endemic = compute_endemic(p);
    if (auto* none = std::get_if<NoEndemicEquilibrium>(&endemic)) {
        return *none;
    }
    const auto& eq = std::get<Equilibrium>(endemic);

    StabilityReport report;
    report.kind = EquilibriumKind::Endemic;
    report.point = eq.point;
    report.jacobian = jacobian(eq.point, p);
    report.eigenvalues = eigenvalues_2x2(report.jacobian);
    report.trace = trace(report.jacobian);
    report.determinant = det(report.jacobian);

    if (p.incidence != Incidence::HollingII) {
        const auto terms = endemic_terms(p, eq.point);
        verify_endemic_terms(terms, report.jacobian);
        report.x_quantity = terms.x;
        report.y_quantity = terms.y;
        report.closed_form_trace = terms.trace;
        report.closed_form_determinant = terms.determinant;
    }

    const double re0 = report.eigenvalues[0].real();
    const double re1 = report.eigenvalues[1].real();
    if (std::abs(report.determinant) < marginal_det) {
        report.classification = Stability::Marginal;
    }
    else if (report.determinant < 0.0) {
        report.classification = Stability::Unstable; // saddle
    }
    else if (re0 < 0.0 && re1 < 0.0) {
        report.classification = Stability::LocallyAsymptoticallyStable;
    }
    else if (re0 > 0.0 || re1 > 0.0) {
        report.classification = Stability::Unstable;
    }
    else {
        report.classification = Stability::Marginal;
    }
    return report;
}

} // namespace episdyn
