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
#include "episdyn/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

namespace episdyn
{

std::string_view to_string(Incidence kind)
{
    switch (kind) {
    case Incidence::MassAction:
        return "MassAction";
    case Incidence::HollingII:
        return "HollingII";
    case Incidence::NonMonotone:
        return "NonMonotone";
    }
    return "?";
}

Incidence parse_incidence(std::string_view text)
{
    std::string key;
    for (char c : text) {
        if (c != '_' && c != '-') {
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (key == "massaction") {
        return Incidence::MassAction;
    }
    if (key == "hollingii" || key == "holling2") {
        return Incidence::HollingII;
    }
    if (key == "nonmonotone") {
        return Incidence::NonMonotone;
    }
    throw ValidationError("unknown incidence kind '" + std::string(text) +
                          "' (expected MassAction, HollingII or NonMonotone)");
}

void Params::validate() const
{
    auto require = [](bool ok, const char* invariant) {
        if (!ok) {
            throw ValidationError(std::string("parameter invariant violated: ") + invariant);
        }
    };
    auto finite = std::isfinite(beta) && std::isfinite(alpha) && std::isfinite(mu1) && std::isfinite(mu2) &&
                  std::isfinite(mu3) && std::isfinite(gamma) && std::isfinite(rho) && std::isfinite(n_total);
    require(finite, "all parameters finite");
    require(beta > 0.0, "beta > 0");
    require(alpha >= 0.0, "alpha >= 0");
    require(mu1 >= 0.0, "mu1 >= 0");
    require(mu2 >= 0.0, "mu2 >= 0");
    require(mu3 >= 0.0, "mu3 >= 0");
    require(gamma >= 0.0, "gamma >= 0");
    require(rho >= 0.0, "rho >= 0");
    require(n_total > 0.0, "n_total > 0");
    require(mu2 + gamma > 0.0, "mu2 + gamma > 0");
    require(mu3 + rho > 0.0, "mu3 + rho > 0");
}

Params Params::from_raw(Params raw)
{
    raw.beta *= raw.n_total;
    raw.alpha *= raw.n_total * raw.n_total;
    return raw;
}

double incidence_force(double i, const Params& p)
{
    switch (p.incidence) {
    case Incidence::MassAction:
        return p.beta * i;
    case Incidence::HollingII:
        return p.beta * i / (1.0 + p.alpha * i);
    case Incidence::NonMonotone:
        return p.beta * i / (1.0 + p.alpha * i * i);
    }
    return 0.0;
}

double incidence_slope(double i, const Params& p)
{
    switch (p.incidence) {
    case Incidence::MassAction:
        return p.beta;
    case Incidence::HollingII: {
        const double d = 1.0 + p.alpha * i;
        return p.beta / (d * d);
    }
    case Incidence::NonMonotone: {
        const double ai2 = p.alpha * i * i;
        const double d = 1.0 + ai2;
        return p.beta * (1.0 - ai2) / (d * d);
    }
    }
    return 0.0;
}

PlanarState planar_rhs(const PlanarState& x, const Params& p)
{
    const double m = p.mu3_eff();
    const double infection = incidence_force(x.i, p) * x.s;
    return {m + (p.mu2 - m) * x.i - m * x.s - infection, infection - (p.mu2 + p.gamma) * x.i};
}

FullState full_rhs(const FullState& x, const Params& p)
{
    const double m = p.mu3_eff();
    const double infection = incidence_force(x.i, p) * x.s;
    return {-infection + p.mu2 * x.i + m * x.r, infection - (p.mu2 + p.gamma) * x.i, p.gamma * x.i - m * x.r};
}

Params sirs_to_sir(const Params& p)
{
    Params q = p;
    q.mu3 = p.mu3 + p.rho;
    q.rho = 0.0;
    return q;
}

double simplex_violation(const PlanarState& x)
{
    return std::max({0.0, -x.s, -x.i, x.s + x.i - 1.0});
}

namespace
{

[[noreturn]] void escape(double violation, double tol)
{
    std::ostringstream os;
    os.precision(3);
    os << "state left the simplex by " << std::scientific << violation << " (guard tolerance " << tol << ")";
    throw DomainEscape(os.str());
}

} // namespace

PlanarState project_to_simplex(const PlanarState& x, double tol)
{
    if (!std::isfinite(x.s) || !std::isfinite(x.i)) {
        throw DomainEscape("state is not finite");
    }
    const double violation = simplex_violation(x);
    if (violation > tol) {
        escape(violation, tol);
    }
    if (violation == 0.0) {
        return x;
    }
    PlanarState y{std::max(x.s, 0.0), std::max(x.i, 0.0)};
    const double total = y.s + y.i;
    if (total > 1.0) {
        y.s /= total;
        y.i = std::min(y.i / total, 1.0 - y.s);
    }
    return y;
}

FullState project_to_simplex(const FullState& x, double tol)
{
    if (!std::isfinite(x.s) || !std::isfinite(x.i) || !std::isfinite(x.r)) {
        throw DomainEscape("state is not finite");
    }
    const double violation = std::max({0.0, -x.s, -x.i, -x.r});
    if (violation > tol) {
        escape(violation, tol);
    }
    if (violation == 0.0) {
        return x;
    }
    // Rescale after clamping so the clamp does not add population: the RK update conserves
    // s + i + r, and repeated clamps would otherwise accumulate a drift of up to tol per step.
    FullState y{std::max(x.s, 0.0), std::max(x.i, 0.0), std::max(x.r, 0.0)};
    const double scale = (x.s + x.i + x.r) / (y.s + y.i + y.r);
    return {y.s * scale, y.i * scale, y.r * scale};
}

} // namespace episdyn
