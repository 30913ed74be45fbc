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
#ifndef EPISDYN_CERTIFY_HPP
#define EPISDYN_CERTIFY_HPP

#include "episdyn/equilibria.hpp"
#include "episdyn/integrate.hpp"
#include "episdyn/types.hpp"

#include <string>

namespace episdyn
{

// Lyapunov function V = I for the disease-free state.
double lyapunov_dfe(const PlanarState& x);

/// dV/dt for V = I, i.e. the i-component of planar_rhs. Throws FormulaMismatch if the value
/// exceeds the bound (mu2 + gamma)(R0 s - 1) i by more than 1e-14.
double lyapunov_dfe_derivative(const PlanarState& x, const Params& p);

/**
 * Quadratic + Volterra Lyapunov function for the endemic state:
 *   V = 1/2 (S - S* + I - I*)^2 + c (I - I* - I* ln(I / I*)),
 *   c = (2m + gamma) / beta * (1 + alpha I*^2),   m = mu3 + rho.
 * Throws DomainError for i <= 0.
 */
double lyapunov_endemic(const PlanarState& x, const Params& p, const Equilibrium& eq);

/// Chain rule: V' = (S' + I')(S - S* + I - I*) + c I' (1 - I* / I) with S', I' from planar_rhs.
double lyapunov_endemic_derivative(const PlanarState& x, const Params& p, const Equilibrium& eq);

/// Expanded form -m (S - S*)^2 - (m + gamma)(I - I*)^2 - (2m + gamma) alpha S (I* + I) / (1 + alpha I^2) (I - I*)^2.
double lyapunov_endemic_derivative_expanded(const PlanarState& x, const Params& p, const Equilibrium& eq);

/**
 * Divergence of B f for the Dulac function B = (1 + alpha I^2) / (beta S I):
 *   -mu2 (1 + alpha I^2) / (beta S^2) - 2 alpha I (mu2 + gamma) / (beta S)
 *   + m (1 + alpha I^2) / (beta S^2) (1 - 1 / I).
 * Throws DomainError unless s > 0 and i > 0.
 */
double dulac_divergence(const PlanarState& x, const Params& p);

enum class ScanQuantity
{
    DulacDivergence,
    LyapunovDFEDerivative,
    LyapunovEndemicDerivative,
};

enum class CertificateKind
{
    DulacNoLimitCycle,
    LyapunovDFE,
    LyapunovEndemic,
};

enum class Verdict
{
    Certified,
    CounterexampleFound,
    Inconclusive,
};

std::string_view to_string(ScanQuantity q);
std::string_view to_string(CertificateKind k);
std::string_view to_string(Verdict v);

struct ScanOptions
{
    int resolution = 200;
    double margin = 1e-12;
    double boundary_inset = 1e-3;
    double exclusion_radius = 1e-8; ///< endemic scans skip points this close to x*
    bool refine = true; ///< one 10x finer local pass before a non-Certified verdict
};

struct GridSpec
{
    int resolution = 0;
    double boundary_inset = 0.0;
    double margin = 0.0;
    long points_scanned = 0;
    bool refined = false;
};

struct Certificate
{
    CertificateKind kind = CertificateKind::DulacNoLimitCycle;
    Verdict verdict = Verdict::Inconclusive;
    double extremal_value = 0.0; ///< maximum of the scanned quantity
    PlanarState extremal_point;
    GridSpec grid;
    Params params;
};

/// Verdict for a scanned maximum: Certified below -margin, CounterexampleFound above +margin.
Verdict verdict_for(double extremal_value, double margin);

/**
 * Scans the quantity on a uniform resolution x resolution grid over
 * [inset, 1 - inset]^2 restricted to s + i <= 1 and returns the maximum.
 *
 * The maximum is reduced by value with ties broken towards the lexicographically smaller
 * (s, i), so Serial and Parallel give bit-identical certificates.
 * Throws PreconditionViolated for resolution < 2, a non-positive inset where the quantity is
 * undefined on the boundary, HollingII incidence, or an endemic scan without R0 > 1.
 */
Certificate certify_grid(ScanQuantity quantity, const Params& p, const ScanOptions& opts = {},
                         Execution exec = Execution::Parallel);

/// Largest |chain-rule V' - expanded V'| over the same kind of grid.
struct DiscrepancyReport
{
    double max_abs_delta = 0.0;
    PlanarState location;
    int resolution = 0;
    long points_compared = 0;
};

DiscrepancyReport lyapunov_form_discrepancy(const Params& p, int resolution = 200, double boundary_inset = 1e-3,
                                            Execution exec = Execution::Parallel);

/// Flat `key = value` block.
std::string to_text(const Certificate& c);
std::string to_text(const DiscrepancyReport& d);

/// Largest increase of the applicable Lyapunov function between consecutive states of a trajectory.
struct LyapunovMonitor
{
    bool applicable = false; ///< false for endemic monitoring of a trajectory starting on i = 0
    CertificateKind kind = CertificateKind::LyapunovDFE;
    double max_increase = 0.0;
};

LyapunovMonitor monitor_lyapunov(const Trajectory<PlanarState>& traj, const Params& p);

} // namespace episdyn

#endif // EPISDYN_CERTIFY_HPP
