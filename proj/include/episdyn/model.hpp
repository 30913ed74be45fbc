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
#ifndef EPISDYN_MODEL_HPP
#define EPISDYN_MODEL_HPP

#include "episdyn/types.hpp"

namespace episdyn
{

inline constexpr double default_guard_tolerance = 1e-9;

/// Force of infection per susceptible, g(i). MassAction ignores alpha.
double incidence_force(double i, const Params& p);

/// dg/di, used by the Jacobian.
double incidence_slope(double i, const Params& p);

/**
 * Reduced planar system on the simplex:
 *   s' = m + (mu2 - m) i - m s - g(i) s
 *   i' = g(i) s - (mu2 + gamma) i
 * with m = mu3 + rho (the SIRS system reduces to SIR with mu3 replaced by mu3 + rho).
 */
PlanarState planar_rhs(const PlanarState& x, const Params& p);

/// Three-compartment system in fractions. Components sum to zero.
FullState full_rhs(const FullState& x, const Params& p);

/// SIRS parameters mapped onto the equivalent SIR parameters: mu3 <- mu3 + rho, rho <- 0.
Params sirs_to_sir(const Params& p);

/// Largest distance by which x lies outside D = {s >= 0, i >= 0, s + i <= 1}; 0 inside.
double simplex_violation(const PlanarState& x);

/// Pulls x back into D if it is outside by at most tol, throws DomainEscape otherwise.
PlanarState project_to_simplex(const PlanarState& x, double tol = default_guard_tolerance);

/// Clamps slightly negative compartments to zero and rescales to keep s + i + r; throws DomainEscape past tol.
FullState project_to_simplex(const FullState& x, double tol = default_guard_tolerance);

} // namespace episdyn

#endif // EPISDYN_MODEL_HPP
