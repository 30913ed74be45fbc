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
#ifndef EPISDYN_EQUILIBRIA_HPP
#define EPISDYN_EQUILIBRIA_HPP

#include "episdyn/types.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>

namespace episdyn
{

/// |R0 - 1| below this is classified Marginal.
inline constexpr double marginal_r0_band = 1e-12;
/// Endemic determinant below this is classified Marginal.
inline constexpr double marginal_det = 1e-14;
/// mu3 + rho below this makes the endemic quadratic degenerate.
inline constexpr double degenerate_mu3 = 1e-12;
/// alpha below this switches to the mass-action limit of the endemic root.
inline constexpr double alpha_limit = 1e-12;

using Matrix2 = std::array<std::array<double, 2>, 2>;

enum class EquilibriumKind
{
    DiseaseFree,
    Endemic,
};

enum class Stability
{
    LocallyAsymptoticallyStable,
    Unstable,
    Marginal,
};

std::string_view to_string(EquilibriumKind kind);
std::string_view to_string(Stability s);

struct Equilibrium
{
    EquilibriumKind kind = EquilibriumKind::DiseaseFree;
    PlanarState point;
    double residual = 0.0; ///< max-norm of planar_rhs at point
};

/// Returned instead of an Equilibrium when no endemic state exists (R0 <= 1 or a degenerate model).
struct NoEndemicEquilibrium
{
    std::string reason;
};

using EndemicResult = std::variant<Equilibrium, NoEndemicEquilibrium>;

struct StabilityReport
{
    EquilibriumKind kind = EquilibriumKind::DiseaseFree;
    PlanarState point;
    Matrix2 jacobian{};
    std::array<std::complex<double>, 2> eigenvalues{};
    double trace = 0.0;
    double determinant = 0.0;
    // Endemic only, NonMonotone/MassAction incidence: closed-form X, Y and the trace/det built from them.
    std::optional<double> x_quantity;
    std::optional<double> y_quantity;
    std::optional<double> closed_form_trace;
    std::optional<double> closed_form_determinant;
    Stability classification = Stability::Marginal;
};

using EndemicStability = std::variant<StabilityReport, NoEndemicEquilibrium>;

/// Basic reproduction number beta / (mu2 + gamma).
double r0(const Params& p);

Equilibrium compute_dfe(const Params& p);

/**
 * Endemic equilibrium in closed form.
 *
 * For the non-monotone incidence I* is the positive root of
 *   alpha m I^2 + (m + gamma) R0 I - m (R0 - 1) = 0,   m = mu3 + rho,
 * evaluated as 2c / (b + sqrt(b^2 + 4ac)) to avoid cancellation, and S* = (1 + alpha I*^2) / R0.
 * alpha < alpha_limit (and MassAction) uses the limit I* = m (R0 - 1) / ((m + gamma) R0).
 */
EndemicResult compute_endemic(const Params& p);

/// Analytic Jacobian of planar_rhs.
Matrix2 jacobian(const PlanarState& x, const Params& p);

/// Roots of the characteristic polynomial. Triangular input returns the diagonal exactly.
std::array<std::complex<double>, 2> eigenvalues_2x2(const Matrix2& m);

StabilityReport classify_dfe(const Params& p);

/// Closed-form quantities at the endemic point.
struct EndemicTerms
{
    double x = 0.0; ///< beta I* / (1 + alpha I*^2)
    double y = 0.0; ///< 2 alpha beta S* I*^2 / (1 + alpha I*^2)^2, so that J22 = -Y
    double trace = 0.0; ///< -m - X - Y
    double determinant = 0.0; ///< m Y + (m / I*) (1 - S*) X
};

/// Requires NonMonotone or MassAction incidence.
EndemicTerms endemic_terms(const Params& p, const PlanarState& endemic);

/// Throws FormulaMismatch when trace or determinant differ from the Jacobian's by more than rel_tol.
void verify_endemic_terms(const EndemicTerms& terms, const Matrix2& jac, double rel_tol = 1e-6);

EndemicStability classify_endemic(const Params& p);

} // namespace episdyn

#endif // EPISDYN_EQUILIBRIA_HPP
