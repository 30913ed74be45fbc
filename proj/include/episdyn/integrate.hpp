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
#ifndef EPISDYN_INTEGRATE_HPP
#define EPISDYN_INTEGRATE_HPP

#include "episdyn/model.hpp"
#include "episdyn/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace episdyn
{

enum class Method
{
    RK4Fixed,
    RK45Adaptive,
};

enum class TerminalReason
{
    TimeLimit,
    ConvergedToPoint,
    DomainEscape,
};

std::string_view to_string(Method m);
std::string_view to_string(TerminalReason r);

struct IntegratorConfig
{
    Method method = Method::RK45Adaptive;
    double step = 0.1; ///< RK4Fixed step; also the initial trial step of RK45Adaptive
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double min_step = 1e-12;
    double max_step = 50.0;
    double t_max = 2000.0;
    double convergence_radius = 1e-8;
    int convergence_window = 10;
    double guard_tol = default_guard_tolerance;

    /// Throws ValidationError on a non-positive step, tolerance or horizon.
    void validate() const;
};

template <class State>
struct Trajectory
{
    std::vector<double> times;
    std::vector<State> states;
    TerminalReason terminal_reason = TerminalReason::TimeLimit;
    std::optional<PlanarState> converged_to;
    std::string diagnostic; ///< set when terminal_reason is DomainEscape

    const State& back() const
    {
        return states.back();
    }
};

/// One classical RK4 step of the planar system.
PlanarState rk4_step(const PlanarState& x, const Params& p, double h);
FullState rk4_step(const FullState& x, const Params& p, double h);

template <class State>
struct EmbeddedStep
{
    State state; ///< fifth-order solution
    double error_estimate = 0.0; ///< max-norm of the embedded error vector
    double error_ratio = 0.0; ///< error relative to abs_tol + rel_tol |x|; accepted when <= 1
    double h_next = 0.0;
    bool accepted = false;
};

/**
 * One Dormand-Prince 5(4) step with the embedded error estimate.
 * h_next = h * clamp(0.9 * ratio^(-1/5), 0.2, 5).
 */
EmbeddedStep<PlanarState> rk45_step(const PlanarState& x, const Params& p, double h, double abs_tol, double rel_tol);
EmbeddedStep<FullState> rk45_step(const FullState& x, const Params& p, double h, double abs_tol, double rel_tol);

/**
 * Integrates the planar flow from x0, recording every accepted step.
 *
 * Stops with ConvergedToPoint once the state has stayed within convergence_radius of the
 * disease-free or endemic equilibrium for convergence_window consecutive steps. A step that
 * leaves the simplex by more than guard_tol ends the run with DomainEscape under RK4Fixed and is
 * rejected and retried with half the step under RK45Adaptive. Throws StepUnderflow when the
 * adaptive step drops below min_step.
 */
Trajectory<PlanarState> integrate_planar(const PlanarState& x0, const Params& p, const IntegratorConfig& cfg);

/// Same as integrate_planar for the three-compartment system; convergence is judged on (s, i).
Trajectory<FullState> integrate_full(const FullState& x0, const Params& p, const IntegratorConfig& cfg);

/// Independent runs; Parallel distributes them over OpenMP threads. Output order matches x0s.
enum class Execution
{
    Serial,
    Parallel,
};

std::vector<Trajectory<PlanarState>> integrate_ensemble(std::span<const PlanarState> x0s, const Params& p,
                                                        const IntegratorConfig& cfg,
                                                        Execution exec = Execution::Parallel);

} // namespace episdyn

#endif // EPISDYN_INTEGRATE_HPP
