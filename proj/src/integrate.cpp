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
#include "episdyn/integrate.hpp"
#include "episdyn/equilibria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <sstream>

namespace episdyn
{

std::string_view to_string(Method m)
{
    return m == Method::RK4Fixed ? "RK4Fixed" : "RK45Adaptive";
}

std::string_view to_string(TerminalReason r)
{
    switch (r) {
    case TerminalReason::TimeLimit:
        return "TimeLimit";
    case TerminalReason::ConvergedToPoint:
        return "ConvergedToPoint";
    case TerminalReason::DomainEscape:
        return "DomainEscape";
    }
    return "?";
}

void IntegratorConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok) {
            throw ValidationError(std::string("integrator config invariant violated: ") + what);
        }
    };
    require(step > 0.0, "step > 0");
    require(abs_tol > 0.0 && rel_tol > 0.0, "tolerances > 0");
    require(min_step > 0.0 && max_step >= min_step, "0 < min_step <= max_step");
    require(t_max > 0.0 && std::isfinite(t_max), "t_max > 0");
    require(convergence_radius > 0.0, "convergence_radius > 0");
    require(convergence_window >= 1, "convergence_window >= 1");
    require(guard_tol >= 0.0, "guard_tol >= 0");
}

namespace
{

template <class State>
struct Traits;

template <>
struct Traits<PlanarState> {
    static constexpr std::size_t size = 2;
    using Vec = std::array<double, 2>;
    static Vec pack(const PlanarState& x)
    {
        return {x.s, x.i};
    }
    static PlanarState unpack(const Vec& v)
    {
        return {v[0], v[1]};
    }
    static Vec field(const Vec& v, const Params& p)
    {
        return pack(planar_rhs(unpack(v), p));
    }
};

template <>
struct Traits<FullState> {
    static constexpr std::size_t size = 3;
    using Vec = std::array<double, 3>;
    static Vec pack(const FullState& x)
    {
        return {x.s, x.i, x.r};
    }
    static FullState unpack(const Vec& v)
    {
        return {v[0], v[1], v[2]};
    }
    static Vec field(const Vec& v, const Params& p)
    {
        return pack(full_rhs(unpack(v), p));
    }
};

// x + h * sum_j c_j k_j
template <std::size_t N, std::size_t K>
std::array<double, N> combine(const std::array<double, N>& x, double h, const std::array<double, K>& c,
                              const std::array<std::array<double, N>, K>& k)
{
    std::array<double, N> out = x;
    for (std::size_t n = 0; n < N; ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j < K; ++j) {
            acc += c[j] * k[j][n];
        }
        out[n] += h * acc;
    }
    return out;
}

template <class State>
State rk4(const State& x, const Params& p, double h)
{
    using T = Traits<State>;
    using Vec = typename T::Vec;
    const Vec y = T::pack(x);
    std::array<Vec, 4> k;
    k[0] = T::field(y, p);
    k[1] = T::field(combine<T::size, 1>(y, 0.5 * h, {1.0}, {k[0]}), p);
    k[2] = T::field(combine<T::size, 1>(y, 0.5 * h, {1.0}, {k[1]}), p);
    k[3] = T::field(combine<T::size, 1>(y, h, {1.0}, {k[2]}), p);
    return T::unpack(combine<T::size, 4>(y, h / 6.0, {1.0, 2.0, 2.0, 1.0}, k));
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr std::array<double, 2> a3{3.0 / 40.0, 9.0 / 40.0};
constexpr std::array<double, 3> a4{44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0};
constexpr std::array<double, 4> a5{19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0};
constexpr std::array<double, 5> a6{9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
                                   -5103.0 / 18656.0};
constexpr std::array<double, 6> b5{35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
                                   11.0 / 84.0};
// fifth-order minus fourth-order weights
constexpr std::array<double, 7> e{71.0 / 57600.0,      0.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                  -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0};

constexpr double safety = 0.9;
constexpr double min_growth = 0.2;
constexpr double max_growth = 5.0;

template <class Vec, std::size_t K>
std::array<Vec, K> head(const std::array<Vec, 7>& k)
{
    std::array<Vec, K> out;
    std::copy_n(k.begin(), K, out.begin());
    return out;
}

template <class State>
EmbeddedStep<State> dopri5(const State& x, const Params& p, double h, double abs_tol, double rel_tol)
{
    using T = Traits<State>;
    using Vec = typename T::Vec;
    constexpr std::size_t N = T::size;
    const Vec y = T::pack(x);

    std::array<Vec, 7> k;
    k[0] = T::field(y, p);
    k[1] = T::field(combine<N, 1>(y, h, {a21}, {k[0]}), p);
    k[2] = T::field(combine<N, 2>(y, h, a3, head<Vec, 2>(k)), p);
    k[3] = T::field(combine<N, 3>(y, h, a4, head<Vec, 3>(k)), p);
    k[4] = T::field(combine<N, 4>(y, h, a5, head<Vec, 4>(k)), p);
    k[5] = T::field(combine<N, 5>(y, h, a6, head<Vec, 5>(k)), p);
    const Vec y5 = combine<N, 6>(y, h, b5, head<Vec, 6>(k));
    k[6] = T::field(y5, p);

    EmbeddedStep<State> out;
    out.state = T::unpack(y5);
    for (std::size_t n = 0; n < N; ++n) {
        double err = 0.0;
        for (std::size_t j = 0; j < 7; ++j) {
            err += e[j] * k[j][n];
        }
        err = std::abs(h * err);
        const double scale = abs_tol + rel_tol * std::max(std::abs(y[n]), std::abs(y5[n]));
        out.error_estimate = std::max(out.error_estimate, err);
        out.error_ratio = std::max(out.error_ratio, err / scale);
    }
    out.accepted = out.error_ratio <= 1.0;
    const double growth = out.error_ratio == 0.0 ? max_growth
                                                 : std::clamp(safety * std::pow(out.error_ratio, -0.2), min_growth,
                                                              max_growth);
    out.h_next = h * growth;
    return out;
}

PlanarState planar_of(const PlanarState& x)
{
    return x;
}

PlanarState planar_of(const FullState& x)
{
    return x.planar();
}

bool inside_initial(const PlanarState& x, double tol)
{
    return simplex_violation(x) <= tol;
}

bool inside_initial(const FullState& x, double tol)
{
    return std::min({x.s, x.i, x.r}) >= -tol && std::abs(x.s + x.i + x.r - 1.0) <= std::max(tol, 1e-12);
}

template <class State>
Trajectory<State> drive(const State& x0, const Params& p, const IntegratorConfig& cfg)
{
    p.validate();
    cfg.validate();
    if (!inside_initial(x0, cfg.guard_tol)) {
        throw PreconditionViolated("initial state is outside the simplex");
    }

    std::vector<PlanarState> targets{compute_dfe(p).point};
    const auto endemic = compute_endemic(p);
    if (const auto* eq = std::get_if<Equilibrium>(&endemic)) {
        targets.push_back(eq->point);
    }

    Trajectory<State> traj;
    State x = project_to_simplex(x0, cfg.guard_tol);
    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(x);

    int streak = 0;
    std::size_t streak_target = 0;
    double h = std::min(cfg.step, cfg.max_step);

    while (t < cfg.t_max) {
        const double remaining = cfg.t_max - t;
        const bool last = h >= remaining;
        const double h_try = last ? remaining : h;

        State next;
        if (cfg.method == Method::RK4Fixed) {
            try {
                next = project_to_simplex(rk4(x, p, h_try), cfg.guard_tol);
            }
            catch (const DomainEscape& err) {
                std::ostringstream os;
                os << "t = " << t << ": " << err.what();
                traj.terminal_reason = TerminalReason::DomainEscape;
                traj.diagnostic = os.str();
                return traj;
            }
        }
        else {
            const auto step = dopri5(x, p, h_try, cfg.abs_tol, cfg.rel_tol);
            bool ok = step.accepted;
            double h_retry = step.h_next;
            if (ok) {
                try {
                    next = project_to_simplex(step.state, cfg.guard_tol);
                }
                catch (const DomainEscape&) {
                    ok = false;
                    h_retry = 0.5 * h_try;
                }
            }
            if (!ok) {
                if (h_retry < cfg.min_step) {
                    std::ostringstream os;
                    os << "adaptive step " << h_retry << " fell below min_step " << cfg.min_step << " at t = " << t;
                    throw StepUnderflow(os.str());
                }
                h = h_retry;
                continue;
            }
            h = std::min(step.h_next, cfg.max_step);
        }

        const double t_next = last ? cfg.t_max : t + h_try;
        if (!(t_next > t)) {
            break;
        }
        t = t_next;
        x = next;
        traj.times.push_back(t);
        traj.states.push_back(x);

        const PlanarState pos = planar_of(x);
        bool near = false;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            if (std::hypot(pos.s - targets[k].s, pos.i - targets[k].i) < cfg.convergence_radius) {
                streak = (streak > 0 && streak_target == k) ? streak + 1 : 1;
                streak_target = k;
                near = true;
                break;
            }
        }
        if (!near) {
            streak = 0;
        }
        if (streak >= cfg.convergence_window) {
            traj.terminal_reason = TerminalReason::ConvergedToPoint;
            traj.converged_to = targets[streak_target];
            return traj;
        }
    }
    traj.terminal_reason = TerminalReason::TimeLimit;
    return traj;
}

} // namespace

PlanarState rk4_step(const PlanarState& x, const Params& p, double h)
{
    return rk4(x, p, h);
}

FullState rk4_step(const FullState& x, const Params& p, double h)
{
    return rk4(x, p, h);
}

EmbeddedStep<PlanarState> rk45_step(const PlanarState& x, const Params& p, double h, double abs_tol, double rel_tol)
{
    return dopri5(x, p, h, abs_tol, rel_tol);
}

EmbeddedStep<FullState> rk45_step(const FullState& x, const Params& p, double h, double abs_tol, double rel_tol)
{
    return dopri5(x, p, h, abs_tol, rel_tol);
}

Trajectory<PlanarState> integrate_planar(const PlanarState& x0, const Params& p, const IntegratorConfig& cfg)
{
    return drive(x0, p, cfg);
}

Trajectory<FullState> integrate_full(const FullState& x0, const Params& p, const IntegratorConfig& cfg)
{
    return drive(x0, p, cfg);
}

std::vector<Trajectory<PlanarState>> integrate_ensemble(std::span<const PlanarState> x0s, const Params& p,
                                                        const IntegratorConfig& cfg, Execution exec)
{
    std::vector<Trajectory<PlanarState>> out(x0s.size());
    const auto n = static_cast<std::ptrdiff_t>(x0s.size());
    if (exec == Execution::Serial) {
        for (std::ptrdiff_t k = 0; k < n; ++k) {
            out[k] = integrate_planar(x0s[k], p, cfg);
        }
        return out;
    }
    // Exceptions must not cross the parallel region; rethrow the first one afterwards.
    std::vector<std::exception_ptr> errors(x0s.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        try {
            out[k] = integrate_planar(x0s[k], p, cfg);
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
    return out;
}

} // namespace episdyn
