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
#ifndef EPISDYN_TYPES_HPP
#define EPISDYN_TYPES_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace episdyn
{

/// Shape of the force of infection g(i).
enum class Incidence
{
    MassAction, ///< beta * i
    HollingII, ///< beta * i / (1 + alpha * i)
    NonMonotone, ///< beta * i / (1 + alpha * i^2)
};

std::string_view to_string(Incidence kind);

/// Parses "MassAction", "mass_action", "HollingII", "holling_ii", "NonMonotone", "non_monotone".
/// Anything else is rejected with a ValidationError.
Incidence parse_incidence(std::string_view text);

/**
 * Model rates in normalized units (population fractions).
 *
 * beta and alpha are the per-fraction values, i.e. beta = N * beta_raw and
 * alpha = N^2 * alpha_raw; use from_raw() to convert per-capita rates.
 * mu1 only enters the birth term b = mu1 S + mu2 I + mu3 R, which cancels out of
 * the dynamics, so it is carried for bookkeeping but never read by the vector fields.
 */
struct Params
{
    double beta = 0.0;
    double alpha = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0;
    double gamma = 0.0;
    double rho = 0.0;
    double n_total = 1.0;
    Incidence incidence = Incidence::NonMonotone;

    /// Recovered-class outflow rate used by the planar dynamics (mu3 + rho).
    double mu3_eff() const
    {
        return mu3 + rho;
    }

    bool is_sirs() const
    {
        return rho > 0.0;
    }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;

    /// Converts per-capita transmission and inhibition coefficients of a population of size n_total.
    static Params from_raw(Params raw);
};

/// Normalized (S, I) point of the planar system.
struct PlanarState
{
    double s = 0.0;
    double i = 0.0;

    friend bool operator==(const PlanarState&, const PlanarState&) = default;
};

struct FullState
{
    double s = 0.0;
    double i = 0.0;
    double r = 0.0;

    PlanarState planar() const
    {
        return {s, i};
    }

    friend bool operator==(const FullState&, const FullState&) = default;
};

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Parameters or configuration violate a model invariant.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// State left the simplex by more than the guard tolerance.
class DomainEscape : public Error
{
public:
    using Error::Error;
};

/// Function evaluated outside its domain of definition (e.g. log(I/I*) at I = 0).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Closed-form stability quantities disagree with the assembled Jacobian.
class FormulaMismatch : public Error
{
public:
    using Error::Error;
};

class PreconditionViolated : public Error
{
public:
    using Error::Error;
};

class StepUnderflow : public Error
{
public:
    using Error::Error;
};

/// Output could not be written or an input file could not be read.
class IoError : public Error
{
public:
    using Error::Error;
};

class ParseError : public Error
{
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what)
        , m_line(line)
    {
    }

    int line() const
    {
        return m_line;
    }

private:
    int m_line;
};

} // namespace episdyn

#endif // EPISDYN_TYPES_HPP
