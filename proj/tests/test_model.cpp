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
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace episdyn
{
namespace
{

using oracle::canonical;

TEST(IncidenceForce, VanishesWithoutInfected)
{
    Params p = canonical();
    for (auto kind : {Incidence::MassAction, Incidence::HollingII, Incidence::NonMonotone}) {
        p.incidence = kind;
        EXPECT_EQ(incidence_force(0.0, p), 0.0);
    }
}

TEST(IncidenceForce, NonMonotoneValue)
{
    // 0.5 * 0.5 / (1 + 2 * 0.25)
    EXPECT_NEAR(incidence_force(0.5, canonical()), 1.0 / 6.0, 1e-15);
}

TEST(IncidenceForce, KindsDiffer)
{
    Params p = canonical();
    p.incidence = Incidence::HollingII;
    EXPECT_NEAR(incidence_force(0.5, p), 0.25 / 2.0, 1e-15);
    p.incidence = Incidence::MassAction;
    EXPECT_NEAR(incidence_force(0.5, p), 0.25, 1e-15);
}

TEST(IncidenceForce, AlphaZeroIsMassAction)
{
    Params nm = canonical();
    nm.alpha = 0.0;
    Params ma = nm;
    ma.incidence = Incidence::MassAction;
    for (int k = 0; k < 1000; ++k) {
        const double i = k / 999.0;
        EXPECT_EQ(incidence_force(i, nm), incidence_force(i, ma));
    }
}

TEST(IncidenceForce, MaximizerIsInverseSqrtAlpha)
{
    constexpr int n = 1000000;
    for (double alpha : {1.0, 2.0, 4.0, 10.0, 100.0}) {
        Params p = canonical();
        p.alpha = alpha;
        double best = -1.0;
        double arg = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double i = static_cast<double>(k) / n;
            const double g = incidence_force(i, p);
            if (g > best) {
                best = g;
                arg = i;
            }
        }
        EXPECT_NEAR(arg, 1.0 / std::sqrt(alpha), 2.0 / n) << "alpha = " << alpha;
    }
}

TEST(IncidenceForce, NonMonotoneForAlphaAboveOne)
{
    Params p = canonical();
    p.alpha = 4.0;
    constexpr double delta = 1e-3;
    bool rises = false;
    bool falls = false;
    for (double i = 0.0; i + delta <= 1.0; i += delta) {
        rises = rises || incidence_force(i, p) < incidence_force(i + delta, p);
        falls = falls || incidence_force(i, p) > incidence_force(i + delta, p);
    }
    EXPECT_TRUE(rises);
    EXPECT_TRUE(falls);
}

TEST(IncidenceSlope, MatchesCentralDifference)
{
    Params p = canonical();
    for (auto kind : {Incidence::MassAction, Incidence::HollingII, Incidence::NonMonotone}) {
        p.incidence = kind;
        for (double i : {0.05, 0.3, 0.7, 0.95}) {
            const double h = 1e-6;
            const double fd = (incidence_force(i + h, p) - incidence_force(i - h, p)) / (2 * h);
            EXPECT_NEAR(incidence_slope(i, p), fd, 1e-8);
        }
    }
}

TEST(PlanarRhs, DiseaseFreePointIsFixed)
{
    const auto f = planar_rhs({1.0, 0.0}, canonical());
    EXPECT_EQ(f.s, 0.0);
    EXPECT_EQ(f.i, 0.0);
}

TEST(PlanarRhs, CanonicalValue)
{
    // g s = 1/12; s' = 0.05 + 0.05 * 0.5 - 0.025 - 1/12; i' = 1/12 - 0.125
    const auto f = planar_rhs({0.5, 0.5}, canonical());
    EXPECT_NEAR(f.s, -1.0 / 30.0, 1e-15);
    EXPECT_NEAR(f.i, -1.0 / 24.0, 1e-15);
}

TEST(PlanarRhs, MatchesIndependentField)
{
    oracle::ParamSampler gen(11);
    for (int k = 0; k < 1000; ++k) {
        const Params p = gen.any();
        const auto x = gen.interior();
        const auto f = planar_rhs(x, p);
        const auto g = oracle::field(x.s, x.i, p);
        EXPECT_NEAR(f.s, g[0], 1e-14 * (1.0 + p.beta));
        EXPECT_NEAR(f.i, g[1], 1e-14 * (1.0 + p.beta));
    }
}

TEST(PlanarRhs, FlowPointsIntoSimplexOnBoundary)
{
    oracle::ParamSampler gen(12);
    for (int k = 0; k < 200; ++k) {
        const Params p = gen.any();
        for (int j = 0; j <= 100; ++j) {
            const double u = j / 100.0;
            EXPECT_EQ(planar_rhs({u, 0.0}, p).i, 0.0); // S-axis is invariant
            EXPECT_GE(planar_rhs({0.0, u}, p).s, 0.0);
            const auto edge = planar_rhs({1.0 - u, u}, p);
            EXPECT_LE(edge.s + edge.i, 1e-15);
        }
    }
}

TEST(FullRhs, ConservesPopulation)
{
    oracle::ParamSampler gen(13);
    for (int k = 0; k < 1000; ++k) {
        const Params p = gen.any();
        const auto x = gen.interior(0.0);
        const FullState y{x.s, x.i, 1.0 - x.s - x.i};
        const auto f = full_rhs(y, p);
        const double scale = std::max({1.0, std::abs(f.s), std::abs(f.i), std::abs(f.r)});
        EXPECT_LE(std::abs(f.s + f.i + f.r), 1e-15 * scale);
    }
    const auto f = full_rhs({1.0, 0.0, 0.0}, canonical());
    EXPECT_EQ(f, (FullState{0.0, 0.0, 0.0}));
}

TEST(FullRhs, EliminatingRGivesPlanarSystem)
{
    oracle::ParamSampler gen(14);
    for (int k = 0; k < 1000; ++k) {
        const Params p = gen.any();
        const auto x = gen.interior(0.0);
        const auto full = full_rhs({x.s, x.i, 1.0 - x.s - x.i}, p);
        const auto planar = planar_rhs(x, p);
        const double scale = std::max(1.0, p.beta);
        EXPECT_LE(std::abs(full.s - planar.s), 1e-15 * scale);
        EXPECT_LE(std::abs(full.i - planar.i), 1e-15 * scale);
    }
}

TEST(SirsToSir, Mapping)
{
    Params p = canonical();
    EXPECT_EQ(sirs_to_sir(p).mu3, p.mu3);
    EXPECT_EQ(sirs_to_sir(p).rho, 0.0);

    p.rho = 0.1;
    const Params q = sirs_to_sir(p);
    EXPECT_DOUBLE_EQ(q.mu3, 0.15);
    EXPECT_EQ(q.rho, 0.0);
    EXPECT_EQ(q.beta, p.beta);
    EXPECT_EQ(q.alpha, p.alpha);
    EXPECT_EQ(q.gamma, p.gamma);
    EXPECT_EQ(q.mu2, p.mu2);
}

TEST(SirsToSir, SameVectorField)
{
    oracle::ParamSampler gen(15);
    for (int k = 0; k < 1000; ++k) {
        Params p = gen.any();
        p.rho = gen.log_uniform(1e-3, 1.0);
        const auto x = gen.interior(0.0);
        const auto a = planar_rhs(x, p);
        const auto b = planar_rhs(x, sirs_to_sir(p));
        EXPECT_LE(std::abs(a.s - b.s), 1e-15);
        EXPECT_LE(std::abs(a.i - b.i), 1e-15);
    }
}

TEST(ProjectToSimplex, InsideUnchanged)
{
    EXPECT_EQ(project_to_simplex(PlanarState{0.3, 0.2}, 1e-9), (PlanarState{0.3, 0.2}));
}

TEST(ProjectToSimplex, ClampsRoundoff)
{
    EXPECT_EQ(project_to_simplex(PlanarState{-1e-12, 0.2}, 1e-9), (PlanarState{0.0, 0.2}));
    const auto y = project_to_simplex(PlanarState{0.6, 0.4 + 5e-10}, 1e-9);
    EXPECT_LE(y.s + y.i, 1.0);
    EXPECT_EQ(simplex_violation(y), 0.0);
}

TEST(ProjectToSimplex, EscapeThrows)
{
    EXPECT_THROW(project_to_simplex(PlanarState{0.7, 0.4}, 1e-9), DomainEscape);
    EXPECT_THROW(project_to_simplex(FullState{0.5, 0.5, -1e-3}, 1e-9), DomainEscape);
    EXPECT_THROW(project_to_simplex(PlanarState{NAN, 0.1}, 1e-9), DomainEscape);
}

TEST(Params, ValidationNamesInvariant)
{
    Params p = canonical();
    EXPECT_NO_THROW(p.validate());
    p.beta = -1.0;
    try {
        p.validate();
        FAIL() << "expected ValidationError";
    }
    catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("beta > 0"), std::string::npos);
    }
    p = canonical();
    p.mu2 = 0.0;
    p.gamma = 0.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p = canonical();
    p.mu3 = 0.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p.rho = 0.1;
    EXPECT_NO_THROW(p.validate());
}

TEST(Params, FromRawScalesByPopulation)
{
    Params raw = canonical();
    raw.n_total = 1000.0;
    raw.beta = 5e-4;
    raw.alpha = 2e-6;
    const Params p = Params::from_raw(raw);
    EXPECT_DOUBLE_EQ(p.beta, 0.5);
    EXPECT_DOUBLE_EQ(p.alpha, 2.0);
    EXPECT_EQ(p.mu3, raw.mu3);
}

TEST(Params, IncidenceNames)
{
    EXPECT_EQ(parse_incidence("non_monotone"), Incidence::NonMonotone);
    EXPECT_EQ(parse_incidence("HollingII"), Incidence::HollingII);
    EXPECT_EQ(parse_incidence("mass-action"), Incidence::MassAction);
    EXPECT_THROW(parse_incidence("general_pq"), ValidationError);
}

} // namespace
} // namespace episdyn
