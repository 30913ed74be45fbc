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
#include "episdyn/commands.hpp"
#include "episdyn/config.hpp"
#include "episdyn/csv.hpp"
#include "episdyn/equilibria.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace episdyn
{
namespace
{

namespace fs = std::filesystem;

const char* const canonical_text = R"(# canonical SIR set
beta = 0.5
alpha = 2
mu1 = 0.1
mu2 = 0.1
mu3 = 0.05
gamma = 0.15
initial = 0.99, 0.01
)";

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("episdyn_test_" + name);
    fs::remove_all(dir);
    return dir;
}

RunConfig config(Command c, Overrides o = {})
{
    return parse_config(canonical_text, c, o);
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

TEST(ParseConfig, Canonical)
{
    const auto cfg = config(Command::Simulate);
    EXPECT_EQ(cfg.params.beta, 0.5);
    EXPECT_EQ(cfg.params.alpha, 2.0);
    EXPECT_EQ(cfg.params.gamma, 0.15);
    EXPECT_EQ(cfg.params.incidence, Incidence::NonMonotone);
    ASSERT_EQ(cfg.initial_conditions.size(), 1u);
    EXPECT_EQ(cfg.initial_conditions[0], (PlanarState{0.99, 0.01}));
    EXPECT_EQ(cfg.integrator.method, Method::RK45Adaptive);
    EXPECT_EQ(cfg.system, SystemKind::Planar);
}

TEST(ParseConfig, MinimalAnalyzeInput)
{
    const auto cfg =
        parse_config("beta = 0.5\nalpha = 2.0\nmu2 = 0.1\nmu3 = 0.05\ngamma = 0.15", Command::Analyze);
    EXPECT_EQ(cfg.command, Command::Analyze);
    EXPECT_EQ(cfg.params.alpha, 2.0);
    EXPECT_EQ(cfg.params.rho, 0.0);
}

TEST(ParseConfig, NegativeRateIsValidationError)
{
    try {
        parse_config("beta = -1\nalpha = 2\nmu2 = 0.1\nmu3 = 0.05\ngamma = 0.15\n", Command::Analyze);
        FAIL() << "expected ValidationError";
    }
    catch (const ValidationError& err) {
        EXPECT_NE(std::string(err.what()).find("beta > 0"), std::string::npos);
    }
}

TEST(ParseConfig, UnknownKeyReportsLine)
{
    try {
        parse_config("betta = 0.5\n", Command::Analyze);
        FAIL() << "expected ParseError";
    }
    catch (const ParseError& err) {
        EXPECT_EQ(err.line(), 1);
        EXPECT_NE(std::string(err.what()).find("betta"), std::string::npos);
    }
    try {
        parse_config(std::string(canonical_text) + "gamma 0.2\n", Command::Analyze);
        FAIL() << "expected ParseError";
    }
    catch (const ParseError& err) {
        EXPECT_EQ(err.line(), 9);
    }
}

TEST(ParseConfig, DuplicateKey)
{
    EXPECT_THROW(parse_config(std::string(canonical_text) + "beta = 0.4\n", Command::Analyze), ParseError);
    const auto cfg = parse_config(std::string(canonical_text) + "initial = 0.5, 0.5\n", Command::Simulate);
    EXPECT_EQ(cfg.initial_conditions.size(), 2u);
}

TEST(ParseConfig, OverridesWin)
{
    const auto cfg = config(Command::Simulate, {{"beta", "0.3"}, {"initial", "0.4, 0.1"}, {"method", "RK4Fixed"}});
    EXPECT_EQ(cfg.params.beta, 0.3);
    ASSERT_EQ(cfg.initial_conditions.size(), 1u);
    EXPECT_EQ(cfg.initial_conditions[0], (PlanarState{0.4, 0.1}));
    EXPECT_EQ(cfg.integrator.method, Method::RK4Fixed);
    EXPECT_THROW(config(Command::Analyze, {{"bogus", "1"}}), ParseError);
}

TEST(ParseConfig, RawScale)
{
    const auto cfg = parse_config(
        "scale = raw\nn_total = 100\nbeta = 0.005\nalpha = 0.0002\nmu2 = 0.1\nmu3 = 0.05\ngamma = 0.15\n",
        Command::Analyze);
    EXPECT_NEAR(cfg.params.beta, 0.5, 1e-15);
    EXPECT_NEAR(cfg.params.alpha, 2.0, 1e-15);
}

TEST(ParseConfig, SimulateNeedsInitialConditionInsideSimplex)
{
    EXPECT_THROW(parse_config("beta = 0.5\nalpha = 2\nmu2 = 0.1\nmu3 = 0.05\ngamma = 0.15\n", Command::Simulate),
                 ValidationError);
    EXPECT_THROW(config(Command::Simulate, {{"initial", "0.7, 0.7"}}), ValidationError);
}

TEST(ParseConfig, SweepKeys)
{
    EXPECT_THROW(config(Command::Sweep), ValidationError);
    EXPECT_THROW(config(Command::Sweep, {{"sweep_param", "mu1"},
                                         {"sweep_min", "0.1"},
                                         {"sweep_max", "0.2"},
                                         {"sweep_count", "3"}}),
                 ValidationError);
    const auto cfg = config(Command::Sweep, {{"sweep_param", "alpha"},
                                             {"sweep_min", "0"},
                                             {"sweep_max", "4"},
                                             {"sweep_count", "5"}});
    ASSERT_TRUE(cfg.sweep.has_value());
    EXPECT_EQ(cfg.sweep->parameter, "alpha");
    EXPECT_EQ(cfg.sweep->count, 5);
}

TEST(Analyze, CanonicalReport)
{
    const auto res = cmd_analyze(config(Command::Analyze));
    EXPECT_EQ(res.exit_code, exit_code::ok);
    EXPECT_NE(res.report.find("model = SIR\n"), std::string::npos);
    EXPECT_NE(res.report.find("R0 = 2\n"), std::string::npos);
    EXPECT_NE(res.report.find("[endemic]\nS = 0.5147186257614"), std::string::npos);
    EXPECT_NE(res.report.find("I = 0.1213203435596"), std::string::npos);
    EXPECT_NE(res.report.find("classification = LocallyAsymptoticallyStable"), std::string::npos);
    EXPECT_NE(res.report.find("classification = Unstable"), std::string::npos);
    EXPECT_EQ(res.report, cmd_analyze(config(Command::Analyze)).report);
}

TEST(Analyze, SirsLabel)
{
    const auto res = cmd_analyze(config(Command::Analyze, {{"rho", "0.02"}}));
    EXPECT_NE(res.report.find("model = SIRS"), std::string::npos);
    EXPECT_NE(res.report.find("mu3 + rho"), std::string::npos);
}

TEST(Analyze, SubcriticalHasNoEndemicState)
{
    const auto res = cmd_analyze(config(Command::Analyze, {{"beta", "0.2"}}));
    EXPECT_EQ(res.exit_code, exit_code::ok);
    EXPECT_NE(res.report.find("status = no endemic equilibrium"), std::string::npos);
    EXPECT_NE(res.report.find("classification = LocallyAsymptoticallyStable"), std::string::npos);
}

TEST(Simulate, CsvRoundTrip)
{
    const auto dir = scratch("simulate");
    auto cfg = config(Command::Simulate, {{"out", dir.string()}});
    const auto res = cmd_simulate(cfg);
    ASSERT_EQ(res.exit_code, exit_code::ok);
    ASSERT_EQ(res.files_written.size(), 1u);
    EXPECT_FALSE(fs::exists(dir / "phase_portrait.svg"));

    const auto text = read_text_file(dir / "trajectory_000.csv");
    EXPECT_EQ(text.rfind("t,S,I,R\n", 0), 0u);
    const auto parsed = parse_trajectory_csv(text);
    const auto traj = integrate_planar(cfg.initial_conditions[0], cfg.params, cfg.integrator);
    ASSERT_EQ(parsed.times.size(), traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        ASSERT_EQ(parsed.times[k], traj.times[k]);
        ASSERT_EQ(parsed.states[k].s, traj.states[k].s);
        ASSERT_EQ(parsed.states[k].i, traj.states[k].i);
        ASSERT_LE(std::abs(parsed.states[k].r - (1.0 - traj.states[k].s - traj.states[k].i)), 1e-16);
    }
    const auto eq = std::get<Equilibrium>(compute_endemic(cfg.params)).point;
    EXPECT_LT(std::hypot(parsed.states.back().s - eq.s, parsed.states.back().i - eq.i), 1e-6);
}

TEST(Simulate, PhasePortrait)
{
    const auto dir = scratch("svg");
    const auto res = cmd_simulate(config(Command::Simulate, {{"out", dir.string()}, {"svg", "true"}}));
    ASSERT_EQ(res.exit_code, exit_code::ok);
    const auto svg = read_text_file(dir / "phase_portrait.svg");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Simulate, FullSystem)
{
    const auto dir = scratch("full");
    const auto res =
        cmd_simulate(config(Command::Simulate, {{"out", dir.string()}, {"system", "full"}, {"rho", "0.02"}}));
    ASSERT_EQ(res.exit_code, exit_code::ok);
    const auto parsed = parse_trajectory_csv(read_text_file(dir / "trajectory_000.csv"));
    for (const auto& x : parsed.states) {
        ASSERT_NEAR(x.s + x.i + x.r, 1.0, 1e-12);
    }
}

TEST(Simulate, DomainEscapeExitCode)
{
    const auto dir = scratch("escape");
    const auto res = cmd_simulate(config(
        Command::Simulate, {{"out", dir.string()}, {"method", "RK4Fixed"}, {"step", "40"}, {"initial", "0.2, 0.8"}}));
    EXPECT_EQ(res.exit_code, exit_code::failed);
    EXPECT_NE(res.report.find("terminal_reason = DomainEscape"), std::string::npos);
    EXPECT_NE(res.diagnostics.find("domain escape"), std::string::npos);
}

TEST(Certify, Canonical)
{
    const auto res = cmd_certify(config(Command::Certify));
    EXPECT_EQ(res.exit_code, exit_code::ok);
    EXPECT_NE(res.report.find("[dulac]"), std::string::npos);
    EXPECT_NE(res.report.find("[lyapunov_endemic]"), std::string::npos);
    EXPECT_NE(res.report.find("lyapunov_form_max_abs_delta"), std::string::npos);
    EXPECT_NE(res.report.find("all_certified = true"), std::string::npos);
}

TEST(Certify, Subcritical)
{
    const auto res = cmd_certify(config(Command::Certify, {{"beta", "0.2"}}));
    EXPECT_EQ(res.exit_code, exit_code::ok);
    EXPECT_NE(res.report.find("[lyapunov_dfe]"), std::string::npos);
    EXPECT_EQ(res.report.find("[lyapunov_endemic]"), std::string::npos);
}

TEST(Certify, ThresholdIsUnmetPrecondition)
{
    const auto res = cmd_certify(config(Command::Certify, {{"beta", "0.25"}}));
    EXPECT_EQ(res.exit_code, exit_code::failed);
    EXPECT_NE(res.report.find("all_certified = false"), std::string::npos);
}

TEST(Sweep, BetaCrossesThreshold)
{
    const auto cfg = config(Command::Sweep, {{"sweep_param", "beta"},
                                             {"sweep_min", "0.1"},
                                             {"sweep_max", "0.6"},
                                             {"sweep_count", "11"}});
    const auto rows = lines_of(sweep_csv(cfg));
    ASSERT_EQ(rows.size(), 12u);
    // mu2 + gamma = 0.25: the fourth point sits on the threshold, the fifth is the first endemic one.
    EXPECT_EQ(split(rows[4])[0], "0.25");
    EXPECT_EQ(split(rows[4])[3], "0");
    EXPECT_EQ(split(rows[5])[3], "1");
    EXPECT_EQ(rows[0], "beta,R0,dfe_classification,endemic_exists,S_star,I_star,endemic_classification");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto cells = split(rows[k]);
        ASSERT_EQ(cells.size(), 7u) << rows[k];
        const double beta = std::stod(cells[0]);
        if (beta < 0.25 - 1e-12) {
            EXPECT_EQ(cells[2], "LocallyAsymptoticallyStable");
            EXPECT_EQ(cells[3], "0");
            EXPECT_EQ(cells[6], "None");
        }
        else if (beta > 0.25 + 1e-12) {
            EXPECT_EQ(cells[2], "Unstable");
            EXPECT_EQ(cells[3], "1");
            EXPECT_EQ(cells[6], "LocallyAsymptoticallyStable");
        }
    }
}

TEST(Sweep, AlphaLeavesR0AndLowersPrevalence)
{
    const auto cfg = config(Command::Sweep, {{"sweep_param", "alpha"},
                                             {"sweep_min", "0"},
                                             {"sweep_max", "10"},
                                             {"sweep_count", "11"}});
    const auto rows = lines_of(sweep_csv(cfg));
    ASSERT_EQ(rows.size(), 12u);
    double prev = 1.0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto cells = split(rows[k]);
        EXPECT_EQ(std::stod(cells[1]), 2.0);
        const double i_star = std::stod(cells[5]);
        EXPECT_LT(i_star, prev);
        prev = i_star;
    }
}

TEST(Sweep, WritesFile)
{
    const auto dir = scratch("sweep");
    const auto res = cmd_sweep(config(Command::Sweep, {{"sweep_param", "gamma"},
                                                       {"sweep_min", "0.05"},
                                                       {"sweep_max", "0.5"},
                                                       {"sweep_count", "4"},
                                                       {"out", dir.string()}}));
    EXPECT_EQ(res.exit_code, exit_code::ok);
    EXPECT_TRUE(fs::exists(dir / "sweep.csv"));
}

int run(const std::string& args)
{
    const int status = std::system((std::string(EPISDYN_BINARY) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Binary : public ::testing::Test
{
protected:
    void SetUp() override
    {
        dir = scratch(std::string("binary_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
        cfg = (dir / "run.cfg").string();
        write_text_file(cfg, canonical_text);
    }

    fs::path dir;
    std::string cfg;
};

TEST_F(Binary, ExitCodes)
{
    EXPECT_EQ(run("analyze --config " + cfg), 0);
    EXPECT_EQ(run("analyze --config " + cfg + " --beta=-1"), 1);
    EXPECT_EQ(run("analyze --config " + cfg + " --bogus 1"), 1);
    EXPECT_EQ(run("frobnicate --config " + cfg), 1);
    EXPECT_EQ(run("analyze --config " + (dir / "missing.cfg").string()), 3);
    EXPECT_EQ(run("certify --config " + cfg + " --beta 0.25"), 2);
    EXPECT_EQ(run("certify --config " + cfg), 0);
    EXPECT_EQ(run("simulate --config " + cfg + " --out " + (dir / "sim").string()), 0);
    EXPECT_EQ(run("simulate --config " + cfg + " --method RK4Fixed --step 40 --initial 0.2,0.8 --out " +
                  (dir / "esc").string()),
              2);
}

TEST_F(Binary, UnwritableOutput)
{
    write_text_file(dir / "blocker", "x");
    EXPECT_EQ(run("simulate --config " + cfg + " --out " + (dir / "blocker" / "sub").string()), 3);
}

} // namespace
} // namespace episdyn
