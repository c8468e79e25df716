// SPDX-License-Identifier: Apache-2.0
//
// mcsim: mutual-coupling Monte Carlo simulator for dense receive arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "app/config.hpp"
#include "app/runner.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mcsim;
using namespace mcsim::app;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace fs = std::filesystem;

namespace
{
    fs::path scratch(const std::string &name)
    {
        const fs::path p = fs::temp_directory_path() / ("mcsim_test_cli_" + name);
        fs::remove_all(p);
        return p;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream is(p, std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    std::string config_error(const std::vector<std::string> &args)
    {
        try
        {
            parse_config(args);
        }
        catch (const ConfigError &e)
        {
            return e.what();
        }
        return {};
    }
}

TEST_CASE("Defaults reproduce the reference parameter table")
{
    const RunConfig cfg = parse_config(std::vector<std::string>{});
    const auto &sc = cfg.scenario;
    const auto &cp = sc.circuit;
    CHECK(cfg.experiment == SweepKind::Azimuth);
    CHECK(sc.frequency == 30e9);
    CHECK(cp.bandwidth == 20e6);
    CHECK(cp.generator_impedance == cdouble(186.0, -31.6));
    CHECK(cp.load_impedance == cdouble(186.0, -31.6));
    CHECK(cp.antenna_impedance == cdouble(73.0, 42.5));
    CHECK(cp.transmit_antenna_impedance == cdouble(73.0, 42.5));
    CHECK(cp.antenna_temperature == 290.0);
    CHECK(cp.noise_resistance == 5.0);
    CHECK(cp.noise_correlation == cdouble(0.2730, 0.1793));
    CHECK(sc.user_range == 25.0);
    CHECK(sc.user_azimuth_deg == -30.0);
    CHECK(sc.scatterer_count == 20);
    CHECK(sc.cluster_radius == 3.0);
    CHECK(sc.constellation_order == 4);
    CHECK(sc.snr_db == 5.0);
    CHECK(sc.element_count == 128);
    CHECK(sc.aperture == 0.5);
    CHECK(cfg.trials == 100000);
    CHECK(cfg.detectors == all_detectors());
    CHECK(cfg.grid.size() == 10);
    CHECK(cfg.grid.front() == 0.0);
    CHECK(cfg.grid.back() == 90.0);
    CHECK_THAT(sc.wavelength(), WithinRel(9.993e-3, 1e-4));
}

TEST_CASE("Flags override")
{
    const RunConfig cfg = parse_config({"--snr-db", "5", "--trials", "100000", "--seed", "42"});
    CHECK(cfg.scenario.snr_db == 5.0);
    CHECK(cfg.trials == 100000);
    CHECK(cfg.seed == 42);
    CHECK(cfg.scene_seed == 42);
    const RunConfig c2 = parse_config({"--seed", "42", "--scene-seed", "7", "--detectors", "C-M,NC-MM",
                                       "--mm-gain", "real", "--coupling", "uncoupled"});
    CHECK(c2.scene_seed == 7);
    REQUIRE(c2.detectors.size() == 2);
    CHECK(label(c2.detectors[1]) == "NC-MM");
    CHECK(c2.scenario.mismatch_gain == MismatchGain::Real);
    CHECK(c2.scenario.coupling == CouplingModel::Uncoupled);
}

TEST_CASE("Experiment grids")
{
    CHECK(parse_config({"--experiment", "spacing"}).grid.size() == 20);
    CHECK_THAT(parse_config({"--experiment", "spacing"}).grid.back(), WithinRel(1.0, 1e-12));
    CHECK(parse_config({"--experiment", "count"}).grid == std::vector<double>{4, 8, 16, 32, 64, 128, 256});
    CHECK(parse_config({"--experiment", "single"}).grid.size() == 1);
    CHECK(parse_config({"-e", "azimuth", "--grid", "0:30:90"}).grid == std::vector<double>{0, 30, 60, 90});
    CHECK(parse_config({"--grid", "5, 10,20"}).grid == std::vector<double>{5, 10, 20});
    CHECK_THAT(config_error({"--experiment", "count", "--grid", "4,7.5"}), ContainsSubstring("grid"));
    CHECK_THAT(config_error({"--experiment", "bogus"}), ContainsSubstring("experiment"));
}

TEST_CASE("Invalid values are rejected with the field name")
{
    CHECK_THAT(config_error({"--rho", "2+0j"}), ContainsSubstring("rho"));
    CHECK_THAT(config_error({"--rho", "0.8+0.8j"}), ContainsSubstring("|rho| <= 1"));
    CHECK_THAT(config_error({"--r-n", "-1"}), ContainsSubstring("r-n"));
    CHECK_THAT(config_error({"--temperature", "0"}), ContainsSubstring("temperature"));
    CHECK_THAT(config_error({"--z-a", "-3+1j"}), ContainsSubstring("z-a"));
    CHECK_THAT(config_error({"--trials", "0"}), ContainsSubstring("trials"));
    CHECK_THAT(config_error({"--order", "1"}), ContainsSubstring("order"));
    CHECK_THAT(config_error({"--detectors", "C-X"}), ContainsSubstring("detectors"));
    CHECK_THAT(config_error({"--mm-gain", "imag"}), ContainsSubstring("mm-gain"));
    CHECK_THAT(config_error({"--cluster-radius", "30"}), ContainsSubstring("cluster-radius"));
    CHECK_FALSE(config_error({"--no-such-flag"}).empty());
    CHECK_THROWS_AS(parse_config({"--help"}), HelpRequested);
}

TEST_CASE("Complex, grid and length parsing")
{
    CHECK(parse_complex("186-31.6j") == cdouble(186, -31.6));
    CHECK(parse_complex("186 - 31.6j") == cdouble(186, -31.6));
    CHECK(parse_complex("0.2730+0.1793i") == cdouble(0.2730, 0.1793));
    CHECK(parse_complex("(1.5,-2)") == cdouble(1.5, -2));
    CHECK(parse_complex("3") == cdouble(3, 0));
    CHECK(parse_complex("-2j") == cdouble(0, -2));
    CHECK(parse_complex("1e-3+2e+1j") == cdouble(1e-3, 20));
    CHECK(parse_complex(format_complex(cdouble(0.1, -1.0 / 3.0))) == cdouble(0.1, -1.0 / 3.0));
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    CHECK_THROWS_AS(parse_grid("1:0:3"), ConfigError);
    CHECK_THAT(parse_length("0.5lam", 0.01), WithinRel(0.005, 1e-15));
    CHECK(parse_length("0.02", 0.01) == 0.02);
    CHECK(parse_length("0.02m", 0.01) == 0.02);

    const RunConfig s = parse_config({"--spacing", "0.5lam", "--elements", "64"});
    CHECK_THAT(s.scenario.geometry().spacing(), WithinRel(0.5 * s.scenario.wavelength(), 1e-12));
    const RunConfig a = parse_config({"--aperture", "10lam"});
    CHECK_THAT(a.scenario.aperture, WithinRel(10 * a.scenario.wavelength(), 1e-15));
    CHECK_FALSE(config_error({"--spacing", "1e-3", "--aperture", "0.1"}).empty());
}

TEST_CASE("Config file: flags override file, unknown keys rejected")
{
    const fs::path dir = scratch("conf");
    fs::create_directories(dir);
    const fs::path file = dir / "run.ini";
    std::ofstream(file) << "snr-db = 10\ntrials = 123\nrho = 0.1+0.2j\n";
    const RunConfig cfg = parse_config({"--config", file.string(), "--trials", "77"});
    CHECK(cfg.scenario.snr_db == 10.0);
    CHECK(cfg.trials == 77);
    CHECK(cfg.scenario.circuit.noise_correlation == cdouble(0.1, 0.2));
    CHECK(cfg.config_file == file.string());

    std::ofstream(file) << "snr-db = 10\nbogus-key = 1\n";
    CHECK_THAT(config_error({"--config", file.string()}), ContainsSubstring("bogus"));
}

TEST_CASE("Worker count from the environment")
{
    ::setenv(workers_env, "3", 1);
    CHECK(parse_config(std::vector<std::string>{}).workers == 3);
    CHECK(parse_config({"--workers", "2"}).workers == 2);
    ::setenv(workers_env, "zero", 1);
    CHECK_FALSE(config_error({}).empty());
    ::unsetenv(workers_env);
    CHECK(parse_config(std::vector<std::string>{}).workers == 0);
}

TEST_CASE("Every parameter reaches the run metadata")
{
    const auto base = config_to_json(parse_config(std::vector<std::string>{}));
    const std::vector<std::vector<std::string>> perturb = {
        {"--experiment", "count"}, {"--grid", "1,2"}, {"--frequency", "28e9"}, {"--bandwidth", "1e6"},
        {"--z-g", "50"}, {"--z-l", "50"}, {"--z-a", "70+40j"}, {"--z-at", "70"}, {"--temperature", "300"},
        {"--r-n", "4"}, {"--rho", "0.1"}, {"--c-norm", "2"}, {"--elements", "64"}, {"--aperture", "0.4"},
        {"--spacing", "0.001"}, {"--user-range", "30"}, {"--user-azimuth", "10"}, {"--scatterers", "5"},
        {"--cluster-radius", "2"}, {"--order", "8"}, {"--snr-db", "0"}, {"--coupling", "uncoupled"},
        {"--mm-gain", "real"}, {"--detectors", "C-M"}, {"--trials", "10"}, {"--seed", "9"},
        {"--scene-seed", "9"}, {"--emit-coupling-curve"},
    };
    for (const auto &args : perturb)
    {
        CAPTURE(args.front());
        CHECK(config_to_json(parse_config(args)) != base);
    }
}

TEST_CASE("CSV round trip")
{
    SweepResult res;
    res.kind = SweepKind::Spacing;
    const double values[] = {0.05, 1.0 / 3.0, 2.0 / 7.0, 1e-5};
    for (double v : values)
        for (const auto &d : all_detectors())
            res.rows.push_back({v, d, SerEstimate::from_counts(static_cast<std::uint64_t>(v * 1e5) % 977 + 1, 100000)});
    const std::string text = format_results_csv(res);
    const auto parsed = parse_results_csv(text);
    REQUIRE(parsed.size() == res.rows.size());
    for (std::size_t i = 0; i < parsed.size(); ++i)
    {
        const auto &row = res.rows[i];
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", row.estimate.ser);
        CHECK(parsed[i].ser == std::strtod(buf, nullptr));
        CHECK_THAT(parsed[i].ser, WithinRel(row.estimate.ser, 5e-9));
        CHECK(parsed[i].errors == row.estimate.errors);
        CHECK(parsed[i].trials == row.estimate.trials);
        CHECK(parsed[i].sweep_var == "spacing_lambda");
        CHECK(parsed[i].detector + "-" + parsed[i].mode == label(row.detector));
    }
    CHECK_THROWS(parse_results_csv("a,b\n"));
    CHECK_THROWS(parse_results_csv(std::string(results_header) + "\n1,2\n"));
}

TEST_CASE("Run writes results, metadata and the coupling curve")
{
    const fs::path dir = scratch("run");
    RunConfig cfg = parse_config({"--experiment", "azimuth", "--trials", "40", "--elements", "6",
                                  "--emit-coupling-curve", "--workers", "2", "-o", dir.string()});
    std::ostringstream log;
    const auto summary = run(cfg, log);
    CHECK(summary.result.rows.size() == 60);

    const auto rows = parse_results_csv(slurp(dir / "results.csv"));
    CHECK(rows.size() == 60);
    CHECK(rows.front().sweep_var == "azimuth_deg");

    const auto meta = nlohmann::json::parse(slurp(dir / "run.json"));
    CHECK(meta.contains("git_describe"));
    CHECK(meta.contains("wall_time_s"));
    CHECK(meta["config"]["seed"] == 1);
    CHECK(meta["config"]["scene_seed"] == 1);
    CHECK(meta["config"]["elements"] == 6);
    CHECK(meta["failures"].empty());

    std::istringstream curve(slurp(dir / "coupling.csv"));
    std::string line;
    std::getline(curve, line);
    CHECK(line == "d_over_lambda,re_z12_over_r");
    std::vector<std::pair<double, double>> pts;
    while (std::getline(curve, line))
    {
        const auto comma = line.find(',');
        pts.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    REQUIRE(pts.size() == 300);
    CHECK(pts.front().first == 0.01);
    CHECK(pts.back().first == 3.0);
    std::size_t first_neg = 0;
    while (pts[first_neg].second > 0)
        ++first_neg;
    CHECK(pts[first_neg].first == 0.43);
}

TEST_CASE("Unwritable output fails before computing")
{
    RunConfig cfg = parse_config({"--trials", "100000000", "-o", "/proc/mcsim-no-such-dir"});
    std::ostringstream log;
    CHECK_THROWS_AS(run(cfg, log), std::runtime_error);
}

TEST_CASE("Byte-identical output across worker counts")
{
    std::string ref;
    for (const char *w : {"1", "4", "8"})
    {
        const fs::path dir = scratch(std::string("det") + w);
        RunConfig cfg = parse_config({"--experiment", "spacing", "--grid", "0.1,0.5", "--elements", "10",
                                      "--trials", "500", "--seed", "42", "--workers", w, "-o", dir.string()});
        std::ostringstream log;
        run(cfg, log);
        const std::string csv = slurp(dir / "results.csv");
        if (ref.empty())
            ref = csv;
        CHECK(csv == ref);
    }
}
