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

#ifndef MCSIM_APP_CONFIG_HPP
#define MCSIM_APP_CONFIG_HPP

#include "mcsim/montecarlo.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcsim::app
{
    /// Invalid command line or config file value; the message names the field.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// --help / --version; carries the text to print.
    class HelpRequested : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Environment variable that overrides the worker count when --workers is absent.
    inline constexpr const char *workers_env = "MCSIM_WORKERS";

    struct RunConfig
    {
        SweepKind experiment = SweepKind::Azimuth;
        std::vector<double> grid;
        ScenarioConfig scenario;
        std::vector<Detector> detectors = all_detectors();
        std::uint64_t trials = 100000;
        std::uint64_t seed = 1;
        std::uint64_t scene_seed = 1;
        unsigned workers = 0;
        std::string output_dir = ".";
        bool emit_coupling_curve = false;
        std::string config_file;
    };

    /// Flags override config-file values, which override defaults.
    /// Throws ConfigError or HelpRequested.
    RunConfig parse_config(int argc, const char *const *argv);
    RunConfig parse_config(const std::vector<std::string> &args);

    /// Default grid for an experiment.
    std::vector<double> default_grid(SweepKind kind);

    /// "a", "a+bj", "a-bj" (i or j, optional spaces), or "(a,b)".
    std::complex<double> parse_complex(std::string_view text);
    std::string format_complex(std::complex<double> z);

    /// Comma list "0,10,20" or inclusive range "start:step:stop".
    std::vector<double> parse_grid(std::string_view text);

    /// Length in meters; a "lam" suffix means multiples of the wavelength.
    double parse_length(std::string_view text, double wavelength);

    /// Fully resolved configuration, including derived quantities.
    nlohmann::json config_to_json(const RunConfig &cfg);

    ExperimentSpec to_experiment(const RunConfig &cfg);
}

#endif
