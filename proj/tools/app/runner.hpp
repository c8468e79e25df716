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

#ifndef MCSIM_APP_RUNNER_HPP
#define MCSIM_APP_RUNNER_HPP

#include "config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mcsim::app
{
    inline constexpr const char *results_header =
        "sweep_var,sweep_value,detector,mode,ser,errors,trials,ci95_lo,ci95_hi";

    /// One parsed line of results.csv.
    struct ResultRecord
    {
        std::string sweep_var;
        double sweep_value = 0.0;
        std::string detector; // "C" / "NC"
        std::string mode;     // "M" / "MM" / "U"
        double ser = 0.0;
        std::uint64_t errors = 0;
        std::uint64_t trials = 0;
        double ci95_lo = 0.0;
        double ci95_hi = 0.0;
    };

    std::string format_results_csv(const SweepResult &result);
    /// Throws std::runtime_error on a malformed header or row.
    std::vector<ResultRecord> parse_results_csv(const std::string &text);

    /// d / lambda from 0.01 to 3.00, Re Z_12 normalized by the small-spacing limit of the dipole formula.
    std::string format_coupling_csv();

    /// Creates dir if needed and checks that files can be written into it; throws std::runtime_error.
    void ensure_writable(const std::filesystem::path &dir);

    /// "git describe" of the source tree at configure time.
    std::string build_revision();

    struct RunSummary
    {
        SweepResult result;
        double wall_seconds = 0.0;
        std::uint64_t jitter_events = 0;
    };

    /// Runs the experiment and writes results.csv, run.json (and coupling.csv) into cfg.output_dir.
    RunSummary run(const RunConfig &cfg, std::ostream &log);

    /// Entry point used by the executable; returns the process exit code.
    int main_entry(int argc, const char *const *argv);
}

#endif
