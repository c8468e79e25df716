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

#include "runner.hpp"

#include "mcsim/array.hpp"
#include "mcsim/linalg.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifndef MCSIM_GIT_DESCRIBE
#define MCSIM_GIT_DESCRIBE "unknown"
#endif

namespace mcsim::app
{
    namespace
    {
        std::string fmt(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", v);
            return buf;
        }

        std::vector<std::string> split(const std::string &line, char sep)
        {
            std::vector<std::string> out;
            std::stringstream ss(line);
            std::string item;
            while (std::getline(ss, item, sep))
                out.push_back(item);
            if (!line.empty() && line.back() == sep)
                out.emplace_back();
            return out;
        }

        void write_file(const std::filesystem::path &path, const std::string &text)
        {
            std::ofstream os(path, std::ios::binary);
            os << text;
            if (!os)
                throw std::runtime_error("cannot write " + path.string());
        }
    }

    std::string format_results_csv(const SweepResult &result)
    {
        std::string out = std::string(results_header) + "\n";
        const std::string var(sweep_variable(result.kind));
        for (const auto &row : result.rows)
        {
            const auto &e = row.estimate;
            out += var + "," + fmt(row.value) + "," + std::string(to_string(row.detector.kind)) + "," +
                   std::string(to_string(row.detector.mode)) + "," + fmt(e.ser) + "," +
                   std::to_string(e.errors) + "," + std::to_string(e.trials) + "," + fmt(e.ci95_low) + "," +
                   fmt(e.ci95_high) + "\n";
        }
        return out;
    }

    std::vector<ResultRecord> parse_results_csv(const std::string &text)
    {
        std::istringstream is(text);
        std::string line;
        if (!std::getline(is, line) || line != results_header)
            throw std::runtime_error("results.csv: unexpected header");
        std::vector<ResultRecord> out;
        while (std::getline(is, line))
        {
            if (line.empty())
                continue;
            const auto f = split(line, ',');
            if (f.size() != 9)
                throw std::runtime_error("results.csv: expected 9 fields in '" + line + "'");
            try
            {
                ResultRecord r;
                r.sweep_var = f[0];
                r.sweep_value = std::stod(f[1]);
                r.detector = f[2];
                r.mode = f[3];
                r.ser = std::stod(f[4]);
                r.errors = std::stoull(f[5]);
                r.trials = std::stoull(f[6]);
                r.ci95_lo = std::stod(f[7]);
                r.ci95_hi = std::stod(f[8]);
                out.push_back(r);
            }
            catch (const std::logic_error &)
            {
                throw std::runtime_error("results.csv: malformed row '" + line + "'");
            }
        }
        return out;
    }

    std::string format_coupling_csv()
    {
        const double norm = dipole_resistance_limit(constants::free_space_impedance);
        std::string out = "d_over_lambda,re_z12_over_r\n";
        for (int i = 1; i <= 300; ++i)
        {
            const double x = i / 100.0;
            const auto z = dipole_mutual_impedance(x, 1.0, constants::free_space_impedance);
            out += fmt(x) + "," + fmt(z.real() / norm) + "\n";
        }
        return out;
    }

    void ensure_writable(const std::filesystem::path &dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec || !std::filesystem::is_directory(dir))
            throw std::runtime_error("output directory " + dir.string() + " cannot be created");
        const auto probe = dir / ".mcsim_write_probe";
        {
            std::ofstream os(probe);
            if (!os)
                throw std::runtime_error("output directory " + dir.string() + " is not writable");
        }
        std::filesystem::remove(probe, ec);
    }

    std::string build_revision() { return MCSIM_GIT_DESCRIBE; }

    RunSummary run(const RunConfig &cfg, std::ostream &log)
    {
        const std::filesystem::path dir(cfg.output_dir);
        ensure_writable(dir);

        const ExperimentSpec spec = to_experiment(cfg);
        spec.validate();

        const auto jitter_before = jitter_count();
        const auto t0 = std::chrono::steady_clock::now();
        RunSummary summary;
        summary.result = run_sweep(spec);
        summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        summary.jitter_events = jitter_count() - jitter_before;

        write_file(dir / "results.csv", format_results_csv(summary.result));
        if (cfg.emit_coupling_curve)
            write_file(dir / "coupling.csv", format_coupling_csv());

        nlohmann::json meta;
        meta["config"] = config_to_json(cfg);
        meta["workers"] = resolve_workers(cfg.workers);
        meta["git_describe"] = build_revision();
        meta["version"] = MCSIM_VERSION_STRING;
        meta["wall_time_s"] = summary.wall_seconds;
        meta["covariance_jitter_events"] = summary.jitter_events;
        nlohmann::json failures = nlohmann::json::array();
        for (const auto &f : summary.result.failures)
            failures.push_back({{"index", f.index}, {"sweep_value", f.value}, {"error", f.message}});
        meta["failures"] = failures;
        write_file(dir / "run.json", meta.dump(2) + "\n");

        for (const auto &f : summary.result.failures)
            log << "warning: sweep point " << fmt(f.value) << " skipped: " << f.message << "\n";
        log << "wrote " << (dir / "results.csv").string() << " (" << summary.result.rows.size() << " rows, "
            << fmt(summary.wall_seconds) << " s)\n";
        return summary;
    }

    int main_entry(int argc, const char *const *argv)
    {
        RunConfig cfg;
        try
        {
            cfg = parse_config(argc, argv);
        }
        catch (const HelpRequested &h)
        {
            std::cout << h.what();
            return 0;
        }
        catch (const ConfigError &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        catch (const std::exception &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }

        try
        {
            const auto summary = run(cfg, std::cerr);
            return summary.result.rows.empty() ? 1 : 0;
        }
        catch (const std::exception &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
}
