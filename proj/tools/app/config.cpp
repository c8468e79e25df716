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

#include "config.hpp"

#include "mcsim/constants.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <regex>
#include <sstream>

namespace mcsim::app
{
    namespace
    {
        std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t");
            return std::string(s.substr(b, e - b + 1));
        }

        double parse_double(std::string_view text, const std::string &field)
        {
            std::string t = trim(text);
            if (t.size() > 1 && t[0] == '+')
                t.erase(0, 1);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
                throw ConfigError(field + ": '" + std::string(text) + "' is not a number");
            return v;
        }

        void require(bool ok, const std::string &field, const std::string &range)
        {
            if (!ok)
                throw ConfigError("invalid value for --" + field + ": must be " + range);
        }

    }

    std::complex<double> parse_complex(std::string_view text)
    {
        std::string t;
        for (char c : text)
            if (c != ' ' && c != '\t')
                t.push_back(c);
        if (t.empty())
            throw ConfigError("empty complex value");

        static const std::regex pair(R"(^\(([^,]+),([^,]+)\)$)");
        std::smatch m;
        if (std::regex_match(t, m, pair))
            return {parse_double(m[1].str(), "complex"), parse_double(m[2].str(), "complex")};

        const char last = t.back();
        if (last != 'j' && last != 'i')
            return {parse_double(t, "complex"), 0.0};

        // a+bj / a-bj / bj / a+jb: split at the last sign that is not an exponent sign.
        std::string body = t.substr(0, t.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;)
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
            {
                split = i;
                break;
            }
        if (split == std::string::npos)
        {
            const std::string im = body.empty() || body == "+" ? "1" : (body == "-" ? "-1" : body);
            return {0.0, parse_double(im, "complex")};
        }
        const std::string re = body.substr(0, split);
        std::string im = body.substr(split);
        if (im == "+" || im == "-")
            im += "1";
        return {parse_double(re, "complex"), parse_double(im, "complex")};
    }

    std::string format_complex(std::complex<double> z)
    {
        std::ostringstream os;
        os.precision(17);
        os << z.real() << (z.imag() < 0.0 ? "-" : "+") << std::abs(z.imag()) << "j";
        return os.str();
    }

    std::vector<double> parse_grid(std::string_view text)
    {
        const std::string t = trim(text);
        if (t.empty())
            throw ConfigError("grid: empty");
        std::vector<double> out;
        if (t.find(':') != std::string::npos)
        {
            std::vector<double> parts;
            std::stringstream ss(t);
            std::string item;
            while (std::getline(ss, item, ':'))
                parts.push_back(parse_double(item, "grid"));
            if (parts.size() != 3)
                throw ConfigError("grid: range must be start:step:stop");
            const double start = parts[0], step = parts[1], stop = parts[2];
            if (!(step > 0.0) || stop < start)
                throw ConfigError("grid: range needs step > 0 and stop >= start");
            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            for (std::size_t i = 0; i < count; ++i)
                out.push_back(start + static_cast<double>(i) * step);
            return out;
        }
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(parse_double(item, "grid"));
        return out;
    }

    double parse_length(std::string_view text, double wavelength)
    {
        std::string t = trim(text);
        if (t.size() > 3 && t.compare(t.size() - 3, 3, "lam") == 0)
            return parse_double(std::string_view(t).substr(0, t.size() - 3), "length") * wavelength;
        if (!t.empty() && t.back() == 'm')
            t.pop_back();
        return parse_double(t, "length");
    }

    std::vector<double> default_grid(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::Spacing:
            return parse_grid("0.05:0.05:1.0");
        case SweepKind::Count:
            return {4, 8, 16, 32, 64, 128, 256};
        case SweepKind::Azimuth:
            return parse_grid("0:10:90");
        case SweepKind::Single:
            break;
        }
        return {0.0};
    }

    RunConfig parse_config(const std::vector<std::string> &args)
    {
        std::vector<const char *> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("mcsim");
        for (const auto &a : args)
            argv.push_back(a.c_str());
        return parse_config(static_cast<int>(argv.size()), argv.data());
    }

    RunConfig parse_config(int argc, const char *const *argv)
    {
        RunConfig cfg;
        ScenarioConfig &sc = cfg.scenario;
        CircuitParams &cp = sc.circuit;

        CLI::App app{"Monte Carlo symbol error rates of coherent and noncoherent detectors in densely "
                     "coupled receive arrays",
                     "mcsim"};
        app.set_config("--config", "", "Read 'key = value' options from a file (keys are long flag names)");
        app.allow_config_extras(CLI::config_extras_mode::error);
        app.set_version_flag("--version", std::string(MCSIM_VERSION_STRING));

        std::string experiment = "azimuth";
        std::string grid, spacing, aperture;
        std::string z_g = format_complex(cp.generator_impedance);
        std::string z_l = format_complex(cp.load_impedance);
        std::string z_a = format_complex(cp.antenna_impedance);
        std::string z_at;
        std::string rho = format_complex(cp.noise_correlation);
        std::string coupling = "dipole";
        std::string mm_gain = "complex";
        std::string detectors;
        std::optional<std::uint64_t> scene_seed;
        std::optional<unsigned> workers;
        std::optional<std::size_t> elements;
        double azimuth = sc.user_azimuth_deg;

        app.add_option("--experiment,-e", experiment, "spacing | count | azimuth | single")
            ->capture_default_str();
        app.add_option("--grid", grid,
                       "Sweep grid: 'a,b,c' or 'start:step:stop' (spacing: d/lambda; count: N; azimuth: degrees)");
        app.add_option("--frequency", sc.frequency, "Carrier frequency [Hz]")->capture_default_str();
        app.add_option("--bandwidth", cp.bandwidth, "Noise bandwidth B_W [Hz]")->capture_default_str();
        app.add_option("--z-g", z_g, "Generator impedance Z_G [Ohm], e.g. 186-31.6j")->capture_default_str();
        app.add_option("--z-l", z_l, "Load impedance Z_L [Ohm]")->capture_default_str();
        app.add_option("--z-a", z_a, "Receive antenna self-impedance Z_A [Ohm]")->capture_default_str();
        app.add_option("--z-at", z_at, "Transmit antenna impedance Z_AT [Ohm] (default: Z_A)");
        app.add_option("--temperature", cp.antenna_temperature, "Antenna noise temperature T_A [K]")
            ->capture_default_str();
        app.add_option("--r-n", cp.noise_resistance, "LNA noise resistance R_N [Ohm]")->capture_default_str();
        app.add_option("--rho", rho, "LNA noise correlation coefficient, |rho| <= 1")->capture_default_str();
        app.add_option("--c-norm", cp.normalization, "Normalization constant c [V^2]")->capture_default_str();
        app.add_option("--elements,-N", elements, "Number of receive antennas N (default: 128)");
        app.add_option("--aperture", aperture, "Array aperture D [m, or multiples of lambda with suffix 'lam'] "
                                               "(default: 0.5)");
        app.add_option("--spacing", spacing, "Element spacing d [m, or 'lam' suffix]; sets D = (N-1) d");
        app.add_option("--user-range", sc.user_range, "User distance r [m]")->capture_default_str();
        app.add_option("--user-azimuth", azimuth,
                       "User azimuth [deg], measured from broadside (0) towards the array axis (90 = end-fire)")
            ->capture_default_str();
        app.add_option("--scatterers,-L", sc.scatterer_count, "Number of scatterers L")->capture_default_str();
        app.add_option("--cluster-radius", sc.cluster_radius, "Scatterer circle radius r_c [m]")
            ->capture_default_str();
        app.add_option("--order,-M", sc.constellation_order, "Unipolar PAM order M")->capture_default_str();
        app.add_option("--snr-db", sc.snr_db, "Average SNR [dB]")->capture_default_str();
        app.add_option("--coupling", coupling, "Receive array model: dipole | uncoupled")->capture_default_str();
        app.add_option("--mm-gain", mm_gain,
                       "Mismatched coherent channel scale: complex (g_u) | real (sqrt(gamma1))")
            ->capture_default_str();
        app.add_option("--detectors", detectors,
                       "Comma list from NC-M,C-M,NC-MM,C-MM,NC-U,C-U (default: all six)");
        app.add_option("--trials", cfg.trials, "Monte Carlo trials per sweep point")->capture_default_str();
        app.add_option("--seed", cfg.seed, "Master seed for symbols, fading and noise")->capture_default_str();
        app.add_option("--scene-seed", scene_seed, "Seed of the scatterer scene (default: --seed)");
        app.add_option("--workers", workers,
                       std::string("Worker threads (default: $") + workers_env + " or hardware concurrency)");
        app.add_option("--output,-o", cfg.output_dir, "Output directory")->capture_default_str();
        app.add_flag("--emit-coupling-curve", cfg.emit_coupling_curve,
                     "Also write coupling.csv: normalized Re mutual impedance vs d/lambda in [0.01, 3]");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &)
        {
            throw HelpRequested(app.help());
        }
        catch (const CLI::CallForVersion &)
        {
            throw HelpRequested(std::string(MCSIM_VERSION_STRING) + "\n");
        }
        catch (const CLI::ParseError &e)
        {
            throw ConfigError(e.what());
        }

        try
        {
            cfg.experiment = parse_sweep_kind(experiment);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(std::string("invalid value for --experiment: ") + e.what());
        }

        cp.generator_impedance = parse_complex(z_g);
        cp.load_impedance = parse_complex(z_l);
        cp.antenna_impedance = parse_complex(z_a);
        cp.transmit_antenna_impedance = z_at.empty() ? cp.antenna_impedance : parse_complex(z_at);
        cp.noise_correlation = parse_complex(rho);
        sc.user_azimuth_deg = azimuth;

        if (coupling == "dipole")
            sc.coupling = CouplingModel::HalfWaveDipole;
        else if (coupling == "uncoupled")
            sc.coupling = CouplingModel::Uncoupled;
        else
            throw ConfigError("invalid value for --coupling: must be dipole or uncoupled");

        if (mm_gain == "complex")
            sc.mismatch_gain = MismatchGain::Complex;
        else if (mm_gain == "real")
            sc.mismatch_gain = MismatchGain::Real;
        else
            throw ConfigError("invalid value for --mm-gain: must be complex or real");

        if (!detectors.empty())
        {
            cfg.detectors.clear();
            std::stringstream ss(detectors);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                try
                {
                    const Detector d = parse_detector(trim(item));
                    if (std::find(cfg.detectors.begin(), cfg.detectors.end(), d) == cfg.detectors.end())
                        cfg.detectors.push_back(d);
                }
                catch (const std::invalid_argument &e)
                {
                    throw ConfigError(std::string("invalid value for --detectors: ") + e.what());
                }
            }
        }

        sc.element_count = elements.value_or(128);
        require(sc.frequency > 0.0 && std::isfinite(sc.frequency), "frequency", "> 0 Hz");
        if (!spacing.empty() && !aperture.empty())
            throw ConfigError("--spacing and --aperture are mutually exclusive");
        if (!spacing.empty())
        {
            require(sc.element_count >= 2, "spacing", "used with N >= 2");
            const double d = parse_length(spacing, sc.wavelength());
            require(d > 0.0, "spacing", "> 0");
            sc.aperture = static_cast<double>(sc.element_count - 1) * d;
        }
        else if (!aperture.empty())
        {
            sc.aperture = parse_length(aperture, sc.wavelength());
        }

        cfg.grid = grid.empty() ? default_grid(cfg.experiment) : parse_grid(grid);
        cfg.scene_seed = scene_seed.value_or(cfg.seed);
        if (const CLI::Option *conf = app.get_config_ptr(); conf != nullptr && conf->count() > 0)
            cfg.config_file = conf->results().front();

        if (workers)
            cfg.workers = *workers;
        else if (const char *env = std::getenv(workers_env); env && *env)
        {
            const double w = parse_double(env, workers_env);
            require(w >= 1.0 && w == std::floor(w), workers_env, "a positive integer");
            cfg.workers = static_cast<unsigned>(w);
        }

        require(cp.generator_impedance.real() > 0.0, "z-g", "a complex impedance with Re > 0");
        require(std::isfinite(std::abs(cp.load_impedance)), "z-l", "finite");
        require(cp.antenna_impedance.real() > 0.0, "z-a", "a complex impedance with Re > 0");
        require(cp.transmit_antenna_impedance.real() > 0.0, "z-at", "a complex impedance with Re > 0");
        require(std::abs(cp.noise_correlation) <= 1.0, "rho", "a complex number with |rho| <= 1");
        require(cp.noise_resistance > 0.0, "r-n", "> 0 Ohm");
        require(cp.antenna_temperature > 0.0, "temperature", "> 0 K");
        require(cp.bandwidth > 0.0, "bandwidth", "> 0 Hz");
        require(cp.normalization > 0.0, "c-norm", "> 0 V^2");
        require(sc.element_count >= 1, "elements", ">= 1");
        require(sc.element_count == 1 || sc.aperture > 0.0, "aperture", "> 0 m");
        require(sc.user_range > 0.0, "user-range", "> 0 m");
        require(std::isfinite(sc.user_azimuth_deg), "user-azimuth", "finite");
        require(sc.scatterer_count >= 1, "scatterers", ">= 1");
        require(sc.cluster_radius > 0.0, "cluster-radius", "> 0 m");
        require(sc.cluster_radius < sc.user_range, "cluster-radius", "smaller than --user-range");
        require(sc.constellation_order >= 2, "order", ">= 2");
        require(std::isfinite(sc.snr_db), "snr-db", "finite");
        require(cfg.trials >= 1, "trials", ">= 1");
        require(!cfg.detectors.empty(), "detectors", "a nonempty list");
        require(!cfg.grid.empty(), "grid", "nonempty");
        for (double v : cfg.grid)
        {
            if (cfg.experiment == SweepKind::Spacing)
                require(v > 0.0, "grid", "positive d/lambda values");
            if (cfg.experiment == SweepKind::Count)
                require(v >= 2.0 && v == std::floor(v), "grid", "integer N >= 2");
        }
        if (cfg.experiment == SweepKind::Spacing)
            require(sc.element_count >= 2, "elements", ">= 2 for a spacing sweep");
        return cfg;
    }

    nlohmann::json config_to_json(const RunConfig &cfg)
    {
        const ScenarioConfig &sc = cfg.scenario;
        const CircuitParams &cp = sc.circuit;
        auto cplx = [](std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); };

        nlohmann::json dets = nlohmann::json::array();
        for (const auto &d : cfg.detectors)
            dets.push_back(label(d));

        nlohmann::json j;
        j["experiment"] = std::string(to_string(cfg.experiment));
        j["sweep_var"] = std::string(sweep_variable(cfg.experiment));
        j["grid"] = cfg.grid;
        j["frequency_hz"] = sc.frequency;
        j["bandwidth_hz"] = cp.bandwidth;
        j["generator_impedance_ohm"] = cplx(cp.generator_impedance);
        j["load_impedance_ohm"] = cplx(cp.load_impedance);
        j["antenna_impedance_ohm"] = cplx(cp.antenna_impedance);
        j["transmit_antenna_impedance_ohm"] = cplx(cp.transmit_antenna_impedance);
        j["antenna_temperature_k"] = cp.antenna_temperature;
        j["noise_resistance_ohm"] = cp.noise_resistance;
        j["noise_correlation"] = cplx(cp.noise_correlation);
        j["normalization_v2"] = cp.normalization;
        j["elements"] = sc.element_count;
        j["aperture_m"] = sc.aperture;
        j["user_range_m"] = sc.user_range;
        j["user_azimuth_deg"] = sc.user_azimuth_deg;
        j["scatterers"] = sc.scatterer_count;
        j["cluster_radius_m"] = sc.cluster_radius;
        j["constellation_order"] = sc.constellation_order;
        j["snr_db"] = sc.snr_db;
        j["coupling"] = std::string(to_string(sc.coupling));
        j["mm_gain"] = std::string(to_string(sc.mismatch_gain));
        j["detectors"] = dets;
        j["trials"] = cfg.trials;
        j["seed"] = cfg.seed;
        j["scene_seed"] = cfg.scene_seed;
        j["emit_coupling_curve"] = cfg.emit_coupling_curve;

        nlohmann::json derived;
        derived["wavelength_m"] = sc.wavelength();
        derived["current_noise_variance_a2"] = cp.current_noise_variance();
        derived["free_space_impedance_ohm"] = constants::free_space_impedance;
        derived["boltzmann_j_per_k"] = constants::boltzmann;
        derived["speed_of_light_m_per_s"] = constants::speed_of_light;
        if (sc.element_count >= 2)
            derived["spacing_m"] = sc.aperture / static_cast<double>(sc.element_count - 1);
        j["derived"] = derived;
        return j;
    }

    ExperimentSpec to_experiment(const RunConfig &cfg)
    {
        ExperimentSpec spec;
        spec.kind = cfg.experiment;
        spec.grid = cfg.grid;
        spec.base = cfg.scenario;
        spec.detectors = cfg.detectors;
        spec.trials = cfg.trials;
        spec.seed = cfg.seed;
        spec.scene_seed = cfg.scene_seed;
        spec.workers = cfg.workers;
        return spec;
    }
}
