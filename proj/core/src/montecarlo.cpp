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

#include "mcsim/montecarlo.hpp"
#include "mcsim/constants.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace mcsim
{
    namespace
    {
        constexpr std::uint64_t scene_stream_tag = 0x5ce4e5eedULL;
        constexpr double wilson_z = 1.959963984540054;
    }

    std::string_view to_string(MismatchGain gain)
    {
        return gain == MismatchGain::Complex ? "complex" : "real";
    }

    double ScenarioConfig::wavelength() const
    {
        return constants::speed_of_light / frequency;
    }

    ArrayGeometry ScenarioConfig::geometry() const
    {
        if (element_count < 2)
            return ArrayGeometry::from_spacing(element_count, 0.0, wavelength());
        return ArrayGeometry::from_aperture(element_count, aperture, wavelength());
    }

    PolarPosition ScenarioConfig::user() const
    {
        return {user_range, degrees_to_radians(user_azimuth_deg)};
    }

    SerEstimate SerEstimate::from_counts(std::uint64_t errors, std::uint64_t trials)
    {
        if (trials == 0)
            throw std::invalid_argument("SerEstimate: trials must be positive");
        if (errors > trials)
            throw std::invalid_argument("SerEstimate: errors exceed trials");
        SerEstimate est;
        est.errors = errors;
        est.trials = trials;
        const double n = static_cast<double>(trials);
        const double p = static_cast<double>(errors) / n;
        est.ser = p;
        const double z2 = wilson_z * wilson_z;
        const double denom = 1.0 + z2 / n;
        const double centre = (p + z2 / (2.0 * n)) / denom;
        const double half = wilson_z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
        est.ci95_low = std::min(p, std::max(0.0, centre - half));
        est.ci95_high = std::max(p, std::min(1.0, centre + half));
        return est;
    }

    double calibrate_power(const CMatrix &channel_cov, const CMatrix &noise_cov, double snr_db)
    {
        const double tr_h = channel_cov.trace().real();
        const double tr_z = noise_cov.trace().real();
        if (!(tr_h > 0.0))
            throw std::domain_error("calibrate_power: channel covariance has zero trace");
        if (!(tr_z > 0.0))
            throw std::domain_error("calibrate_power: noise covariance has zero trace");
        return std::pow(10.0, snr_db / 10.0) * tr_z / tr_h;
    }

    TrialDraw draw_trial(RandomStream &rng, std::size_t order, std::size_t scatterers, std::size_t elements)
    {
        TrialDraw draw;
        std::uniform_int_distribution<std::size_t> symbol(0, order - 1);
        draw.symbol = symbol(rng);
        draw.gains.resize(static_cast<Eigen::Index>(scatterers));
        for (auto &g : draw.gains)
            g = complex_normal(rng);
        draw.noise.resize(static_cast<Eigen::Index>(elements));
        for (auto &w : draw.noise)
            w = complex_normal(rng);
        return draw;
    }

    SimulationPoint::SimulationPoint(const ScenarioConfig &config, Scene scene)
        : config_(config), geometry_(config.geometry()), scene_(std::move(scene))
    {
        config_.circuit.validate();
        scene_.validate();
        const double r_r = config_.circuit.radiation_resistance();

        const CMatrix responses = array_response_matrix(scene_, geometry_);
        Eigen::VectorXd amplitude(static_cast<Eigen::Index>(scene_.size()));
        for (std::size_t i = 0; i < scene_.size(); ++i)
            amplitude(static_cast<Eigen::Index>(i)) = std::sqrt(scene_.powers[i]);
        coupling_basis_ = cdouble(0.0, r_r) * (responses * amplitude.cast<cdouble>().asDiagonal());
        c_art_ = inter_array_covariance(scene_, geometry_, r_r);

        coupled_ = build_model(config_.coupling);
        uncoupled_ = build_model(CouplingModel::Uncoupled);

        const UncoupledFactors &f = coupled_.channel.uncoupled;
        mismatch_gain_ = config_.mismatch_gain == MismatchGain::Complex ? f.gain : cdouble(std::sqrt(f.gamma1), 0.0);
        const auto n = static_cast<Eigen::Index>(geometry_.count());
        mismatch_channel_cov_ = f.gamma1 * c_art_;
        mismatch_noise_cov_ = f.gamma2 * CMatrix::Identity(n, n);
        mismatch_noise_ = CovarianceFactor(mismatch_noise_cov_, "mismatched noise covariance");
        mismatch_nc_ = build_nc_cache(mismatch_channel_cov_, mismatch_noise_cov_, coupled_.constellation);
    }

    GenerationModel SimulationPoint::build_model(CouplingModel model) const
    {
        GenerationModel g;
        g.channel = build_multiport_channel(geometry_, model, config_.circuit, c_art_);
        g.channel_basis = channel_gain(config_.circuit) * (g.channel.q * coupling_basis_);
        g.noise = CovarianceFactor(g.channel.noise_cov, "noise covariance");
        const double power = calibrate_power(g.channel.channel_cov, g.channel.noise_cov, config_.snr_db);
        g.constellation = build_constellation(config_.constellation_order, power);
        g.nc = build_nc_cache(g.channel.channel_cov, g.channel.noise_cov, g.constellation);
        return g;
    }

    Observation SimulationPoint::observe(const TrialDraw &draw, bool uncoupled_generation) const
    {
        const GenerationModel &model = uncoupled_generation ? uncoupled_ : coupled_;
        Observation obs;
        obs.symbol = draw.symbol;
        obs.z_art = coupling_basis_ * draw.gains;
        obs.channel = model.channel_basis * draw.gains;
        obs.y = model.constellation.points[draw.symbol] * obs.channel + model.noise.colour(draw.noise);
        return obs;
    }

    CVector SimulationPoint::detector_channel(const Observation &obs, DetectorMode mode) const
    {
        if (mode == DetectorMode::Mismatched)
            return mismatch_gain_ * obs.z_art;
        return obs.channel;
    }

    const CovarianceFactor &SimulationPoint::detector_noise(DetectorMode mode) const
    {
        switch (mode)
        {
        case DetectorMode::Matched:
            return coupled_.noise;
        case DetectorMode::Mismatched:
            return mismatch_noise_;
        case DetectorMode::Uncoupled:
            break;
        }
        return uncoupled_.noise;
    }

    const NcCache &SimulationPoint::detector_cache(DetectorMode mode) const
    {
        switch (mode)
        {
        case DetectorMode::Matched:
            return coupled_.nc;
        case DetectorMode::Mismatched:
            return mismatch_nc_;
        case DetectorMode::Uncoupled:
            break;
        }
        return uncoupled_.nc;
    }

    const Constellation &SimulationPoint::constellation(DetectorMode mode) const
    {
        return mode == DetectorMode::Uncoupled ? uncoupled_.constellation : coupled_.constellation;
    }

    std::size_t SimulationPoint::decide(const Observation &obs, Detector det) const
    {
        if (det.kind == DetectorKind::Noncoherent)
            return nc_detect(obs.y, detector_cache(det.mode));
        try
        {
            return mrc_detect(obs.y, detector_channel(obs, det.mode), detector_noise(det.mode),
                              constellation(det.mode));
        }
        catch (const DegenerateChannelError &)
        {
            return nearest_point(0.0, constellation(det.mode));
        }
    }

    unsigned resolve_workers(unsigned requested)
    {
        if (requested > 0)
            return requested;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    std::vector<SerEstimate> estimate_ser(const SimulationPoint &point, std::span<const Detector> detectors,
                                          std::uint64_t trials, std::uint64_t master_seed,
                                          std::uint64_t point_index, unsigned workers)
    {
        if (trials == 0)
            throw std::invalid_argument("estimate_ser: trials must be positive");
        if (detectors.empty())
            throw std::invalid_argument("estimate_ser: no detectors requested");

        const bool need_coupled = std::any_of(detectors.begin(), detectors.end(),
                                              [](Detector d) { return d.mode != DetectorMode::Uncoupled; });
        const bool need_uncoupled = std::any_of(detectors.begin(), detectors.end(),
                                                [](Detector d) { return d.mode == DetectorMode::Uncoupled; });
        const std::size_t order = point.config().constellation_order;
        const std::size_t scatterers = point.scene().size();
        const std::size_t elements = point.geometry().count();

        auto run_range = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t> &errors) {
            for (std::uint64_t t = begin; t < end; ++t)
            {
                RandomStream rng(derive_seed(master_seed, point_index, t));
                const TrialDraw draw = draw_trial(rng, order, scatterers, elements);
                Observation coupled_obs;
                Observation uncoupled_obs;
                if (need_coupled)
                    coupled_obs = point.observe(draw, false);
                if (need_uncoupled)
                    uncoupled_obs = point.observe(draw, true);
                for (std::size_t k = 0; k < detectors.size(); ++k)
                {
                    const Detector det = detectors[k];
                    const Observation &obs = det.mode == DetectorMode::Uncoupled ? uncoupled_obs : coupled_obs;
                    if (point.decide(obs, det) != draw.symbol)
                        ++errors[k];
                }
            }
        };

        const auto n_workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(resolve_workers(workers), trials));
        std::vector<std::vector<std::uint64_t>> partial(n_workers, std::vector<std::uint64_t>(detectors.size(), 0));
        if (n_workers == 1)
        {
            run_range(0, trials, partial[0]);
        }
        else
        {
            std::vector<std::exception_ptr> failures(n_workers);
            std::vector<std::thread> pool;
            pool.reserve(n_workers);
            for (std::uint64_t w = 0; w < n_workers; ++w)
            {
                const std::uint64_t begin = trials * w / n_workers;
                const std::uint64_t end = trials * (w + 1) / n_workers;
                pool.emplace_back([&, w, begin, end] {
                    try
                    {
                        run_range(begin, end, partial[w]);
                    }
                    catch (...)
                    {
                        failures[w] = std::current_exception();
                    }
                });
            }
            for (auto &th : pool)
                th.join();
            for (const auto &f : failures)
                if (f)
                    std::rethrow_exception(f);
        }

        std::vector<SerEstimate> out;
        out.reserve(detectors.size());
        for (std::size_t k = 0; k < detectors.size(); ++k)
        {
            std::uint64_t errors = 0;
            for (const auto &p : partial)
                errors += p[k];
            out.push_back(SerEstimate::from_counts(errors, trials));
        }
        return out;
    }

    SerEstimate estimate_ser(const SimulationPoint &point, Detector detector, std::uint64_t trials,
                             std::uint64_t master_seed, std::uint64_t point_index, unsigned workers)
    {
        const Detector one[] = {detector};
        return estimate_ser(point, one, trials, master_seed, point_index, workers).front();
    }

    std::string_view to_string(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::Spacing:
            return "spacing";
        case SweepKind::Count:
            return "count";
        case SweepKind::Azimuth:
            return "azimuth";
        case SweepKind::Single:
            return "single";
        }
        return "?";
    }

    std::string_view sweep_variable(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::Spacing:
            return "spacing_lambda";
        case SweepKind::Count:
            return "elements";
        case SweepKind::Azimuth:
            return "azimuth_deg";
        case SweepKind::Single:
            return "none";
        }
        return "?";
    }

    SweepKind parse_sweep_kind(std::string_view text)
    {
        for (SweepKind k : {SweepKind::Spacing, SweepKind::Count, SweepKind::Azimuth, SweepKind::Single})
            if (to_string(k) == text)
                return k;
        throw std::invalid_argument("unknown experiment '" + std::string(text) +
                                    "' (expected spacing, count, azimuth or single)");
    }

    void ExperimentSpec::validate() const
    {
        if (grid.empty())
            throw std::invalid_argument("ExperimentSpec: sweep grid is empty");
        if (trials == 0)
            throw std::invalid_argument("ExperimentSpec: trials must be at least 1");
        if (detectors.empty())
            throw std::invalid_argument("ExperimentSpec: no detectors selected");
        base.circuit.validate();
    }

    ScenarioConfig apply_sweep_value(SweepKind kind, const ScenarioConfig &base, double value)
    {
        ScenarioConfig cfg = base;
        switch (kind)
        {
        case SweepKind::Spacing:
            if (!(value > 0.0))
                throw std::invalid_argument("spacing sweep: d/lambda must be positive");
            if (cfg.element_count < 2)
                throw std::invalid_argument("spacing sweep: needs at least 2 elements");
            cfg.aperture = static_cast<double>(cfg.element_count - 1) * value * cfg.wavelength();
            break;
        case SweepKind::Count:
            if (!(value >= 2.0) || value != std::floor(value))
                throw std::invalid_argument("count sweep: N must be an integer >= 2");
            cfg.element_count = static_cast<std::size_t>(value);
            break;
        case SweepKind::Azimuth:
            cfg.user_azimuth_deg = value;
            break;
        case SweepKind::Single:
            break;
        }
        return cfg;
    }

    Scene draw_scene(const ScenarioConfig &config, std::uint64_t scene_seed, std::uint64_t point_index)
    {
        RandomStream rng(derive_seed(scene_seed, point_index, scene_stream_tag));
        return sample_scatterers(config.user(), config.cluster_radius, config.scatterer_count, rng);
    }

    SweepResult run_sweep(const ExperimentSpec &spec)
    {
        spec.validate();
        SweepResult result;
        result.kind = spec.kind;
        for (std::size_t i = 0; i < spec.grid.size(); ++i)
        {
            const double value = spec.grid[i];
            try
            {
                const ScenarioConfig cfg = apply_sweep_value(spec.kind, spec.base, value);
                const SimulationPoint point(cfg, draw_scene(cfg, spec.scene_seed, i));
                const auto estimates = estimate_ser(point, spec.detectors, spec.trials, spec.seed, i, spec.workers);
                for (std::size_t k = 0; k < estimates.size(); ++k)
                    result.rows.push_back({value, spec.detectors[k], estimates[k]});
            }
            catch (const std::exception &e)
            {
                result.failures.push_back({i, value, std::string(to_string(spec.kind)) + " point " +
                                                         std::to_string(i) + ": " + e.what()});
            }
        }
        return result;
    }
}
