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

#ifndef MCSIM_MONTECARLO_HPP
#define MCSIM_MONTECARLO_HPP

#include "mcsim/array.hpp"
#include "mcsim/detect.hpp"
#include "mcsim/multiport.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcsim
{
    /// How the mismatched coherent detector scales z_ART into its channel guess.
    enum class MismatchGain
    {
        Complex, // g_u, keeps the phase of the uncoupled Q
        Real,    // sqrt(gamma1)
    };

    std::string_view to_string(MismatchGain gain);

    /// Everything that defines one simulated configuration, except the scene draw.
    struct ScenarioConfig
    {
        CircuitParams circuit;
        double frequency = 30e9;              // Hz
        std::size_t element_count = 128;      // N
        double aperture = 0.5;                // D, m
        CouplingModel coupling = CouplingModel::HalfWaveDipole;
        double user_range = 25.0;             // m
        double user_azimuth_deg = -30.0;      // from broadside, end-fire at 90
        std::size_t scatterer_count = 20;     // L
        double cluster_radius = 3.0;          // m
        std::size_t constellation_order = 4;  // M
        double snr_db = 5.0;
        MismatchGain mismatch_gain = MismatchGain::Complex;

        double wavelength() const;
        ArrayGeometry geometry() const;
        PolarPosition user() const;
    };

    /// Wilson score interval for a binomial proportion, z = 1.96.
    struct SerEstimate
    {
        std::uint64_t errors = 0;
        std::uint64_t trials = 0;
        double ser = 0.0;
        double ci95_low = 0.0;
        double ci95_high = 0.0;

        static SerEstimate from_counts(std::uint64_t errors, std::uint64_t trials);
    };

    /// E|x|^2 = 10^(snr/10) tr(C_z) / tr(C_h); throws std::domain_error on a zero trace.
    double calibrate_power(const CMatrix &channel_cov, const CMatrix &noise_cov, double snr_db);

    /// Random inputs of one trial: symbol index, normalized scatterer gains xi ~ CN(0, I_L)
    /// (alpha_i = sqrt(beta_i) xi_i) and white noise w ~ CN(0, I_N).
    struct TrialDraw
    {
        std::size_t symbol = 0;
        CVector gains;
        CVector noise;
    };

    TrialDraw draw_trial(RandomStream &rng, std::size_t order, std::size_t scatterers, std::size_t elements);

    /// Signal generation model: either the configured coupling or the uncoupled reference.
    struct GenerationModel
    {
        MultiportChannel channel;
        CMatrix channel_basis; // h = channel_basis * xi
        CovarianceFactor noise;
        Constellation constellation;
        NcCache nc;
    };

    struct Observation
    {
        std::size_t symbol = 0;
        CVector z_art;
        CVector channel; // true h
        CVector y;
    };

    /// Model matrices for one sweep point, built once and shared read-only by all trials.
    class SimulationPoint
    {
    public:
        SimulationPoint(const ScenarioConfig &config, Scene scene);

        const ScenarioConfig &config() const { return config_; }
        const ArrayGeometry &geometry() const { return geometry_; }
        const Scene &scene() const { return scene_; }
        const CMatrix &inter_array_cov() const { return c_art_; }
        const GenerationModel &coupled() const { return coupled_; }
        const GenerationModel &uncoupled() const { return uncoupled_; }

        /// Observation y = h x + z under the configured model, or the uncoupled one.
        Observation observe(const TrialDraw &draw, bool uncoupled_generation) const;

        /// Inputs the given detector mode sees.
        CVector detector_channel(const Observation &obs, DetectorMode mode) const;
        const CovarianceFactor &detector_noise(DetectorMode mode) const;
        const NcCache &detector_cache(DetectorMode mode) const;
        const Constellation &constellation(DetectorMode mode) const;
        /// Mismatched model scalars: h_hat = mismatch_gain() z_ART, C_h = gamma1 C_ART, C_z = gamma2 I.
        cdouble mismatch_gain() const { return mismatch_gain_; }
        const CMatrix &mismatch_channel_cov() const { return mismatch_channel_cov_; }
        const CMatrix &mismatch_noise_cov() const { return mismatch_noise_cov_; }

        /// Decision of one detector. A degenerate MRC channel yields statistic 0, i.e. index 0.
        std::size_t decide(const Observation &obs, Detector det) const;

    private:
        GenerationModel build_model(CouplingModel model) const;

        ScenarioConfig config_;
        ArrayGeometry geometry_;
        Scene scene_;
        CMatrix coupling_basis_; // z_ART = coupling_basis * xi
        CMatrix c_art_;
        GenerationModel coupled_;
        GenerationModel uncoupled_;
        cdouble mismatch_gain_;
        CMatrix mismatch_channel_cov_;
        CMatrix mismatch_noise_cov_;
        CovarianceFactor mismatch_noise_;
        NcCache mismatch_nc_;
    };

    /// Worker count: requested if nonzero, else hardware concurrency.
    unsigned resolve_workers(unsigned requested);

    /// SER of each detector over the same trial draws. Trial t of point point_index uses
    /// the stream derive_seed(master_seed, point_index, t); the result does not depend on workers.
    std::vector<SerEstimate> estimate_ser(const SimulationPoint &point, std::span<const Detector> detectors,
                                          std::uint64_t trials, std::uint64_t master_seed,
                                          std::uint64_t point_index = 0, unsigned workers = 0);

    SerEstimate estimate_ser(const SimulationPoint &point, Detector detector, std::uint64_t trials,
                             std::uint64_t master_seed, std::uint64_t point_index = 0, unsigned workers = 0);

    enum class SweepKind
    {
        Spacing, // grid in d / lambda, N fixed
        Count,   // grid in N, aperture fixed
        Azimuth, // grid in degrees
        Single,
    };

    std::string_view to_string(SweepKind kind);
    /// Column value for sweep_var in results.csv.
    std::string_view sweep_variable(SweepKind kind);
    SweepKind parse_sweep_kind(std::string_view text);

    struct ExperimentSpec
    {
        SweepKind kind = SweepKind::Single;
        std::vector<double> grid{0.0};
        ScenarioConfig base;
        std::vector<Detector> detectors = all_detectors();
        std::uint64_t trials = 100000;
        std::uint64_t seed = 1;
        std::uint64_t scene_seed = 1;
        unsigned workers = 0;

        void validate() const;
    };

    /// Scenario for one grid value of a sweep.
    ScenarioConfig apply_sweep_value(SweepKind kind, const ScenarioConfig &base, double value);

    /// The scene of sweep point point_index, drawn from derive_seed(scene_seed, point_index, ...).
    Scene draw_scene(const ScenarioConfig &config, std::uint64_t scene_seed, std::uint64_t point_index);

    struct SweepRow
    {
        double value = 0.0;
        Detector detector{};
        SerEstimate estimate;
    };

    struct PointFailure
    {
        std::size_t index = 0;
        double value = 0.0;
        std::string message;
    };

    struct SweepResult
    {
        SweepKind kind = SweepKind::Single;
        std::vector<SweepRow> rows;        // grid-major, detectors in spec order
        std::vector<PointFailure> failures;
    };

    SweepResult run_sweep(const ExperimentSpec &spec);
}

#endif
