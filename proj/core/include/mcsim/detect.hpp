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

#ifndef MCSIM_DETECT_HPP
#define MCSIM_DETECT_HPP

#include "mcsim/linalg.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcsim
{
    /// Unipolar PAM {0, D, 2D, ..., (M-1)D} with a uniform prior.
    struct Constellation
    {
        std::vector<double> points;
        double spacing = 0.0;

        std::size_t size() const { return points.size(); }
        double mean_power() const;
    };

    /// Points scaled so that the mean symbol power equals mean_power.
    Constellation build_constellation(std::size_t order, double mean_power);

    /// Index of the constellation point nearest to s; ties go to the lower index.
    std::size_t nearest_point(double s, const Constellation &cst);

    enum class DetectorKind
    {
        Coherent,
        Noncoherent,
    };

    enum class DetectorMode
    {
        Matched,
        Mismatched,
        Uncoupled,
    };

    struct Detector
    {
        DetectorKind kind;
        DetectorMode mode;

        friend bool operator==(const Detector &, const Detector &) = default;
    };

    std::string_view to_string(DetectorKind kind); // "C" / "NC"
    std::string_view to_string(DetectorMode mode); // "M" / "MM" / "U"
    std::string label(Detector det);               // e.g. "C-MM"
    /// Parses "C-M", "NC-MM", "NC-U", ...; throws std::invalid_argument.
    Detector parse_detector(std::string_view text);
    /// The six detectors in legend order: NC-M, C-M, NC-MM, C-MM, NC-U, C-U.
    std::vector<Detector> all_detectors();

    class DegenerateChannelError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// MRC statistic Re[h^H C_z^{-1} y] / (h^H C_z^{-1} h) computed with whitening solves.
    /// Throws DegenerateChannelError when h^H C_z^{-1} h is zero.
    double mrc_statistic(const CVector &y, const CVector &h, const CovarianceFactor &noise);

    /// Coherent detection: nearest constellation point to the MRC statistic.
    std::size_t mrc_detect(const CVector &y, const CVector &h, const CovarianceFactor &noise,
                           const Constellation &cst);

    /// Per-symbol factors of C_{y|x} = |x|^2 C_h + C_z.
    struct NcCache
    {
        std::vector<CovarianceFactor> factors;

        std::size_t size() const { return factors.size(); }
        double log_det(std::size_t m) const { return factors[m].log_det(); }
    };

    NcCache build_nc_cache(const CMatrix &channel_cov, const CMatrix &noise_cov, const Constellation &cst);

    /// Metric y^H C_{y|x_m}^{-1} y + log|C_{y|x_m}|.
    double nc_metric(const CVector &y, const NcCache &cache, std::size_t m);

    /// Unconditional ML: argmin of nc_metric; ties go to the lower index.
    std::size_t nc_detect(const CVector &y, const NcCache &cache);
}

#endif
