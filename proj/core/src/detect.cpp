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

#include "mcsim/detect.hpp"

#include <cmath>
#include <limits>

namespace mcsim
{
    double Constellation::mean_power() const
    {
        double sum = 0.0;
        for (double x : points)
            sum += x * x;
        return points.empty() ? 0.0 : sum / static_cast<double>(points.size());
    }

    Constellation build_constellation(std::size_t order, double mean_power)
    {
        if (order < 2)
            throw std::invalid_argument("build_constellation: order must be at least 2");
        if (!(mean_power > 0.0) || !std::isfinite(mean_power))
            throw std::invalid_argument("build_constellation: mean power must be positive and finite");

        double sum_sq = 0.0;
        for (std::size_t m = 0; m < order; ++m)
            sum_sq += static_cast<double>(m * m);

        Constellation cst;
        cst.spacing = std::sqrt(mean_power * static_cast<double>(order) / sum_sq);
        cst.points.resize(order);
        for (std::size_t m = 0; m < order; ++m)
            cst.points[m] = static_cast<double>(m) * cst.spacing;
        return cst;
    }

    std::size_t nearest_point(double s, const Constellation &cst)
    {
        std::size_t best = 0;
        double best_dist = std::abs(s - cst.points[0]);
        for (std::size_t m = 1; m < cst.size(); ++m)
        {
            const double dist = std::abs(s - cst.points[m]);
            if (dist < best_dist)
            {
                best = m;
                best_dist = dist;
            }
        }
        return best;
    }

    std::string_view to_string(DetectorKind kind)
    {
        return kind == DetectorKind::Coherent ? "C" : "NC";
    }

    std::string_view to_string(DetectorMode mode)
    {
        switch (mode)
        {
        case DetectorMode::Matched:
            return "M";
        case DetectorMode::Mismatched:
            return "MM";
        case DetectorMode::Uncoupled:
            return "U";
        }
        return "?";
    }

    std::string label(Detector det)
    {
        return std::string(to_string(det.kind)) + "-" + std::string(to_string(det.mode));
    }

    Detector parse_detector(std::string_view text)
    {
        for (const Detector &d : all_detectors())
            if (label(d) == text)
                return d;
        throw std::invalid_argument("unknown detector '" + std::string(text) +
                                    "' (expected one of NC-M, C-M, NC-MM, C-MM, NC-U, C-U)");
    }

    std::vector<Detector> all_detectors()
    {
        using K = DetectorKind;
        using M = DetectorMode;
        return {{K::Noncoherent, M::Matched}, {K::Coherent, M::Matched},
                {K::Noncoherent, M::Mismatched}, {K::Coherent, M::Mismatched},
                {K::Noncoherent, M::Uncoupled}, {K::Coherent, M::Uncoupled}};
    }

    double mrc_statistic(const CVector &y, const CVector &h, const CovarianceFactor &noise)
    {
        const CVector wh = noise.whiten(h);
        const double energy = wh.squaredNorm();
        if (!(energy > 0.0))
            throw DegenerateChannelError("mrc_statistic: channel has zero whitened energy");
        const CVector wy = noise.whiten(y);
        return wh.dot(wy).real() / energy; // Eigen's dot conjugates the left operand
    }

    std::size_t mrc_detect(const CVector &y, const CVector &h, const CovarianceFactor &noise,
                           const Constellation &cst)
    {
        return nearest_point(mrc_statistic(y, h, noise), cst);
    }

    NcCache build_nc_cache(const CMatrix &channel_cov, const CMatrix &noise_cov, const Constellation &cst)
    {
        NcCache cache;
        cache.factors.reserve(cst.size());
        for (std::size_t m = 0; m < cst.size(); ++m)
        {
            const double power = cst.points[m] * cst.points[m];
            const CMatrix c = power == 0.0 ? noise_cov : CMatrix(power * channel_cov + noise_cov);
            cache.factors.emplace_back(c, "C_{y|x} for symbol " + std::to_string(m));
        }
        return cache;
    }

    double nc_metric(const CVector &y, const NcCache &cache, std::size_t m)
    {
        return cache.factors[m].quadratic_form(y) + cache.factors[m].log_det();
    }

    std::size_t nc_detect(const CVector &y, const NcCache &cache)
    {
        std::size_t best = 0;
        double best_metric = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < cache.size(); ++m)
        {
            const double metric = nc_metric(y, cache, m);
            if (metric < best_metric)
            {
                best = m;
                best_metric = metric;
            }
        }
        return best;
    }
}
