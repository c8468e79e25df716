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

#include "oracle.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace oracle
{
    namespace
    {
        using boost::math::quadrature::gauss_kronrod;

        template <class F>
        double panels(F f, double x)
        {
            const double width = 0.5 * boost::math::constants::pi<double>();
            const auto count = static_cast<long>(std::ceil(x / width));
            double sum = 0.0;
            double a = 0.0;
            for (long i = 0; i < count; ++i)
            {
                const double b = std::min(x, a + width);
                sum += gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0);
                a = b;
            }
            return sum;
        }
    }

    double si(double x)
    {
        auto f = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
        return panels(f, x);
    }

    double ci(double x)
    {
        auto f = [](double t) {
            const double s = std::sin(0.5 * t);
            return t == 0.0 ? 0.0 : -2.0 * s * s / t;
        };
        return boost::math::constants::euler<double>() + std::log(x) + panels(f, x);
    }

    cdouble dipole_mutual(double d, double wavelength, double eta)
    {
        const double pi = boost::math::constants::pi<double>();
        const double k = 2.0 * pi / wavelength;
        const double l = 0.5 * wavelength;
        const double hyp = std::sqrt(d * d + l * l);
        const double u = k * d;
        const double v = k * (hyp + l);
        const double w = k * (hyp - l);
        const double c = eta / (4.0 * pi);
        return {c * (2.0 * ci(u) - ci(v) - ci(w)), -c * (2.0 * si(u) - si(v) - si(w))};
    }

    double gaussian_log_density(const Eigen::VectorXcd &y, const Eigen::MatrixXcd &cov)
    {
        const double pi = boost::math::constants::pi<double>();
        const cdouble det = cov.determinant();
        const Eigen::MatrixXcd inv = cov.inverse();
        const double quad = (y.adjoint() * inv * y)(0, 0).real();
        return -static_cast<double>(y.size()) * std::log(pi) - std::log(det.real()) - quad;
    }

    std::optional<std::size_t> ml_noncoherent(const Eigen::VectorXcd &y, const Eigen::MatrixXcd &channel_cov,
                                              const Eigen::MatrixXcd &noise_cov, const std::vector<double> &points,
                                              double tol)
    {
        std::vector<double> ll;
        for (double x : points)
            ll.push_back(gaussian_log_density(y, x * x * channel_cov + noise_cov));
        std::size_t best = 0;
        for (std::size_t m = 1; m < ll.size(); ++m)
            if (ll[m] > ll[best])
                best = m;
        for (std::size_t m = 0; m < ll.size(); ++m)
            if (m != best && std::abs(ll[m] - ll[best]) <= tol * (1.0 + std::abs(ll[best])))
                return std::nullopt;
        return best;
    }

    double whitened_statistic(const Eigen::VectorXcd &y, const Eigen::VectorXcd &h, const Eigen::MatrixXcd &noise_cov)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(noise_cov);
        const Eigen::MatrixXcd w =
            es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
        const Eigen::VectorXcd wh = w * h;
        const Eigen::VectorXcd wy = w * y;
        return (wh.adjoint() * wy)(0, 0).real() / wh.squaredNorm();
    }

    std::optional<std::size_t> nearest(double s, const std::vector<double> &points, double tol)
    {
        std::size_t best = 0;
        for (std::size_t m = 1; m < points.size(); ++m)
            if (std::abs(s - points[m]) < std::abs(s - points[best]))
                best = m;
        for (std::size_t m = 0; m < points.size(); ++m)
            if (m != best && std::abs(std::abs(s - points[m]) - std::abs(s - points[best])) <= tol * (1.0 + std::abs(s)))
                return std::nullopt;
        return best;
    }
}
