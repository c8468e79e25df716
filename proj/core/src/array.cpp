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

#include "mcsim/array.hpp"
#include "mcsim/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mcsim
{
    double distance(Point2 a, Point2 b)
    {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    Point2 PolarPosition::cartesian() const
    {
        return {radius * std::sin(azimuth), radius * std::cos(azimuth)};
    }

    double degrees_to_radians(double deg)
    {
        return deg * std::numbers::pi / 180.0;
    }

    ArrayGeometry::ArrayGeometry(std::size_t count, double spacing, double wavelength)
        : count_(count), spacing_(spacing), wavelength_(wavelength)
    {
        if (count == 0)
            throw std::invalid_argument("ArrayGeometry: element count must be at least 1");
        if (!(wavelength > 0.0) || !std::isfinite(wavelength))
            throw std::invalid_argument("ArrayGeometry: wavelength must be positive");
        if (count >= 2 && (!(spacing > 0.0) || !std::isfinite(spacing)))
            throw std::invalid_argument("ArrayGeometry: spacing must be positive, got " + std::to_string(spacing));
    }

    ArrayGeometry ArrayGeometry::from_aperture(std::size_t count, double aperture, double wavelength)
    {
        if (count < 2)
            throw std::invalid_argument("ArrayGeometry: an aperture needs at least 2 elements");
        if (!(aperture > 0.0))
            throw std::invalid_argument("ArrayGeometry: aperture must be positive");
        return ArrayGeometry(count, aperture / static_cast<double>(count - 1), wavelength);
    }

    ArrayGeometry ArrayGeometry::from_spacing(std::size_t count, double spacing, double wavelength)
    {
        return ArrayGeometry(count, count >= 2 ? spacing : 0.0, wavelength);
    }

    double ArrayGeometry::wavenumber() const
    {
        return 2.0 * std::numbers::pi / wavelength_;
    }

    Point2 ArrayGeometry::position(std::size_t n) const
    {
        return {static_cast<double>(n) * spacing_, 0.0};
    }

    std::string_view to_string(CouplingModel model)
    {
        switch (model)
        {
        case CouplingModel::HalfWaveDipole:
            return "dipole";
        case CouplingModel::Uncoupled:
            return "uncoupled";
        }
        return "?";
    }

    void Scene::validate() const
    {
        if (scatterers.empty())
            throw std::invalid_argument("Scene: at least one scatterer is required");
        if (powers.size() != scatterers.size())
            throw std::invalid_argument("Scene: one power per scatterer is required");
        for (double beta : powers)
            if (!(beta > 0.0))
                throw std::invalid_argument("Scene: scatterer powers must be positive");
    }

    cdouble dipole_mutual_impedance(double separation, double wavelength, double eta)
    {
        if (!(separation > 0.0))
            throw std::invalid_argument("dipole_mutual_impedance: separation must be positive");
        const double k = 2.0 * std::numbers::pi / wavelength;
        const double l = 0.5 * wavelength;
        const double hyp = std::hypot(separation, l);
        const double u = k * separation;
        const double v = k * (hyp + l);
        // hyp - l suffers cancellation for d << l; d^2/(hyp + l) is the same quantity.
        const double w = k * (separation * separation / (hyp + l));
        const double scale = eta / (4.0 * std::numbers::pi);
        const double re = scale * (2.0 * cosine_integral(u) - cosine_integral(v) - cosine_integral(w));
        const double im = -scale * (2.0 * sine_integral(u) - sine_integral(v) - sine_integral(w));
        return {re, im};
    }

    double dipole_resistance_limit(double eta)
    {
        const double two_pi = 2.0 * std::numbers::pi;
        return eta / (4.0 * std::numbers::pi) * (std::numbers::egamma + std::log(two_pi) - cosine_integral(two_pi));
    }

    cdouble mutual_impedance(std::size_t p, std::size_t q, const ArrayGeometry &geometry, double eta)
    {
        if (p == q)
            throw std::invalid_argument("mutual_impedance: p == q; self-impedance is assigned, not computed");
        if (p >= geometry.count() || q >= geometry.count())
            throw std::out_of_range("mutual_impedance: element index out of range");
        const auto lag = static_cast<double>(p > q ? p - q : q - p);
        return dipole_mutual_impedance(geometry.spacing() * lag, geometry.wavelength(), eta);
    }

    CMatrix build_impedance_matrix(const ArrayGeometry &geometry, CouplingModel model, cdouble self_impedance,
                                   double eta)
    {
        if (!(self_impedance.real() > 0.0))
            throw std::invalid_argument("build_impedance_matrix: radiation resistance must be positive");
        const auto n = static_cast<Eigen::Index>(geometry.count());
        CMatrix z = CMatrix::Zero(n, n);
        z.diagonal().setConstant(self_impedance);
        if (model == CouplingModel::Uncoupled)
            return z;

        // The resistance kernel is rescaled so that its zero-lag value equals the assigned R_r;
        // otherwise Re(Z_R) loses passivity at dense spacing whenever R_r < R_0.
        const double kernel_scale = self_impedance.real() / dipole_resistance_limit(eta);

        // Toeplitz: one evaluation per lag.
        std::vector<cdouble> by_lag(geometry.count());
        for (std::size_t lag = 1; lag < geometry.count(); ++lag)
        {
            const cdouble m = mutual_impedance(0, lag, geometry, eta);
            by_lag[lag] = {kernel_scale * m.real(), m.imag()};
        }
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = 0; q < n; ++q)
                if (p != q)
                    z(p, q) = by_lag[static_cast<std::size_t>(std::abs(p - q))];
        return z;
    }

    CVector array_response(Point2 source, const ArrayGeometry &geometry)
    {
        const double k = geometry.wavenumber();
        const auto n = static_cast<Eigen::Index>(geometry.count());
        CVector a(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double r = distance(source, geometry.position(static_cast<std::size_t>(i)));
            if (!(r > 0.0))
                throw std::domain_error("array_response: source coincides with element " + std::to_string(i));
            a(i) = std::polar(1.0 / (k * r), -k * r);
        }
        return a;
    }

    CMatrix array_response_matrix(const Scene &scene, const ArrayGeometry &geometry)
    {
        CMatrix a(static_cast<Eigen::Index>(geometry.count()), static_cast<Eigen::Index>(scene.size()));
        for (std::size_t i = 0; i < scene.size(); ++i)
            a.col(static_cast<Eigen::Index>(i)) = array_response(scene.scatterers[i], geometry);
        return a;
    }

    CMatrix hermitian_part(const CMatrix &a)
    {
        return 0.5 * (a + a.adjoint());
    }

    CMatrix inter_array_covariance(const Scene &scene, const ArrayGeometry &geometry, double radiation_resistance)
    {
        scene.validate();
        const CMatrix a = array_response_matrix(scene, geometry);
        const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(scene.powers.data(),
                                                                       static_cast<Eigen::Index>(scene.powers.size()));
        const CMatrix weighted = a * beta.cast<cdouble>().asDiagonal();
        return hermitian_part(radiation_resistance * radiation_resistance * (weighted * a.adjoint()));
    }

    Scene sample_scatterers(PolarPosition user, double cluster_radius, std::size_t count, RandomStream &rng)
    {
        if (!(cluster_radius > 0.0))
            throw std::invalid_argument("sample_scatterers: cluster radius must be positive");
        if (count == 0)
            throw std::invalid_argument("sample_scatterers: at least one scatterer is required");

        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        const Point2 centre = user.cartesian();
        Scene scene;
        scene.user = user;
        scene.cluster_radius = cluster_radius;
        scene.scatterers.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            const double phi = angle(rng);
            scene.scatterers.push_back({centre.x + cluster_radius * std::cos(phi),
                                        centre.y + cluster_radius * std::sin(phi)});
        }
        scene.powers.assign(count, 1.0 / static_cast<double>(count));
        return scene;
    }

    CVector draw_inter_array_coupling(const Scene &scene, const ArrayGeometry &geometry, double radiation_resistance,
                                      RandomStream &rng)
    {
        scene.validate();
        CVector z = CVector::Zero(static_cast<Eigen::Index>(geometry.count()));
        for (std::size_t i = 0; i < scene.size(); ++i)
        {
            const cdouble alpha = std::sqrt(scene.powers[i]) * complex_normal(rng);
            z += alpha * array_response(scene.scatterers[i], geometry);
        }
        return cdouble(0.0, radiation_resistance) * z;
    }
}
