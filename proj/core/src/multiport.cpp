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

#include "mcsim/multiport.hpp"
#include "mcsim/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcsim
{
    namespace
    {
        void require(bool ok, const std::string &field, const std::string &range)
        {
            if (!ok)
                throw std::invalid_argument("CircuitParams: " + field + " must satisfy " + range);
        }

        void require_psd(const CMatrix &c, const std::string &what)
        {
            const double trace = c.trace().real();
            const double floor = -1e-10 * std::abs(trace) / static_cast<double>(c.rows());
            const double min_ev = hermitian_eigenvalues(c).minCoeff();
            if (min_ev < floor)
                throw NumericalError(what + " is not positive semidefinite (min eigenvalue " +
                                     std::to_string(min_ev) + ", trace " + std::to_string(trace) + ")");
        }
    }

    double CircuitParams::current_noise_variance() const
    {
        return 2.0 * constants::boltzmann * bandwidth * antenna_temperature / noise_resistance;
    }

    void CircuitParams::validate() const
    {
        require(generator_impedance.real() > 0.0, "generator_impedance", "Re > 0");
        require(std::isfinite(std::abs(load_impedance)), "load_impedance", "finite");
        require(transmit_antenna_impedance.real() > 0.0, "transmit_antenna_impedance", "Re > 0");
        require(antenna_impedance.real() > 0.0, "antenna_impedance", "Re > 0");
        require(noise_resistance > 0.0, "noise_resistance", "> 0");
        require(std::abs(noise_correlation) <= 1.0, "noise_correlation", "|rho| <= 1");
        require(antenna_temperature > 0.0, "antenna_temperature", "> 0");
        require(bandwidth > 0.0, "bandwidth", "> 0");
        require(normalization > 0.0, "normalization", "> 0");
    }

    Eigen::Matrix2cd matching_network(const CircuitParams &params)
    {
        const double r_g = params.generator_impedance.real();
        const double r_at = params.transmit_antenna_impedance.real();
        if (!(r_g > 0.0) || !(r_at > 0.0))
            throw std::domain_error("matching_network: generator and transmit antenna resistances must be positive");
        const cdouble j(0.0, 1.0);
        const cdouble off = -j * std::sqrt(r_g * r_at);
        Eigen::Matrix2cd z;
        z << -j * params.generator_impedance.imag(), off,
            off, -j * params.transmit_antenna_impedance.imag();
        return z;
    }

    cdouble transmit_impedance(const CircuitParams &params)
    {
        const Eigen::Matrix2cd z = matching_network(params);
        return z(0, 0) - z(0, 1) * z(0, 1) / (params.transmit_antenna_impedance + z(1, 1));
    }

    cdouble channel_gain(const CircuitParams &params)
    {
        return cdouble(0.0, -1.0) /
               (2.0 * std::sqrt(params.generator_impedance.real() * params.transmit_antenna_impedance.real()));
    }

    CMatrix q_matrix(cdouble load_impedance, const CMatrix &impedance)
    {
        const auto n = impedance.rows();
        CMatrix loaded = impedance;
        loaded.diagonal().array() += load_impedance;
        Eigen::PartialPivLU<CMatrix> lu(loaded);
        const double rcond = lu.rcond();
        if (!(rcond >= 1e-12))
            throw NumericalError("q_matrix: Z_L I + Z_R is singular or ill-conditioned (rcond estimate " +
                                 std::to_string(rcond) + ")");
        return lu.solve(load_impedance * CMatrix::Identity(n, n));
    }

    CVector channel_from_zart(const CVector &z_art, const CMatrix &q, const CircuitParams &params)
    {
        return channel_gain(params) * (q * z_art);
    }

    CMatrix noise_covariance(const CMatrix &q, const CMatrix &impedance, const CircuitParams &params)
    {
        const auto n = impedance.rows();
        const double kb_t_b = constants::boltzmann * params.antenna_temperature * params.bandwidth;
        const CMatrix extrinsic = (4.0 * kb_t_b * impedance.real()).cast<cdouble>();

        const double sigma2 = params.current_noise_variance();
        const double r_n = params.noise_resistance;
        const CMatrix rho_z = (std::conj(params.noise_correlation) * impedance).real().cast<cdouble>();
        const CMatrix intrinsic =
            sigma2 * (r_n * r_n * CMatrix::Identity(n, n) + impedance * impedance.adjoint() - 2.0 * r_n * rho_z);

        CMatrix c = hermitian_part(q * (extrinsic + intrinsic) * q.adjoint() / params.normalization);
        require_psd(c, "noise_covariance");
        return c;
    }

    CMatrix channel_covariance(const CMatrix &q, const CMatrix &c_art, const CircuitParams &params)
    {
        const double scale =
            1.0 / (4.0 * params.generator_impedance.real() * params.transmit_antenna_impedance.real());
        return hermitian_part(scale * (q * c_art * q.adjoint()));
    }

    UncoupledFactors gamma_factors(const CircuitParams &params)
    {
        UncoupledFactors f;
        const cdouble z_a = params.antenna_impedance;
        f.q = params.load_impedance / (params.load_impedance + z_a);
        f.gain = channel_gain(params) * f.q;
        f.gamma1 = std::norm(f.gain);

        const double kb_t_b = constants::boltzmann * params.antenna_temperature * params.bandwidth;
        const double r_n = params.noise_resistance;
        const double intrinsic = params.current_noise_variance() *
                                 (r_n * r_n + std::norm(z_a) - 2.0 * r_n * (std::conj(params.noise_correlation) * z_a).real());
        f.gamma2 = std::norm(f.q) * (4.0 * kb_t_b * z_a.real() + intrinsic) / params.normalization;
        return f;
    }

    MultiportChannel build_multiport_channel(const ArrayGeometry &geometry, CouplingModel model,
                                             const CircuitParams &params, const CMatrix &c_art)
    {
        params.validate();
        MultiportChannel ch;
        ch.impedance = build_impedance_matrix(geometry, model, params.antenna_impedance);
        ch.q = q_matrix(params.load_impedance, ch.impedance);
        ch.noise_cov = noise_covariance(ch.q, ch.impedance, params);
        ch.channel_cov = channel_covariance(ch.q, c_art, params);
        ch.uncoupled = gamma_factors(params);
        return ch;
    }
}
