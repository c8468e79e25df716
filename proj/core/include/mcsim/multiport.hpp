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

#ifndef MCSIM_MULTIPORT_HPP
#define MCSIM_MULTIPORT_HPP

#include "mcsim/array.hpp"
#include "mcsim/linalg.hpp"

namespace mcsim
{
    /// Circuit parameters of the single-antenna transmitter and the N-port receiver.
    struct CircuitParams
    {
        cdouble generator_impedance{186.0, -31.6};        // Z_G = R_G + jX_G
        cdouble load_impedance{186.0, -31.6};             // Z_L
        cdouble transmit_antenna_impedance{73.0, 42.5};   // Z_AT
        cdouble antenna_impedance{73.0, 42.5};            // Z_A = R_r + jX_A
        double noise_resistance = 5.0;                    // R_N, Ohm
        cdouble noise_correlation{0.2730, 0.1793};        // rho
        double antenna_temperature = 290.0;               // T_A, K
        double bandwidth = 20e6;                          // B_W, Hz
        double normalization = 1.0;                       // c, V^2

        double radiation_resistance() const { return antenna_impedance.real(); }
        /// sigma_i^2 = 2 k_B B_W T_A / R_N
        double current_noise_variance() const;
        /// Throws std::invalid_argument naming the offending field.
        void validate() const;
    };

    /// 2x2 lossless transmitter matching network Z_MT.
    Eigen::Matrix2cd matching_network(const CircuitParams &params);

    /// Z_T = [Z_MT]11 - [Z_MT]12^2 / (Z_AT + [Z_MT]22); equals conj(Z_G) by construction.
    cdouble transmit_impedance(const CircuitParams &params);

    /// -j / (2 sqrt(R_G Re Z_AT)), the scalar in front of Q z_ART.
    cdouble channel_gain(const CircuitParams &params);

    /// Q = Z_L (Z_L I + Z_R)^{-1}. Throws NumericalError when the reciprocal
    /// condition estimate of Z_L I + Z_R is below 1e-12.
    CMatrix q_matrix(cdouble load_impedance, const CMatrix &impedance);

    /// h = -j/(2 sqrt(R_G Re Z_AT)) Q z_ART
    CVector channel_from_zart(const CVector &z_art, const CMatrix &q, const CircuitParams &params);

    /// C_z = Q (C_EN + U_LNA) Q^H / c. Throws NumericalError if the result is not PSD
    /// (minimum eigenvalue below -1e-10 trace/N).
    CMatrix noise_covariance(const CMatrix &q, const CMatrix &impedance, const CircuitParams &params);

    /// C_h = Q C_ART Q^H / (4 R_G Re Z_AT)
    CMatrix channel_covariance(const CMatrix &q, const CMatrix &c_art, const CircuitParams &params);

    /// Scalars of the uncoupled model Z_R = Z_A I.
    struct UncoupledFactors
    {
        double gamma1 = 0.0; // |g_u|^2, channel power scale
        double gamma2 = 0.0; // per-antenna noise power
        cdouble gain;        // g_u = -j Q_u / (2 sqrt(R_G Re Z_AT))
        cdouble q;           // Q_u = Z_L / (Z_L + Z_A)
    };

    UncoupledFactors gamma_factors(const CircuitParams &params);

    /// All per-configuration matrices of the multiport model.
    struct MultiportChannel
    {
        CMatrix impedance;   // Z_R
        CMatrix q;           // Q
        CMatrix noise_cov;   // C_z
        CMatrix channel_cov; // C_h
        UncoupledFactors uncoupled;
    };

    MultiportChannel build_multiport_channel(const ArrayGeometry &geometry, CouplingModel model,
                                             const CircuitParams &params, const CMatrix &c_art);
}

#endif
