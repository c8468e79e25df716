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

#include "mcsim/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mcsim
{
    namespace
    {
        constexpr double series_limit = 4.0;

        // Auxiliary functions f(x) = int_0^inf sin(t)/(x+t) dt and g(x) = int_0^inf cos(t)/(x+t) dt
        // via Chebyshev-Pade approximants in y = 1/x^2, valid to ~1e-16 for x > 4.
        // Si(x) = pi/2 - f cos x - g sin x,  Ci(x) = f sin x - g cos x.
        struct Auxiliary
        {
            double f;
            double g;
        };

        Auxiliary auxiliary(double x)
        {
            const double y = 1.0 / (x * x);
            const double f =
                (1.0 +
                 y * (7.44437068161936700618e2 +
                      y * (1.96396372895146869801e5 +
                           y * (2.37750310125431834034e7 +
                                y * (1.43073403821274636888e9 +
                                     y * (4.33736238870432522765e10 +
                                          y * (6.40533830574022022911e11 +
                                               y * (4.20968180571076940208e12 +
                                                    y * (1.00795182980368574617e13 +
                                                         y * (4.94816688199951963482e12 +
                                                              y * (-4.94701168645415959931e11))))))))))) /
                (x * (1.0 +
                      y * (7.46437068161927678031e2 +
                           y * (1.97865247031583951450e5 +
                                y * (2.41535670165126845144e7 +
                                     y * (1.47478952192985464958e9 +
                                          y * (4.58595115847765779830e10 +
                                               y * (7.08501308149515401563e11 +
                                                    y * (5.06084464593475076774e12 +
                                                         y * (1.43468549171581016479e13 +
                                                              y * (1.11535493509914254097e13)))))))))));
            const double g =
                y *
                (1.0 +
                 y * (8.1359520115168615e2 +
                      y * (2.35239181626478200e5 +
                           y * (3.12557570795778731e7 +
                                y * (2.06297595146763354e9 +
                                     y * (6.83052205423625007e10 +
                                          y * (1.09049528450362786e12 +
                                               y * (7.57664583257834349e12 +
                                                    y * (1.81004487464664575e13 +
                                                         y * (6.43291613143049485e12 +
                                                              y * (-1.36517137670871689e12))))))))))) /
                (1.0 +
                 y * (8.19595201151451564e2 +
                      y * (2.40036752835578777e5 +
                           y * (3.26026661647090822e7 +
                                y * (2.23355543278099360e9 +
                                     y * (7.87465017341829930e10 +
                                          y * (1.39866710696414565e12 +
                                               y * (1.17164723371736605e13 +
                                                    y * (4.01839087307656620e13 +
                                                         y * (3.99653257887490811e13))))))))));
            return {f, g};
        }

        // Terms of both power series decay like x^(2n)/(2n)!; 40 terms is far past convergence for x <= 4.
        constexpr int max_series_terms = 40;

        double sine_series(double x)
        {
            const double x2 = x * x;
            double term = x; // (-1)^n x^(2n+1) / (2n+1)!
            double sum = x;
            for (int n = 1; n < max_series_terms; ++n)
            {
                term *= -x2 / static_cast<double>((2 * n) * (2 * n + 1));
                const double contribution = term / static_cast<double>(2 * n + 1);
                sum += contribution;
                if (std::abs(contribution) < 1e-17 * std::abs(sum))
                    break;
            }
            return sum;
        }

        double cosine_series(double x)
        {
            const double x2 = x * x;
            double term = 1.0; // (-1)^n x^(2n) / (2n)!
            double sum = 0.0;
            for (int n = 1; n < max_series_terms; ++n)
            {
                term *= -x2 / static_cast<double>((2 * n - 1) * (2 * n));
                const double contribution = term / static_cast<double>(2 * n);
                sum += contribution;
                if (std::abs(contribution) < 1e-17 * (std::abs(sum) + 1e-300))
                    break;
            }
            return std::numbers::egamma + std::log(x) + sum;
        }

        void require_finite(double x, const char *name)
        {
            if (!std::isfinite(x))
                throw std::domain_error(std::string(name) + ": argument must be finite");
        }
    }

    double sine_integral(double x)
    {
        require_finite(x, "sine_integral");
        if (x < 0.0)
            throw std::domain_error("sine_integral: argument must be nonnegative, got " + std::to_string(x));
        if (x <= series_limit)
            return sine_series(x);
        const auto [f, g] = auxiliary(x);
        return std::numbers::pi / 2.0 - f * std::cos(x) - g * std::sin(x);
    }

    double cosine_integral(double x)
    {
        require_finite(x, "cosine_integral");
        if (x <= 0.0)
            throw std::domain_error("cosine_integral: argument must be positive, got " + std::to_string(x));
        if (x <= series_limit)
            return cosine_series(x);
        const auto [f, g] = auxiliary(x);
        return f * std::sin(x) - g * std::cos(x);
    }
}
