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
#include "oracle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using mcsim::cosine_integral;
using mcsim::sine_integral;

TEST_CASE("Si and Ci against reference values")
{
    struct Ref
    {
        double x, si, ci;
    };
    const Ref refs[] = {
        {std::numbers::pi, 1.8519370519824662, 0.073667912046425486},
        {1.0, 0.94608307036718301, 0.33740392290096813},
        {4.0, 1.7582031389490531, -0.14098169788693041},
        {10.0, 1.658347594218874, -0.045456433004455373},
        {100.0, 1.5622254668890563, -0.0051488251426104921},
        {1000.0, 1.5702331219687712, 0.00082631551109068228},
        {1e4, 1.5708915453859619, -3.0551916724485213e-5},
    };
    for (const auto &r : refs)
    {
        CAPTURE(r.x);
        CHECK_THAT(sine_integral(r.x), WithinAbs(r.si, 2e-15));
        CHECK_THAT(cosine_integral(r.x), WithinAbs(r.ci, 2e-15));
    }
}

TEST_CASE("Si and Ci match the quadrature oracle on a log grid")
{
    double worst_si = 0.0, worst_ci = 0.0;
    for (int i = 0; i < 200; ++i)
    {
        const double x = std::pow(10.0, -3.0 + 7.0 * i / 199.0);
        worst_si = std::max(worst_si, std::abs(sine_integral(x) - oracle::si(x)));
        worst_ci = std::max(worst_ci, std::abs(cosine_integral(x) - oracle::ci(x)));
    }
    CHECK(worst_si <= 1e-10);
    CHECK(worst_ci <= 1e-10);
}

TEST_CASE("Small-argument behaviour")
{
    CHECK(sine_integral(0.0) == 0.0);
    for (double x : {1e-300, 1e-12, 1e-6})
    {
        CHECK_THAT(sine_integral(x), WithinRel(x, 1e-10));
        CHECK_THAT(cosine_integral(x), WithinRel(std::numbers::egamma + std::log(x), 1e-10));
    }
}

TEST_CASE("Large-argument limits")
{
    for (double x : {1e5, 1e8, 1e12})
    {
        CHECK_THAT(sine_integral(x), WithinAbs(std::numbers::pi / 2 - std::cos(x) / x, 2.0 / (x * x)));
        CHECK_THAT(cosine_integral(x), WithinAbs(std::sin(x) / x, 2.0 / (x * x)));
    }
}

TEST_CASE("Derivatives are sin(x)/x and cos(x)/x")
{
    for (double x = 0.05; x < 60.0; x *= 1.37)
    {
        const double h = 1e-5 * x;
        const double dsi = (sine_integral(x + h) - sine_integral(x - h)) / (2 * h);
        const double dci = (cosine_integral(x + h) - cosine_integral(x - h)) / (2 * h);
        CAPTURE(x);
        CHECK_THAT(dsi, WithinAbs(std::sin(x) / x, 1e-6 / x + 1e-8));
        CHECK_THAT(dci, WithinAbs(std::cos(x) / x, 1e-6 / x + 1e-8));
    }
}

TEST_CASE("Continuity across the series / asymptotic switch")
{
    const double x = 4.0;
    const double lo = std::nextafter(x, 0.0), hi = std::nextafter(x, 10.0);
    CHECK_THAT(sine_integral(lo), WithinAbs(sine_integral(hi), 1e-14));
    CHECK_THAT(cosine_integral(lo), WithinAbs(cosine_integral(hi), 1e-14));
}

TEST_CASE("Domain errors")
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(sine_integral(-1.0), std::domain_error);
    CHECK_THROWS_AS(sine_integral(nan), std::domain_error);
    CHECK_THROWS_AS(sine_integral(inf), std::domain_error);
    CHECK_THROWS_AS(cosine_integral(0.0), std::domain_error);
    CHECK_THROWS_AS(cosine_integral(-2.0), std::domain_error);
    CHECK_THROWS_AS(cosine_integral(nan), std::domain_error);
}
