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

#ifndef MCSIM_RNG_HPP
#define MCSIM_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace mcsim
{
    using RandomStream = std::mt19937_64;

    /// splitmix64 finalizer
    constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Deterministic split: seed of the sub-stream addressed by (a, b, c) under a master seed.
    constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0)
    {
        std::uint64_t s = mix64(master);
        s = mix64(s ^ a);
        s = mix64(s ^ (b + 0x632be59bd9b4e019ULL));
        s = mix64(s ^ (c + 0x8cb92ba72f3d8dd7ULL));
        return s;
    }

    /// Circularly-symmetric complex Gaussian with unit variance.
    inline std::complex<double> complex_normal(RandomStream &rng)
    {
        std::normal_distribution<double> half(0.0, 0.70710678118654752440);
        const double re = half(rng);
        const double im = half(rng);
        return {re, im};
    }
}

#endif
