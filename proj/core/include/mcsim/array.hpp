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

#ifndef MCSIM_ARRAY_HPP
#define MCSIM_ARRAY_HPP

#include "mcsim/constants.hpp"
#include "mcsim/linalg.hpp"
#include "mcsim/rng.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace mcsim
{
    struct Point2
    {
        double x = 0.0; // m, along the array axis
        double y = 0.0; // m, broadside
    };

    double distance(Point2 a, Point2 b);

    /// Polar position. The azimuth is measured from broadside (+y) towards the
    /// array axis (+x), so 0 is broadside and +-pi/2 is end-fire.
    struct PolarPosition
    {
        double radius = 0.0;  // m
        double azimuth = 0.0; // rad

        Point2 cartesian() const;
    };

    double degrees_to_radians(double deg);

    /// Side-by-side half-wavelength dipoles on the x axis at (n d, 0), n = 0..N-1.
    class ArrayGeometry
    {
    public:
        /// Spacing D/(N-1); needs N >= 2 and D > 0.
        static ArrayGeometry from_aperture(std::size_t count, double aperture, double wavelength);
        /// Aperture (N-1) d; N = 1 is allowed and then has no aperture.
        static ArrayGeometry from_spacing(std::size_t count, double spacing, double wavelength);

        std::size_t count() const { return count_; }
        double spacing() const { return spacing_; }
        double aperture() const { return spacing_ * static_cast<double>(count_ - 1); }
        double wavelength() const { return wavelength_; }
        double wavenumber() const;
        double dipole_length() const { return 0.5 * wavelength_; }
        Point2 position(std::size_t n) const;

    private:
        ArrayGeometry(std::size_t count, double spacing, double wavelength);

        std::size_t count_;
        double spacing_;
        double wavelength_;
    };

    enum class CouplingModel
    {
        HalfWaveDipole,
        Uncoupled,
    };

    std::string_view to_string(CouplingModel model);

    /// User position plus its scatterer cluster.
    struct Scene
    {
        PolarPosition user;
        double cluster_radius = 0.0;       // m
        std::vector<Point2> scatterers;    // s_i
        std::vector<double> powers;        // beta_i = E|alpha_i|^2

        std::size_t size() const { return scatterers.size(); }
        void validate() const;
    };

    /// Mutual impedance between dipoles p != q of the array (induced-EMF formula
    /// with sine/cosine integrals). Depends only on |p - q|.
    cdouble mutual_impedance(std::size_t p, std::size_t q, const ArrayGeometry &geometry,
                             double eta = constants::free_space_impedance);

    /// Mutual impedance between two parallel side-by-side half-wave dipoles at distance d.
    cdouble dipole_mutual_impedance(double separation, double wavelength,
                                    double eta = constants::free_space_impedance);

    /// Limit of Re(dipole_mutual_impedance) as the separation goes to zero; used to
    /// normalize the coupling curve to one.
    double dipole_resistance_limit(double eta = constants::free_space_impedance);

    /// Receive impedance matrix Z_R. The diagonal is self_impedance; off-diagonals
    /// come from mutual_impedance (HalfWaveDipole) or are zero (Uncoupled). Mutual
    /// resistances are scaled by Re(self_impedance) / dipole_resistance_limit(eta), which
    /// keeps Re(Z_R) positive semidefinite.
    CMatrix build_impedance_matrix(const ArrayGeometry &geometry, CouplingModel model, cdouble self_impedance,
                                   double eta = constants::free_space_impedance);

    /// Spherical-wave array response exp(-jk r_n)/(k r_n) for a source at point s.
    CVector array_response(Point2 source, const ArrayGeometry &geometry);

    /// Array responses of every scatterer as columns (N x L).
    CMatrix array_response_matrix(const Scene &scene, const ArrayGeometry &geometry);

    /// C_ART = R_r^2 sum_i beta_i a_i a_i^H.
    CMatrix inter_array_covariance(const Scene &scene, const ArrayGeometry &geometry, double radiation_resistance);

    /// L scatterers uniformly on the circle of radius r_c around the user, beta_i = 1/L.
    Scene sample_scatterers(PolarPosition user, double cluster_radius, std::size_t count, RandomStream &rng);

    /// One draw of z_ART = j R_r sum_i alpha_i a_i with alpha_i ~ CN(0, beta_i).
    CVector draw_inter_array_coupling(const Scene &scene, const ArrayGeometry &geometry, double radiation_resistance,
                                      RandomStream &rng);

    /// (A + A^H)/2, exactly Hermitian.
    CMatrix hermitian_part(const CMatrix &a);
}

#endif
