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

#ifndef MCSIM_LINALG_HPP
#define MCSIM_LINALG_HPP

#include <Eigen/Dense>

#include <atomic>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcsim
{
    using cdouble = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RMatrix = Eigen::MatrixXd;

    /// Raised when a factorization or solve cannot be completed within the numeric policy.
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Relative jitter added to a covariance whose Cholesky factorization fails the first time.
    inline constexpr double covariance_jitter = 1e-12;

    /// Lower Cholesky factor of a Hermitian positive definite covariance.
    ///
    /// Factorization follows one policy everywhere: try plain Cholesky; on failure add
    /// covariance_jitter * (trace/N) * I, retry once and bump the global jitter counter;
    /// a second failure throws NumericalError. Inverses are never formed explicitly.
    /// Diagonal covariances skip the O(N^2) triangular work; the arithmetic is the same.
    class CovarianceFactor
    {
    public:
        CovarianceFactor() = default;
        explicit CovarianceFactor(const CMatrix &covariance, const std::string &what = "covariance");

        Eigen::Index size() const { return lower_.rows(); }
        const CMatrix &lower() const { return lower_; }
        double log_det() const { return log_det_; }
        bool jittered() const { return jittered_; }
        bool diagonal() const { return diagonal_; }

        /// L^{-1} v
        CVector whiten(const CVector &v) const;
        /// v^H C^{-1} v
        double quadratic_form(const CVector &v) const;
        /// L w, i.e. colours a white vector with this covariance
        CVector colour(const CVector &white) const;

    private:
        CMatrix lower_;
        double log_det_ = 0.0;
        bool jittered_ = false;
        bool diagonal_ = false;
    };

    /// Number of factorizations that needed jitter since process start.
    std::uint64_t jitter_count();

    /// max |A - A^H|
    double hermitian_residual(const CMatrix &a);

    /// Eigenvalues of the Hermitian part of a, ascending.
    Eigen::VectorXd hermitian_eigenvalues(const CMatrix &a);

    /// Number of eigenvalues of a Hermitian PSD matrix above relative_threshold * max eigenvalue.
    Eigen::Index numerical_rank(const CMatrix &a, double relative_threshold);
}

#endif
