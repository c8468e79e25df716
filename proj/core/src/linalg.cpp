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

#include "mcsim/linalg.hpp"

#include <cmath>

namespace mcsim
{
    namespace
    {
        std::atomic<std::uint64_t> g_jitter_count{0};

        bool try_factor(const CMatrix &a, CMatrix &lower)
        {
            Eigen::LLT<CMatrix> llt(a);
            if (llt.info() != Eigen::Success)
                return false;
            lower = llt.matrixL();
            for (Eigen::Index i = 0; i < lower.rows(); ++i)
            {
                const double d = lower(i, i).real();
                if (!(d > 0.0) || !std::isfinite(d))
                    return false;
            }
            return true;
        }
    }

    CovarianceFactor::CovarianceFactor(const CMatrix &covariance, const std::string &what)
    {
        if (covariance.rows() != covariance.cols() || covariance.rows() == 0)
            throw NumericalError(what + ": covariance must be a nonempty square matrix");

        if (!try_factor(covariance, lower_))
        {
            const auto n = covariance.rows();
            const double scale = covariance.trace().real() / static_cast<double>(n);
            if (!(scale > 0.0) || !std::isfinite(scale))
                throw NumericalError(what + ": Cholesky failed and trace is not positive");
            CMatrix jittered = covariance;
            jittered.diagonal().array() += covariance_jitter * scale;
            if (!try_factor(jittered, lower_))
                throw NumericalError(what + ": Cholesky failed after jitter of " +
                                     std::to_string(covariance_jitter * scale));
            jittered_ = true;
            g_jitter_count.fetch_add(1, std::memory_order_relaxed);
        }

        diagonal_ = lower_.isDiagonal(0.0);
        log_det_ = 0.0;
        for (Eigen::Index i = 0; i < lower_.rows(); ++i)
            log_det_ += 2.0 * std::log(lower_(i, i).real());
    }

    CVector CovarianceFactor::whiten(const CVector &v) const
    {
        if (diagonal_)
            return v.cwiseQuotient(lower_.diagonal());
        return lower_.triangularView<Eigen::Lower>().solve(v);
    }

    double CovarianceFactor::quadratic_form(const CVector &v) const
    {
        return whiten(v).squaredNorm();
    }

    CVector CovarianceFactor::colour(const CVector &white) const
    {
        if (diagonal_)
            return white.cwiseProduct(lower_.diagonal());
        return lower_.triangularView<Eigen::Lower>() * white;
    }

    std::uint64_t jitter_count()
    {
        return g_jitter_count.load(std::memory_order_relaxed);
    }

    double hermitian_residual(const CMatrix &a)
    {
        return (a - a.adjoint()).cwiseAbs().maxCoeff();
    }

    Eigen::VectorXd hermitian_eigenvalues(const CMatrix &a)
    {
        const CMatrix sym = 0.5 * (a + a.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }

    Eigen::Index numerical_rank(const CMatrix &a, double relative_threshold)
    {
        const Eigen::VectorXd ev = hermitian_eigenvalues(a);
        const double top = ev.cwiseAbs().maxCoeff();
        if (top == 0.0)
            return 0;
        return (ev.array() > relative_threshold * top).count();
    }
}
