// SPDX-License-Identifier: Apache-2.0
//
// risfd - channel estimation for RIS-assisted full-duplex MIMO
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
#ifndef RISFD_HI_STATS_HPP
#define RISFD_HI_STATS_HPP

#include "risfd/impairments.hpp"
#include "risfd/training.hpp"

namespace risfd {

/// E[e_t] = [0_M; (phi-1) phi_t kron x_A; 0_K; (phi-1) phi_t kron x_U].
CVector mean_e_t(const CVector& x_A, const CVector& x_U, const CVector& phi_t, const ImpairmentProfile& profile);

/// E[e_t e_t^H]: 4 x 4 block Hermitian matrix built from Sigma_tA, Sigma_tU and the
/// RIS moment matrices
///   M1 = (phi^2 - 2 phi + 1) phi_t phi_t^H + (1 - phi^2) I_N
///   M2 = phi^2 phi_t phi_t^H + (1 - phi^2) I_N.
CMatrix corr_e_t(const CVector& x_A, const CVector& x_U, const CVector& phi_t, const ImpairmentProfile& profile);

/// The two RIS moment matrices above, exposed for testing.
CMatrix ris_moment_m1(const CVector& phi_t, double phi);
CMatrix ris_moment_m2(const CVector& phi_t, double phi);

/// One draw of e_t = x~_t - x_t, where x~_t is the regressor row rebuilt from the
/// distorted pilots and the offset-perturbed RIS configuration.
CVector sample_e_t(const CVector& x_A, const CVector& x_U, const CVector& phi_t, const ImpairmentProfile& profile,
                   Rng& rng);

/// Sample mean and sample correlation of e_t over \p draws independent draws.
struct SampledMoments {
    CVector mean;
    CMatrix corr;
    int draws = 0;
};
SampledMoments sample_error_moments(const CVector& x_A, const CVector& x_U, const CVector& phi_t,
                                    const ImpairmentProfile& profile, int draws, Rng& rng);

/// Training-period statistics of the additive error in factored form.
///
/// With X = rows kron I_M the aggregates are
///   E[E]       = mean_rows kron I_M               (row t of mean_rows is E[e_t]^T)
///   E[E^H E]   = conj(corr_sum) kron I_M          (corr_sum = sum_t E[e_t e_t^H])
/// Nothing of size h_dim is stored unless one of the dense_* helpers is called.
struct ErrorStats {
    SystemDims dims;
    double phi = 1.0;
    CMatrix mean_rows;  ///< T x (M+K)(N+1)
    CMatrix corr_sum;   ///< (M+K)(N+1) x (M+K)(N+1)
    ImpairmentProfile profile;

    /// E[e_t e_t^H] for one instant, recomputed from the plan.
    CMatrix corr_at(const TrainingPlan& plan, int t) const;
    /// E[e_t e_t^H] - E[e_t] E[e_t]^H.
    CMatrix cov_at(const TrainingPlan& plan, int t) const;

    CMatrix dense_mean_E() const;
    CMatrix dense_corr_EE() const;
};

/// Builds ErrorStats for a plan. The profile's transmit powers must match the plan's.
ErrorStats aggregate_stats(const TrainingPlan& plan, const ImpairmentProfile& profile);

/// Normal matrix A = X^H X + X^H E[E] + E[E^H] X + E[E^H E] = core kron I_M.
struct NormalMatrix {
    CMatrix core;          ///< (M+K)(N+1) square, Hermitian
    int M = 1;
    bool is_diagonal = false;
    double offdiag = 0.0;  ///< largest off-diagonal magnitude relative to the largest diagonal

    /// Diagonal of A (length h_dim); meaningful when is_diagonal.
    RVector diagonal() const;
    CMatrix dense() const;
};

/// Diagonality threshold, relative to the largest diagonal magnitude.
inline constexpr double kDiagonalTolerance = 1e-9;

/// Normal matrix of the impairment-aware estimator. Throws NumericalError when
/// the assembled core is not Hermitian to 1e-10.
NormalMatrix normal_matrix(const TrainingPlan& plan, const ErrorStats& stats);

/// X^H X = (rows^H rows) kron I_M in the same representation.
NormalMatrix gram_matrix(const TrainingPlan& plan);

} // namespace risfd

#endif // RISFD_HI_STATS_HPP
