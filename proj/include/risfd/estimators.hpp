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
#ifndef RISFD_ESTIMATORS_HPP
#define RISFD_ESTIMATORS_HPP

#include "risfd/hi_stats.hpp"

namespace risfd {

enum class SolverPath { Dense, Diagonal };

enum class SolvePreference {
    Auto,        ///< diagonal path whenever the normal matrix is diagonal
    ForceDense,  ///< always factorize the full h_dim x h_dim normal matrix
};

struct EstimateResult {
    CVector h_hat;
    SolverPath solver_path = SolverPath::Dense;
    /// Ratio of the largest to the smallest eigenvalue of the normal matrix.
    double condition_metric = 0.0;
};

/// Linear estimator h = A^{-1} W^H y with W = W_rows kron I_M.
///
/// Everything that depends only on the training plan (and the impairment
/// statistics) is computed once at construction, so one instance can serve
/// every Monte-Carlo trial of a grid point.
class LinearEstimator {
public:
    /// Least squares / ML: W = X, A = X^H X.
    static LinearEstimator least_squares(const TrainingPlan& plan, SolvePreference pref = SolvePreference::Auto);
    /// Impairment-aware: W = X + E[E], A = X^H X + X^H E[E] + E[E^H] X + E[E^H E].
    static LinearEstimator hi_aware(const TrainingPlan& plan, const ErrorStats& stats,
                                    SolvePreference pref = SolvePreference::Auto);

    EstimateResult estimate(const CVector& y_bar) const;

    const NormalMatrix& normal() const { return normal_; }
    const CMatrix& weight_rows() const { return weights_; }
    SolverPath path() const { return path_; }
    double condition_metric() const { return condition_; }

    /// core^{-1}, where A = core kron I_M.
    CMatrix core_inverse() const;

private:
    LinearEstimator(NormalMatrix nm, CMatrix weights, SolvePreference pref);

    NormalMatrix normal_;
    CMatrix weights_;  ///< T x (M+K)(N+1)
    SolverPath path_;
    double condition_;
};

/// (X^H X)^{-1} X^H y.
EstimateResult estimate_ls(const TrainingPlan& plan, const CVector& y_bar,
                           SolvePreference pref = SolvePreference::Auto);

/// A^{-1} (X + E[E])^H y.
EstimateResult estimate_hi(const TrainingPlan& plan, const ErrorStats& stats, const CVector& y_bar,
                           SolvePreference pref = SolvePreference::Auto);

/// sigma^2 Tr((X^H X)^{-1}).
double mse_ls(const TrainingPlan& plan, double sigma2);

enum class MseVariant {
    /// Uses the raw second moment E[y y^H] as printed; at zero impairments this is ||h||^2 + MSE_LS.
    Moment,
    /// Uses E[y y^H] - (X+E[E]) h h^H (X+E[E])^H; at zero impairments this equals MSE_LS.
    Centered,
};

/// Closed-form Tr(A^{-2} W^H C W) for the impairment-aware estimator, with C the
/// selected second-moment matrix of y. Sigma_rA is the (time-invariant) receiver
/// distortion covariance and sigma2 the thermal noise power.
double mse_hi(const TrainingPlan& plan, const ErrorStats& stats, const CVector& h, double sigma2,
              const CMatrix& Sigma_rA, MseVariant variant = MseVariant::Centered);

/// Precomputed plan-dependent parts of mse_hi(), for repeated evaluation over many channels.
class MsePredictor {
public:
    MsePredictor(const TrainingPlan& plan, const ErrorStats& stats, const LinearEstimator& hi_estimator);

    double predict(const CVector& h, double sigma2, const CMatrix& Sigma_rA, MseVariant variant) const;

private:
    SystemDims dims_;
    CMatrix weighted_cov_;  ///< sum_t ||core^{-1} conj(w_t)||^2 Cov(e_t)
    double gain_sum_ = 0.0; ///< sum_t ||core^{-1} conj(w_t)||^2
    CMatrix bias_map_;      ///< core^{-1} W_rows^H W_rows
};

/// Receiver distortion covariance sigma2_rA (I o Gamma) with Gamma averaged over the RIS blocks of a plan.
CMatrix averaged_receiver_cov(const ChannelSet& ch, const TrainingPlan& plan, const ImpairmentProfile& profile,
                              GammaForm form = GammaForm::kMoment);

} // namespace risfd

#endif // RISFD_ESTIMATORS_HPP
