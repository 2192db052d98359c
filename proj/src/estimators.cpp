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
#include "risfd/estimators.hpp"

#include <cmath>

namespace risfd {

namespace {

double eigen_condition(const CMatrix& core)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(core, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double lo = ev.minCoeff(), hi = ev.maxCoeff();
    return lo > 0.0 ? hi / lo : INFINITY;
}

void require_positive_diagonal(const NormalMatrix& nm)
{
    const RVector d = nm.core.diagonal().real();
    const double scale = d.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || d.minCoeff() <= 1e-12 * scale)
        throw NumericalError("normal matrix is singular: zero or negative diagonal entry in the diagonal path");
}

} // namespace

LinearEstimator::LinearEstimator(NormalMatrix nm, CMatrix weights, SolvePreference pref)
    : normal_(std::move(nm)), weights_(std::move(weights))
{
    if (normal_.is_diagonal && pref == SolvePreference::Auto) {
        require_positive_diagonal(normal_);
        path_ = SolverPath::Diagonal;
        const RVector d = normal_.core.diagonal().real();
        condition_ = d.maxCoeff() / d.minCoeff();
    } else {
        path_ = SolverPath::Dense;
        condition_ = eigen_condition(normal_.core);
    }
}

LinearEstimator LinearEstimator::least_squares(const TrainingPlan& plan, SolvePreference pref)
{
    return LinearEstimator(gram_matrix(plan), plan.regressor_rows(), pref);
}

LinearEstimator LinearEstimator::hi_aware(const TrainingPlan& plan, const ErrorStats& stats, SolvePreference pref)
{
    return LinearEstimator(normal_matrix(plan, stats), plan.regressor_rows() + stats.mean_rows, pref);
}

EstimateResult LinearEstimator::estimate(const CVector& y_bar) const
{
    const int M = normal_.M;
    const auto T = weights_.rows();
    if (y_bar.size() != T * M)
        throw DimensionError("estimate: received vector has length " + std::to_string(y_bar.size()) +
                             ", expected T*M = " + std::to_string(T * M));
    // W^H y = (W_rows^H kron I_M) vec(Y) = vec(Y conj(W_rows)), Y = [y_1 ... y_T]
    const CMatrix Y = unvec(y_bar, M);
    const CVector rhs = vec(Y * weights_.conjugate());

    EstimateResult r;
    r.solver_path = path_;
    r.condition_metric = condition_;
    if (path_ == SolverPath::Diagonal)
        r.h_hat = rhs.cwiseQuotient(normal_.diagonal().cast<cplx>());
    else
        r.h_hat = hermitian_solve(normal_.dense(), rhs);
    return r;
}

CMatrix LinearEstimator::core_inverse() const
{
    const auto n = normal_.core.rows();
    if (path_ == SolverPath::Diagonal) {
        return normal_.core.diagonal().real().cwiseInverse().cast<cplx>().asDiagonal();
    }
    return hermitian_solve(normal_.core, CMatrix::Identity(n, n));
}

EstimateResult estimate_ls(const TrainingPlan& plan, const CVector& y_bar, SolvePreference pref)
{
    return LinearEstimator::least_squares(plan, pref).estimate(y_bar);
}

EstimateResult estimate_hi(const TrainingPlan& plan, const ErrorStats& stats, const CVector& y_bar,
                           SolvePreference pref)
{
    return LinearEstimator::hi_aware(plan, stats, pref).estimate(y_bar);
}

double mse_ls(const TrainingPlan& plan, double sigma2)
{
    const auto est = LinearEstimator::least_squares(plan);
    // Tr((core kron I_M)^{-1}) = M Tr(core^{-1})
    return sigma2 * plan.dims().M * est.core_inverse().trace().real();
}

MsePredictor::MsePredictor(const TrainingPlan& plan, const ErrorStats& stats, const LinearEstimator& hi_estimator)
    : dims_(plan.dims())
{
    const CMatrix G = hi_estimator.core_inverse();
    const CMatrix& W = hi_estimator.weight_rows();
    // The centered covariance of y is block diagonal over t with blocks
    // C_t = H Cov(e_t) H^H + Sigma_rA + sigma^2 I, and
    // Tr(A^{-1} W^H C W A^{-1}) = sum_t ||core^{-1} conj(w_t)||^2 Tr(C_t).
    weighted_cov_ = CMatrix::Zero(dims_.x_dim(), dims_.x_dim());
    for (int t = 0; t < plan.T(); ++t) {
        const CVector u = W.row(t).adjoint();
        const double gain = (G * u).squaredNorm();
        gain_sum_ += gain;
        weighted_cov_ += gain * stats.cov_at(plan, t);
    }
    bias_map_ = G * (W.adjoint() * W);
}

double MsePredictor::predict(const CVector& h, double sigma2, const CMatrix& Sigma_rA, MseVariant variant) const
{
    if (h.size() != dims_.h_dim())
        throw DimensionError("mse_hi: channel vector has wrong length");
    if (Sigma_rA.rows() != dims_.M || Sigma_rA.cols() != dims_.M)
        throw DimensionError("mse_hi: receiver covariance must be M x M");
    const CMatrix H = h_as_matrix(h, dims_);
    const double floor_trace = Sigma_rA.trace().real() + dims_.M * sigma2;
    const double centered = (H * weighted_cov_).cwiseProduct(H.conjugate()).sum().real() + gain_sum_ * floor_trace;
    if (variant == MseVariant::Centered)
        return centered;
    // Moment adds ||A^{-1} W^H W h||^2; (B kron I_M) h = vec(H B^T).
    return centered + (H * bias_map_.transpose()).squaredNorm();
}

double mse_hi(const TrainingPlan& plan, const ErrorStats& stats, const CVector& h, double sigma2,
              const CMatrix& Sigma_rA, MseVariant variant)
{
    const auto est = LinearEstimator::hi_aware(plan, stats);
    return MsePredictor(plan, stats, est).predict(h, sigma2, Sigma_rA, variant);
}

CMatrix averaged_receiver_cov(const ChannelSet& ch, const TrainingPlan& plan, const ImpairmentProfile& profile,
                              GammaForm form)
{
    const int M = plan.dims().M;
    CMatrix acc = CMatrix::Zero(M, M);
    for (const auto& blk : plan.ris_blocks())
        acc += compute_gamma(ch, blk, profile, form);
    acc /= static_cast<double>(plan.ris_blocks().size());
    return receiver_hi_cov(acc, profile.sigma2_rA);
}

} // namespace risfd
