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
#include "risfd/hi_stats.hpp"

#include <algorithm>
#include <cmath>

namespace risfd {

namespace {

struct Layout {
    Eigen::Index M, K, N;
    Eigen::Index a0() const { return 0; }
    Eigen::Index a1() const { return M; }
    Eigen::Index u0() const { return M * (N + 1); }
    Eigen::Index u1() const { return M * (N + 1) + K; }
    Eigen::Index size() const { return (M + K) * (N + 1); }
};

// Sum of f(t) over [lo, hi) by pairwise splitting; fixed order regardless of threading.
template <class F>
CMatrix pairwise_sum(int lo, int hi, const F& f)
{
    if (hi - lo == 1)
        return f(lo);
    const int mid = lo + (hi - lo) / 2;
    return pairwise_sum(lo, mid, f) + pairwise_sum(mid, hi, f);
}

void check_powers(const TrainingPlan& plan, const ImpairmentProfile& profile)
{
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); };
    if (!close(plan.P_A(), profile.P_A) || !close(plan.P_U(), profile.P_U))
        throw DimensionError("hi statistics: impairment profile powers (" + std::to_string(profile.P_A) + ", " +
                             std::to_string(profile.P_U) + ") do not match the training plan (" +
                             std::to_string(plan.P_A()) + ", " + std::to_string(plan.P_U()) + ")");
}

} // namespace

CMatrix ris_moment_m1(const CVector& phi_t, double phi)
{
    const auto N = phi_t.size();
    return (phi * phi - 2.0 * phi + 1.0) * phi_t * phi_t.adjoint() + (1.0 - phi * phi) * CMatrix::Identity(N, N);
}

CMatrix ris_moment_m2(const CVector& phi_t, double phi)
{
    const auto N = phi_t.size();
    return phi * phi * phi_t * phi_t.adjoint() + (1.0 - phi * phi) * CMatrix::Identity(N, N);
}

CVector mean_e_t(const CVector& x_A, const CVector& x_U, const CVector& phi_t, const ImpairmentProfile& profile)
{
    const Layout lay{x_A.size(), x_U.size(), phi_t.size()};
    const double shift = profile.phi() - 1.0;
    CVector m = CVector::Zero(lay.size());
    m.segment(lay.a1(), lay.M * lay.N) = vec(kron(shift * phi_t, x_A));
    m.segment(lay.u1(), lay.K * lay.N) = vec(kron(shift * phi_t, x_U));
    return m;
}

CMatrix corr_e_t(const CVector& x_A, const CVector& x_U, const CVector& phi_t, const ImpairmentProfile& profile)
{
    const Layout lay{x_A.size(), x_U.size(), phi_t.size()};
    const auto M = lay.M, K = lay.K, N = lay.N;
    const double vphi = profile.phi();
    const CMatrix SA = profile.Sigma_tA(static_cast<int>(M));
    const CMatrix SU = profile.Sigma_tU(static_cast<int>(K));
    const CMatrix M1 = ris_moment_m1(phi_t, vphi);
    const CMatrix M2 = ris_moment_m2(phi_t, vphi);
    const CMatrix col = phi_t;
    const CMatrix row = phi_t.adjoint();

    CMatrix R = CMatrix::Zero(lay.size(), lay.size());
    R.block(lay.a0(), lay.a0(), M, M) = SA;
    R.block(lay.a0(), lay.a1(), M, M * N) = vphi * kron(row, SA);
    R.block(lay.a1(), lay.a0(), M * N, M) = vphi * kron(col, SA);
    R.block(lay.a1(), lay.a1(), M * N, M * N) = kron(M1, x_A * x_A.adjoint()) + kron(M2, SA);
    R.block(lay.a1(), lay.u1(), M * N, K * N) = kron(M1, x_A * x_U.adjoint());

    R.block(lay.u0(), lay.u0(), K, K) = SU;
    R.block(lay.u0(), lay.u1(), K, K * N) = vphi * kron(row, SU);
    R.block(lay.u1(), lay.u0(), K * N, K) = vphi * kron(col, SU);
    R.block(lay.u1(), lay.u1(), K * N, K * N) = kron(M1, x_U * x_U.adjoint()) + kron(M2, SU);
    R.block(lay.u1(), lay.a1(), K * N, M * N) = kron(M1, x_U * x_A.adjoint());
    return R;
}

CMatrix ErrorStats::corr_at(const TrainingPlan& plan, int t) const
{
    return corr_e_t(plan.x_A(t), plan.x_U(t), plan.phi(t), profile);
}

CMatrix ErrorStats::cov_at(const TrainingPlan& plan, int t) const
{
    const CVector m = mean_rows.row(t).transpose();
    return corr_at(plan, t) - m * m.adjoint();
}

CMatrix ErrorStats::dense_mean_E() const
{
    return kron(mean_rows, CMatrix::Identity(dims.M, dims.M));
}

CMatrix ErrorStats::dense_corr_EE() const
{
    return kron(corr_sum.conjugate(), CMatrix::Identity(dims.M, dims.M));
}

ErrorStats aggregate_stats(const TrainingPlan& plan, const ImpairmentProfile& profile)
{
    profile.validate();
    check_powers(plan, profile);
    const auto& d = plan.dims();
    ErrorStats s;
    s.dims = d;
    s.phi = profile.phi();
    s.profile = profile;
    s.mean_rows.resize(plan.T(), d.x_dim());

    // x_t only depends on the pilot index and phi_t on the block, so compute
    // the per-block mean once and reuse it for every pilot in that block.
    const int L = d.L;
    std::vector<CMatrix> per_block(d.N + 1);
    for (int b = 0; b <= d.N; ++b) {
        const int t0 = b * L;
        per_block[b] = pairwise_sum(0, L, [&](int l) { return s.corr_at(plan, t0 + l); });
        for (int l = 0; l < L; ++l)
            s.mean_rows.row(t0 + l) = mean_e_t(plan.x_A(t0 + l), plan.x_U(t0 + l), plan.phi(t0), profile).transpose();
    }
    s.corr_sum = pairwise_sum(0, d.N + 1, [&](int b) { return per_block[b]; });
    return s;
}

RVector NormalMatrix::diagonal() const
{
    const RVector c = core.diagonal().real();
    RVector out(c.size() * M);
    for (Eigen::Index i = 0; i < c.size(); ++i)
        out.segment(i * M, M).setConstant(c(i));
    return out;
}

CMatrix NormalMatrix::dense() const
{
    return kron(core, CMatrix::Identity(M, M));
}

namespace {

NormalMatrix finish_normal(CMatrix core, int M)
{
    const double defect = hermitian_defect(core);
    if (defect > 1e-10)
        throw NumericalError("normal matrix is not Hermitian (relative defect " + std::to_string(defect) + ")");
    NormalMatrix nm;
    nm.core = 0.5 * (core + core.adjoint());
    nm.M = M;
    nm.offdiag = offdiag_ratio(nm.core);
    nm.is_diagonal = nm.offdiag < kDiagonalTolerance;
    return nm;
}

} // namespace

NormalMatrix normal_matrix(const TrainingPlan& plan, const ErrorStats& stats)
{
    if (!(stats.dims == plan.dims()) || stats.mean_rows.rows() != plan.T())
        throw DimensionError("normal_matrix: statistics were built for a different plan");
    const CMatrix& X = plan.regressor_rows();
    const CMatrix& Em = stats.mean_rows;
    CMatrix core = X.adjoint() * X + X.adjoint() * Em + Em.adjoint() * X + stats.corr_sum.conjugate();
    return finish_normal(std::move(core), plan.dims().M);
}

NormalMatrix gram_matrix(const TrainingPlan& plan)
{
    const CMatrix& X = plan.regressor_rows();
    return finish_normal(X.adjoint() * X, plan.dims().M);
}

CVector sample_e_t(const CVector& x_A, const CVector& x_U, const CVector& phi_t, const ImpairmentProfile& profile,
                   Rng& rng)
{
    const auto M = x_A.size(), K = x_U.size(), N = phi_t.size();
    const CVector d_A = complex_gaussian_matrix(rng, M, 1, profile.tx_var_A());
    const CVector d_U = complex_gaussian_matrix(rng, K, 1, profile.tx_var_U());
    const CVector off = sample_phase_offsets(static_cast<int>(N), profile.kappa_ris, rng).phi_tilde;
    const CVector ris = off.cwiseProduct(phi_t);
    const CVector x = assemble_x_t(x_A, x_U, phi_t);
    return assemble_x_t(x_A + d_A, x_U + d_U, ris) - x;
}

SampledMoments sample_error_moments(const CVector& x_A, const CVector& x_U, const CVector& phi_t,
                                    const ImpairmentProfile& profile, int draws, Rng& rng)
{
    if (draws < 1)
        throw DimensionError("sample_error_moments: draws must be >= 1");
    const Eigen::Index n = (x_A.size() + x_U.size()) * (phi_t.size() + 1);
    SampledMoments out{CVector::Zero(n), CMatrix::Zero(n, n), draws};
    for (int i = 0; i < draws; ++i) {
        const CVector e = sample_e_t(x_A, x_U, phi_t, profile, rng);
        out.mean += e;
        out.corr.noalias() += e * e.adjoint();
    }
    out.mean /= static_cast<double>(draws);
    out.corr /= static_cast<double>(draws);
    return out;
}

} // namespace risfd
