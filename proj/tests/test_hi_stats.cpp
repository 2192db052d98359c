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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

using namespace risfd;

namespace {

ImpairmentProfile hi_profile(double kappa, double s2, double PA = 1.0, double PU = 1.0)
{
    return ImpairmentProfile::uniform(kappa, s2, PA, PU);
}

CVector random_phases(Rng& rng, int N)
{
    CVector p(N);
    for (int n = 0; n < N; ++n)
        p(n) = std::polar(1.0, 6.283185307179586 * uniform01(rng));
    return p;
}

} // namespace

TEST_CASE("mean of e_t")
{
    Rng rng = make_rng(31);
    const int M = 2, K = 1, N = 3;
    const CVector a = oracle::random_vector(rng, M), u = oracle::random_vector(rng, K), p = random_phases(rng, N);

    CHECK(mean_e_t(a, u, p, hi_profile(INFINITY, 0.1)).norm() == 0.0);

    const CVector m0 = mean_e_t(a, u, p, hi_profile(0.0, 0.1));
    CHECK(m0.head(M).norm() == 0.0);
    CHECK((m0.segment(M, M * N) + kron(p, a)).norm() < 1e-14);
    CHECK(m0.segment(M * (N + 1), K).norm() == 0.0);
    CHECK((m0.tail(K * N) + kron(p, u)).norm() < 1e-14);
}

TEST_CASE("correlation of e_t special cases")
{
    Rng rng = make_rng(32);
    const int M = 2, K = 1, N = 3;
    const CVector a = oracle::random_vector(rng, M), u = oracle::random_vector(rng, K), p = random_phases(rng, N);

    CHECK(corr_e_t(a, u, p, hi_profile(INFINITY, 0.0)).norm() == 0.0);

    const CMatrix C = corr_e_t(a, u, p, hi_profile(0.0, 0.0));
    const CMatrix At = kron(p * p.adjoint() + CMatrix::Identity(N, N), a * a.adjoint());
    CHECK((C.block(M, M, M * N, M * N) - At).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(C.block(0, 0, M, M).norm() == 0.0);
}

TEST_CASE("RIS moment matrices")
{
    Rng rng = make_rng(33);
    const int N = 5;
    const CVector p = random_phases(rng, N);
    for (double phi : {0.0, 0.3, 0.86, 1.0}) {
        const CMatrix M1 = ris_moment_m1(p, phi), M2 = ris_moment_m2(p, phi);
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) {
                if (m == n) {
                    CHECK(std::abs(M1(m, m) - (2.0 - 2.0 * phi)) < 1e-14);
                    CHECK(std::abs(M2(m, m) - 1.0) < 1e-14);
                } else {
                    CHECK(std::abs(M1(m, n) - (phi * phi - 2 * phi + 1) * p(m) * std::conj(p(n))) < 1e-14);
                    CHECK(std::abs(M2(m, n) - phi * phi * p(m) * std::conj(p(n))) < 1e-14);
                }
            }
    }
}

TEST_CASE("error covariance is positive semidefinite")
{
    Rng rng = make_rng(34);
    for (int rep = 0; rep < 25; ++rep) {
        const int M = 1 + rep % 3, K = 1 + rep % 2, N = 1 + rep % 4;
        const CVector a = oracle::random_vector(rng, M), u = oracle::random_vector(rng, K), p = random_phases(rng, N);
        const ImpairmentProfile pr = hi_profile(0.4 * rep, 0.02 * (rep % 5), 1.0 + rep % 3, 0.5);
        const CVector mu = mean_e_t(a, u, p, pr);
        const CMatrix C = corr_e_t(a, u, p, pr);
        CHECK(hermitian_defect(C) < 1e-12);
        const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(C - mu * mu.adjoint()).eigenvalues();
        CHECK(ev.minCoeff() >= -1e-9);
    }
}

TEST_CASE("closed-form moments match sampled e_t")
{
    // smaller draw count than the acceptance run; the tolerances still hold comfortably
    Rng rng = make_rng(35);
    const int M = 2, K = 1, N = 2;
    const TrainingPlan plan(PilotScheme::FdScheme1, M, K, N, 1.0, 1.0);
    const ImpairmentProfile pr = hi_profile(4.0, 0.1);
    for (int t : {0, 5, plan.T() - 1}) {
        const SampledMoments s = sample_error_moments(plan.x_A(t), plan.x_U(t), plan.phi(t), pr, 200000, rng);
        CHECK((s.mean - mean_e_t(plan.x_A(t), plan.x_U(t), plan.phi(t), pr)).cwiseAbs().maxCoeff() < 1e-2);
        CHECK((s.corr - corr_e_t(plan.x_A(t), plan.x_U(t), plan.phi(t), pr)).cwiseAbs().maxCoeff() < 2e-2);
    }
}

TEST_CASE("aggregate statistics")
{
    const TrainingPlan plan(PilotScheme::FdScheme1, 2, 1, 2, 1.0, 1.0);
    const ErrorStats zero = aggregate_stats(plan, ImpairmentProfile::ideal_hardware());
    CHECK(zero.mean_rows.norm() == 0.0);
    CHECK(zero.corr_sum.norm() == 0.0);

    const ImpairmentProfile pr = hi_profile(4.0, 0.1);
    const ErrorStats st = aggregate_stats(plan, pr);
    CHECK(st.phi == doctest::Approx(bessel_ratio(4.0)));
    CMatrix direct = CMatrix::Zero(plan.dims().x_dim(), plan.dims().x_dim());
    for (int t = 0; t < plan.T(); ++t) {
        const CVector mu = mean_e_t(plan.x_A(t), plan.x_U(t), plan.phi(t), pr);
        CHECK((st.mean_rows.row(t).transpose() - mu).norm() == 0.0);
        direct += corr_e_t(plan.x_A(t), plan.x_U(t), plan.phi(t), pr);
        CHECK((st.corr_at(plan, t) - corr_e_t(plan.x_A(t), plan.x_U(t), plan.phi(t), pr)).norm() == 0.0);
        CHECK((st.cov_at(plan, t) - (st.corr_at(plan, t) - mu * mu.adjoint())).norm() < 1e-14);
    }
    CHECK((st.corr_sum - direct).cwiseAbs().maxCoeff() < 1e-12 * direct.cwiseAbs().maxCoeff());
    CHECK((st.dense_mean_E() - oracle::dense_mean_E(plan, pr)).norm() == 0.0);
    CHECK((st.dense_corr_EE() - oracle::dense_corr_EE(plan, pr)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(aggregate_stats(plan, hi_profile(4.0, 0.1, 2.0, 1.0)), DimensionError);
}

TEST_CASE("two-instant toy system against hand assembly")
{
    // M=1, K=1, N=1 with two blocks of one pilot: T = 2
    CMatrix SA(1, 1), SU(1, 1);
    SA << 1.0;
    SU << cplx(0.0, 1.0);
    const TrainingPlan plan(PilotScheme::FdScheme1, SA, SU, build_ris_schedule(1, 1), 1.0, 1.0);
    REQUIRE(plan.T() == 2);
    const ImpairmentProfile pr = hi_profile(2.0, 0.2);
    const double f = pr.phi();
    const ErrorStats st = aggregate_stats(plan, pr);

    // E[e_t] = [0, (f-1) p_t a, 0, (f-1) p_t u] with p = +1, -1
    CMatrix mean(2, 4);
    mean << 0.0, (f - 1.0), 0.0, (f - 1.0) * cplx(0.0, 1.0), 0.0, -(f - 1.0), 0.0, -(f - 1.0) * cplx(0.0, 1.0);
    CHECK((st.dense_mean_E() - mean).cwiseAbs().maxCoeff() < 1e-14);

    // Diagonal of E[e e^H]: s_A, (2-2f)|a|^2 + s_A, s_U, (2-2f)|u|^2 + s_U per instant (|p| = 1)
    const double sA = 0.2, sU = 0.2;
    const CMatrix R = st.dense_corr_EE();
    CHECK(std::abs(R(0, 0) - 2.0 * sA) < 1e-14);
    CHECK(std::abs(R(1, 1) - 2.0 * ((2.0 - 2.0 * f) + sA)) < 1e-14);
    CHECK(std::abs(R(2, 2) - 2.0 * sU) < 1e-14);
    CHECK(std::abs(R(3, 3) - 2.0 * ((2.0 - 2.0 * f) + sU)) < 1e-14);
    // coupling between x_A and its RIS copy: f p_t^* s_A, summed over p = +1, -1
    CHECK(std::abs(R(0, 1)) < 1e-14);
}

TEST_CASE("normal matrix")
{
    const TrainingPlan plan(PilotScheme::FdScheme1, 2, 1, 2, 1.0, 1.0);
    const NormalMatrix g = gram_matrix(plan);
    const NormalMatrix ideal = normal_matrix(plan, aggregate_stats(plan, ImpairmentProfile::ideal_hardware()));
    CHECK(ideal.is_diagonal);
    CHECK((ideal.core - g.core).norm() == 0.0);

    const ImpairmentProfile pr = hi_profile(4.0, 0.1);
    const NormalMatrix nm = normal_matrix(plan, aggregate_stats(plan, pr));
    CHECK(nm.is_diagonal);
    const CMatrix X = oracle::dense_X(plan), Em = oracle::dense_mean_E(plan, pr);
    const CMatrix A = X.adjoint() * X + X.adjoint() * Em + Em.adjoint() * X + oracle::dense_corr_EE(plan, pr);
    CHECK((nm.dense() - A).cwiseAbs().maxCoeff() < 1e-10 * A.cwiseAbs().maxCoeff());
    const RVector dg = nm.diagonal();
    CHECK((dg - A.diagonal().real()).cwiseAbs().maxCoeff() < 1e-10 * dg.maxCoeff());
}

TEST_CASE("normal matrix is diagonal on the dims grid and matches dense assembly")
{
    for (auto s : {PilotScheme::FdScheme1, PilotScheme::HdScheme2, PilotScheme::HdScheme3})
        for (int M : {2, 3})
            for (int K : {1, 2})
                for (int N : {2, 4}) {
                    if (K > M)
                        continue;
                    const TrainingPlan plan0(s, M, K, N, 1.0, 1.0);
                    const PowerPair pw = equalize_energy(TrainingPlan(PilotScheme::FdScheme1, M, K, N, 1, 1), plan0);
                    const TrainingPlan plan = plan0.with_powers(pw.P_A, pw.P_U);
                    const ImpairmentProfile pr = hi_profile(2.0, 0.1, pw.P_A, pw.P_U);
                    const NormalMatrix nm = normal_matrix(plan, aggregate_stats(plan, pr));
                    CAPTURE(scheme_id(s));
                    CAPTURE(M);
                    CAPTURE(K);
                    CAPTURE(N);
                    CHECK(nm.is_diagonal);
                    const CMatrix X = oracle::dense_X(plan), Em = oracle::dense_mean_E(plan, pr);
                    const CMatrix A =
                        X.adjoint() * X + X.adjoint() * Em + Em.adjoint() * X + oracle::dense_corr_EE(plan, pr);
                    CHECK((nm.diagonal() - A.diagonal().real()).norm() <= 1e-10 * A.diagonal().norm());
                    CHECK(offdiag_ratio(A) < 1e-9);
                }
}

TEST_CASE("a schedule without zero sum gives a non-diagonal normal matrix")
{
    const int M = 2, K = 1, N = 2;
    const TrainingPlan ref(PilotScheme::FdScheme1, M, K, N, 1.0, 1.0);
    std::vector<CVector> blocks(N + 1, CVector::Ones(N));
    blocks[1](0) = -1.0;
    const TrainingPlan bad(PilotScheme::FdScheme1, ref.S_A(), ref.S_U(), blocks, 1.0, 1.0);
    CHECK_FALSE(verify_orthogonality(bad).holds[1]);
    const NormalMatrix nm = normal_matrix(bad, aggregate_stats(bad, hi_profile(4.0, 0.1)));
    CHECK_FALSE(nm.is_diagonal);
    CHECK(nm.offdiag > 1e-3);
}
