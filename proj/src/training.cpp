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
#include "risfd/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>

namespace risfd {

PilotScheme scheme_from_int(int id)
{
    switch (id) {
    case 1: return PilotScheme::FdScheme1;
    case 2: return PilotScheme::HdScheme2;
    case 3: return PilotScheme::HdScheme3;
    default: throw DimensionError("unknown pilot scheme " + std::to_string(id) + " (expected 1, 2 or 3)");
    }
}

int scheme_id(PilotScheme s)
{
    return static_cast<int>(s);
}

std::string scheme_name(PilotScheme s)
{
    switch (s) {
    case PilotScheme::FdScheme1: return "scheme1-fd";
    case PilotScheme::HdScheme2: return "scheme2-hd";
    case PilotScheme::HdScheme3: return "scheme3-hd";
    }
    return "unknown";
}

CMatrix build_P(int M, int K)
{
    if (K < 1 || M < K)
        throw DimensionError("build_P: requires M >= K >= 1 (got M=" + std::to_string(M) + ", K=" +
                             std::to_string(K) + ")");
    const int q = M / K, r = M % K;
    const CMatrix QK = dft_matrix(K, true);
    CMatrix P = CMatrix::Zero(K, M);
    for (int i = 0; i < q; ++i)
        P.block(0, i * K, K, K) = QK;
    if (r > 0)
        P.block(0, q * K, r, r) = dft_matrix(r, true);
    return P;
}

PilotBasis build_pilots(PilotScheme scheme, int M, int K)
{
    if (K < 1 || M < K)
        throw DimensionError("build_pilots: pilot schemes require M >= K >= 1");
    const CMatrix QM = dft_matrix(M, true);
    PilotBasis b;
    switch (scheme) {
    case PilotScheme::FdScheme1: {
        const CMatrix P = build_P(M, K);
        b.L = 2 * M;
        b.S_A.resize(M, b.L);
        b.S_A << QM, QM;
        b.S_U.resize(K, b.L);
        b.S_U << P, -P;
        break;
    }
    case PilotScheme::HdScheme2: {
        const CMatrix P = build_P(M, K);
        b.L = 2 * M;
        b.S_A.resize(M, b.L);
        b.S_A << QM, CMatrix::Zero(M, M);
        b.S_U.resize(K, b.L);
        b.S_U << CMatrix::Zero(K, M), P;
        break;
    }
    case PilotScheme::HdScheme3: {
        b.L = M + K;
        b.S_A.resize(M, b.L);
        b.S_A << QM, CMatrix::Zero(M, K);
        b.S_U.resize(K, b.L);
        b.S_U << CMatrix::Zero(K, M), dft_matrix(K, true);
        break;
    }
    }
    return b;
}

int scheme_training_length(PilotScheme scheme, int M, int K, int N)
{
    return build_pilots(scheme, M, K).L * (N + 1);
}

std::vector<CVector> build_ris_schedule(int N, int L)
{
    if (N < 1 || L < 1)
        throw DimensionError("build_ris_schedule: N and L must be >= 1");
    const CMatrix F = dft_matrix(N + 1, false);
    std::vector<CVector> out;
    out.reserve(static_cast<std::size_t>(L) * (N + 1));
    for (int b = 0; b <= N; ++b) {
        const CVector blk = F.col(b).tail(N);
        for (int l = 0; l < L; ++l)
            out.push_back(blk);
    }
    return out;
}

CVector assemble_x_t(const CVector& x_A, const CVector& x_U, const CVector& phi_t)
{
    const auto M = x_A.size(), K = x_U.size(), N = phi_t.size();
    CVector x((M + K) * (N + 1));
    x.head(M) = x_A;
    for (Eigen::Index n = 0; n < N; ++n)
        x.segment(M + n * M, M) = phi_t(n) * x_A;
    const auto u0 = M * (N + 1);
    x.segment(u0, K) = x_U;
    for (Eigen::Index n = 0; n < N; ++n)
        x.segment(u0 + K + n * K, K) = phi_t(n) * x_U;
    return x;
}

TrainingPlan::TrainingPlan(PilotScheme scheme, int M, int K, int N, double P_A, double P_U)
    : scheme_(scheme), P_A_(P_A), P_U_(P_U)
{
    if (N < 1)
        throw DimensionError("training plan: N must be >= 1");
    PilotBasis b = build_pilots(scheme, M, K);
    S_A_ = std::move(b.S_A);
    S_U_ = std::move(b.S_U);
    const CMatrix F = dft_matrix(N + 1, false);
    for (int blk = 0; blk <= N; ++blk)
        ris_blocks_.push_back(F.col(blk).tail(N));
    finish();
}

TrainingPlan::TrainingPlan(PilotScheme scheme, CMatrix S_A, CMatrix S_U, std::vector<CVector> ris_blocks,
                           double P_A, double P_U)
    : scheme_(scheme), S_A_(std::move(S_A)), S_U_(std::move(S_U)), ris_blocks_(std::move(ris_blocks)), P_A_(P_A),
      P_U_(P_U)
{
    finish();
}

void TrainingPlan::finish()
{
    if (S_A_.cols() != S_U_.cols() || S_A_.cols() < 1)
        throw DimensionError("training plan: S_A and S_U must have the same, non-zero number of columns");
    if (ris_blocks_.size() < 2)
        throw DimensionError("training plan: need N+1 >= 2 RIS blocks");
    const auto N = static_cast<int>(ris_blocks_.size()) - 1;
    for (const auto& b : ris_blocks_) {
        if (b.size() != N)
            throw DimensionError("training plan: every RIS block must have N = (blocks - 1) entries");
        for (Eigen::Index n = 0; n < N; ++n)
            if (std::abs(std::abs(b(n)) - 1.0) > 1e-12)
                throw DimensionError("training plan: RIS configurations must be unit modulus");
    }
    if (!(P_A_ >= 0.0) || !(P_U_ >= 0.0))
        throw DimensionError("training plan: powers must be >= 0");
    dims_ = SystemDims{static_cast<int>(S_A_.rows()), static_cast<int>(S_U_.rows()), N,
                       static_cast<int>(S_A_.cols())};
    dims_.validate();

    rows_.resize(T(), dims_.x_dim());
    for (int t = 0; t < T(); ++t)
        rows_.row(t) = x(t).transpose();
}

CVector TrainingPlan::x_A(int t) const
{
    return std::sqrt(P_A_) * S_A_.col(pilot_of(t));
}

CVector TrainingPlan::x_U(int t) const
{
    return std::sqrt(P_U_) * S_U_.col(pilot_of(t));
}

CVector TrainingPlan::x(int t) const
{
    return assemble_x_t(x_A(t), x_U(t), phi(t));
}

TrainingPlan TrainingPlan::with_powers(double P_A, double P_U) const
{
    return TrainingPlan(scheme_, S_A_, S_U_, ris_blocks_, P_A, P_U);
}

CMatrix assemble_X(const TrainingPlan& plan)
{
    const auto& d = plan.dims();
    if (plan.T() < d.x_dim())
        throw DimensionError("assemble_X: training length T=" + std::to_string(plan.T()) +
                             " is below the identifiability bound (M+K)(N+1)=" + std::to_string(d.x_dim()));
    return kron(plan.regressor_rows(), CMatrix::Identity(d.M, d.M));
}

bool OrthogonalityReport::all_hold() const
{
    for (bool b : holds)
        if (!b)
            return false;
    return true;
}

OrthogonalityReport verify_orthogonality(const TrainingPlan& plan)
{
    const auto& d = plan.dims();
    const int T = plan.T();
    CMatrix phiphi = CMatrix::Zero(d.N, d.N);
    CVector phisum = CVector::Zero(d.N);
    CMatrix AA = CMatrix::Zero(d.M, d.M), UU = CMatrix::Zero(d.K, d.K), AU = CMatrix::Zero(d.M, d.K);
    for (int t = 0; t < T; ++t) {
        const CVector& p = plan.phi(t);
        const CVector xa = plan.x_A(t), xu = plan.x_U(t);
        phiphi += p * p.adjoint();
        phisum += p;
        AA += xa * xa.adjoint();
        UU += xu * xu.adjoint();
        AU += xa * xu.adjoint();
    }

    auto offdiag_max = [](CMatrix A) {
        A.diagonal().setZero();
        return A.size() ? A.cwiseAbs().maxCoeff() : 0.0;
    };
    const double escale = std::max({1e-300, AA.diagonal().cwiseAbs().maxCoeff(), UU.diagonal().cwiseAbs().maxCoeff()});

    OrthogonalityReport r;
    r.violation[0] = (phiphi - static_cast<double>(T) * CMatrix::Identity(d.N, d.N)).cwiseAbs().maxCoeff() / T;
    r.violation[1] = phisum.cwiseAbs().maxCoeff() / T;
    r.violation[2] = offdiag_max(AA) / escale;
    r.violation[3] = offdiag_max(UU) / escale;
    r.violation[4] = AU.cwiseAbs().maxCoeff() / escale;
    for (int i = 0; i < 5; ++i)
        r.holds[i] = r.violation[i] < OrthogonalityReport::kTolerance;
    r.energy_A = AA.diagonal().real();
    r.energy_U = UU.diagonal().real();

    const CMatrix& rows = plan.regressor_rows();
    const CMatrix gram = rows.adjoint() * rows;  // X^H X = gram kron I_M
    r.normal_offdiag = offdiag_ratio(gram);
    r.normal_diagonal = r.normal_offdiag < OrthogonalityReport::kTolerance && gram.diagonal().real().minCoeff() > 0.0;
    return r;
}

TrainingEnergy training_energy(const TrainingPlan& plan)
{
    const double blocks = plan.dims().N + 1;
    return {plan.P_A() * blocks * plan.S_A().squaredNorm(), plan.P_U() * blocks * plan.S_U().squaredNorm()};
}

PowerPair equalize_energy(const TrainingPlan& reference, const TrainingPlan& target)
{
    const auto& a = reference.dims();
    const auto& b = target.dims();
    if (a.M != b.M || a.K != b.K || a.N != b.N)
        throw DimensionError("equalize_energy: plans must share M, K and N");
    const TrainingEnergy ref = training_energy(reference);
    const double blocks = b.N + 1;
    const double basis_A = blocks * target.S_A().squaredNorm();
    const double basis_U = blocks * target.S_U().squaredNorm();
    if (basis_A <= 0.0 || basis_U <= 0.0)
        throw DimensionError("equalize_energy: target pilot basis carries no energy");
    return {ref.E_A / basis_A, ref.E_U / basis_U};
}

std::uint64_t schedule_hash(const TrainingPlan& plan)
{
    // FNV-1a over the raw doubles of the pilot bases and RIS blocks
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto eat = [&h](double v) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    auto eat_matrix = [&](const CMatrix& A) {
        for (Eigen::Index i = 0; i < A.size(); ++i) {
            eat(A.data()[i].real());
            eat(A.data()[i].imag());
        }
    };
    eat_matrix(plan.S_A());
    eat_matrix(plan.S_U());
    for (const auto& b : plan.ris_blocks())
        eat_matrix(b);
    return h;
}

void write_plan_summary(std::ostream& os, const TrainingPlan& plan)
{
    const auto& d = plan.dims();
    char buf[64];
    os << "risfd-plan v1\n";
    os << "scheme " << scheme_id(plan.scheme()) << ' ' << scheme_name(plan.scheme()) << '\n';
    os << "dims M=" << d.M << " K=" << d.K << " N=" << d.N << " L=" << d.L << " T=" << d.T() << '\n';
    std::snprintf(buf, sizeof buf, "%.17g %.17g", plan.P_A(), plan.P_U());
    os << "powers " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(schedule_hash(plan)));
    os << "schedule_hash " << buf << '\n';
}

} // namespace risfd
