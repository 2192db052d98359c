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
#ifndef RISFD_TRAINING_HPP
#define RISFD_TRAINING_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "risfd/channel.hpp"

namespace risfd {

/// Orthogonal pilot constructions. Scheme 1 is full duplex, 2 and 3 are half duplex.
enum class PilotScheme { FdScheme1 = 1, HdScheme2 = 2, HdScheme3 = 3 };

PilotScheme scheme_from_int(int id);
int scheme_id(PilotScheme s);
std::string scheme_name(PilotScheme s);

/// Pilot bases of one scheme, before power scaling.
struct PilotBasis {
    CMatrix S_A;  ///< M x L
    CMatrix S_U;  ///< K x L
    int L = 0;
};

/// Immutable description of a training period: N+1 RIS blocks of L pilots each.
/// Within block b the RIS holds configuration ris_blocks[b] and the AP/UEs cycle
/// through the columns of sqrt(P_A) S_A and sqrt(P_U) S_U.
class TrainingPlan {
public:
    TrainingPlan(PilotScheme scheme, int M, int K, int N, double P_A, double P_U);
    /// Arbitrary bases and RIS blocks; used for counterexamples and custom designs.
    TrainingPlan(PilotScheme scheme, CMatrix S_A, CMatrix S_U, std::vector<CVector> ris_blocks, double P_A,
                 double P_U);

    PilotScheme scheme() const { return scheme_; }
    const SystemDims& dims() const { return dims_; }
    const CMatrix& S_A() const { return S_A_; }
    const CMatrix& S_U() const { return S_U_; }
    double P_A() const { return P_A_; }
    double P_U() const { return P_U_; }
    int T() const { return dims_.T(); }
    int block_of(int t) const { return t / dims_.L; }
    int pilot_of(int t) const { return t % dims_.L; }

    const std::vector<CVector>& ris_blocks() const { return ris_blocks_; }
    const CVector& phi(int t) const { return ris_blocks_[block_of(t)]; }
    CVector x_A(int t) const;
    CVector x_U(int t) const;
    /// x_t = [x_A; phi_t kron x_A; x_U; phi_t kron x_U].
    CVector x(int t) const;

    /// T x (M+K)(N+1) matrix whose row t is x_t^T, so that X = rows kron I_M.
    const CMatrix& regressor_rows() const { return rows_; }

    /// Same design at different transmit powers.
    TrainingPlan with_powers(double P_A, double P_U) const;

private:
    void finish();

    PilotScheme scheme_;
    SystemDims dims_;
    CMatrix S_A_, S_U_;
    std::vector<CVector> ris_blocks_;
    double P_A_, P_U_;
    CMatrix rows_;
};

/// K x M matrix [Q_K, ..., Q_K, [Q_r; 0]] with q = M / K copies and r = M mod K.
CMatrix build_P(int M, int K);

PilotBasis build_pilots(PilotScheme scheme, int M, int K);

/// Training length of a scheme: 2M(N+1) for schemes 1 and 2, (M+K)(N+1) for scheme 3.
int scheme_training_length(PilotScheme scheme, int M, int K, int N);

/// T RIS configurations: block b repeats rows 1..N of column b of the (N+1)-point DFT, L times.
std::vector<CVector> build_ris_schedule(int N, int L);

CVector assemble_x_t(const CVector& x_A, const CVector& x_U, const CVector& phi_t);

/// Dense TM x M(M+K)(N+1) regressor. Rejects plans with T < (M+K)(N+1).
CMatrix assemble_X(const TrainingPlan& plan);

/// Outcome of checking the five orthogonality conditions. Violations are relative
/// to the natural scale of each sum (T for the RIS sums, the largest pilot energy otherwise).
struct OrthogonalityReport {
    static constexpr double kTolerance = 1e-9;
    std::array<bool, 5> holds{};
    std::array<double, 5> violation{};
    bool normal_diagonal = false;
    double normal_offdiag = 0.0;
    RVector energy_A;  ///< diagonal of sum_t x_A,t x_A,t^H
    RVector energy_U;  ///< diagonal of sum_t x_U,t x_U,t^H

    bool all_hold() const;
};

OrthogonalityReport verify_orthogonality(const TrainingPlan& plan);

struct TrainingEnergy {
    double E_A = 0.0;
    double E_U = 0.0;
};

/// E_A = P_A (N+1) Tr(S_A S_A^H), E_U = P_U (N+1) Tr(S_U S_U^H).
TrainingEnergy training_energy(const TrainingPlan& plan);

struct PowerPair {
    double P_A = 0.0;
    double P_U = 0.0;
};

/// Powers that give \p target the same total AP and UE training energy as \p reference.
PowerPair equalize_energy(const TrainingPlan& reference, const TrainingPlan& target);

/// Provenance dump: scheme, dims, powers and a hash of the pilot/RIS schedule.
void write_plan_summary(std::ostream& os, const TrainingPlan& plan);
std::uint64_t schedule_hash(const TrainingPlan& plan);

} // namespace risfd

#endif // RISFD_TRAINING_HPP
