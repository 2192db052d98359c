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
#ifndef RISFD_IMPAIRMENTS_HPP
#define RISFD_IMPAIRMENTS_HPP

#include <vector>

#include "risfd/channel.hpp"
#include "risfd/random.hpp"

namespace risfd {

/// Severity of the hardware impairments plus the transmit powers they scale with.
///
/// kappa_ris is the von Mises concentration of the RIS phase offsets; +infinity
/// means an ideal RIS (offsets identically zero, phi == 1).
struct ImpairmentProfile {
    double kappa_ris = INFINITY;
    double sigma2_tA = 0.0;
    double sigma2_tU = 0.0;
    double sigma2_rA = 0.0;
    double P_A = 1.0;
    double P_U = 1.0;

    /// E[exp(j theta)] of a single RIS phase offset, I1(kappa)/I0(kappa).
    double phi() const;
    double tx_var_A() const { return sigma2_tA * P_A; }
    double tx_var_U() const { return sigma2_tU * P_U; }
    /// Sigma_tA = sigma2_tA P_A I_M.
    CMatrix Sigma_tA(int M) const;
    /// Sigma_tU = sigma2_tU P_U I_K.
    CMatrix Sigma_tU(int K) const;

    /// True when every severity is zero and the RIS is ideal.
    bool ideal() const;
    void validate() const;

    static ImpairmentProfile ideal_hardware(double P_A = 1.0, double P_U = 1.0);
    /// Same severity sigma2 on all three transceiver impairments.
    static ImpairmentProfile uniform(double kappa, double sigma2, double P_A = 1.0, double P_U = 1.0);
};

/// One draw of the RIS phase offsets.
struct RisRealization {
    RVector theta_offsets;  ///< N angles in [-pi, pi)
    CVector phi_tilde;      ///< exp(j theta_offsets)
};

/// I1(kappa)/I0(kappa), for kappa >= 0 (kappa = +inf gives 1).
/// Ascending series for kappa <= 15, asymptotic ratio expansion above.
double bessel_ratio(double kappa);

namespace detail {
double bessel_ratio_series(double kappa);
double bessel_ratio_asymptotic(double kappa);
} // namespace detail

/// Draws one von Mises VM(0, kappa) angle (Best-Fisher rejection; uniform when kappa == 0).
double sample_von_mises(Rng& rng, double kappa);

RisRealization sample_phase_offsets(int N, double kappa, Rng& rng);

enum class TxSide { AP, UE };

/// T i.i.d. transmitter distortion vectors, CN(0, Sigma_tA) (length M) or CN(0, Sigma_tU) (length K).
std::vector<CVector> sample_tx_hi(const ImpairmentProfile& profile, TxSide side, int dim, int count, Rng& rng);

/// Which expression to evaluate for the received-signal covariance Gamma.
enum class GammaForm {
    /// Exact second moment of the impairment-free received signal: Hermitian,
    /// UE direct term P_U H_UA H_UA^H, RIS diagonal term (1-phi^2) I_N o (H H^H).
    kMoment,
    /// The closed form as printed in the source derivation: UE direct term
    /// P_U H_UA G_A^H and RIS diagonal term (1-phi^2) I_N. Not Hermitian in general.
    kAsPrinted,
};

/// Covariance of the received signal with transceiver impairments and noise
/// removed, for RIS configuration phi_vec (N unit-modulus entries).
CMatrix compute_gamma(const ChannelSet& ch, const CVector& phi_vec, const ImpairmentProfile& profile,
                      GammaForm form = GammaForm::kMoment);

/// Sigma_rA = sigma2_rA (I_M o Gamma). Rejects diagonal entries of Gamma below -1e-10.
CMatrix receiver_hi_cov(const CMatrix& gamma, double sigma2_rA);

} // namespace risfd

#endif // RISFD_IMPAIRMENTS_HPP
