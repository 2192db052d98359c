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
#include "risfd/impairments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace risfd {

namespace {
constexpr double kSeriesLimit = 15.0;
constexpr double kPi = std::numbers::pi;
} // namespace

namespace detail {

double bessel_ratio_series(double kappa)
{
    // I0 = sum t^k/(k!)^2, I1 = (kappa/2) sum t^k/(k!(k+1)!), t = kappa^2/4
    const long double t = 0.25L * kappa * kappa;
    long double a = 1.0L, s0 = 0.0L, s1 = 0.0L;
    for (int k = 0; k < 500; ++k) {
        s0 += a;
        s1 += a / (k + 1);
        if (a < 1e-21L * s0)
            break;
        a *= t / ((k + 1.0L) * (k + 1.0L));
    }
    return static_cast<double>(0.5L * kappa * s1 / s0);
}

double bessel_ratio_asymptotic(double kappa)
{
    // I_nu(x) ~ e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(nu) / x^k; the prefactor cancels in the ratio.
    auto series = [kappa](double nu) {
        const long double mu = 4.0L * nu * nu;
        long double term = 1.0L, sum = 1.0L;
        for (int k = 1; k < 200; ++k) {
            const long double odd = 2.0L * k - 1.0L;
            const long double next = term * (odd * odd - mu) / (8.0L * k * kappa);
            if (std::fabs(next) >= std::fabs(term) && k > 2)
                break;
            term = next;
            sum += term;
            if (term == 0.0L)
                break;
        }
        return sum;
    };
    return static_cast<double>(series(1.0) / series(0.0));
}

} // namespace detail

double bessel_ratio(double kappa)
{
    if (std::isnan(kappa) || kappa < 0.0)
        throw DimensionError("bessel_ratio: kappa must be >= 0");
    if (std::isinf(kappa))
        return 1.0;
    if (kappa == 0.0)
        return 0.0;
    return kappa <= kSeriesLimit ? detail::bessel_ratio_series(kappa) : detail::bessel_ratio_asymptotic(kappa);
}

double ImpairmentProfile::phi() const
{
    return bessel_ratio(kappa_ris);
}

CMatrix ImpairmentProfile::Sigma_tA(int M) const
{
    return tx_var_A() * CMatrix::Identity(M, M);
}

CMatrix ImpairmentProfile::Sigma_tU(int K) const
{
    return tx_var_U() * CMatrix::Identity(K, K);
}

bool ImpairmentProfile::ideal() const
{
    return std::isinf(kappa_ris) && sigma2_tA == 0.0 && sigma2_tU == 0.0 && sigma2_rA == 0.0;
}

void ImpairmentProfile::validate() const
{
    if (std::isnan(kappa_ris) || kappa_ris < 0.0)
        throw DimensionError("impairments: kappa_ris must be >= 0");
    for (double s : {sigma2_tA, sigma2_tU, sigma2_rA})
        if (!(s >= 0.0) || !std::isfinite(s))
            throw DimensionError("impairments: severities must be finite and >= 0");
    if (!(P_A >= 0.0) || !(P_U >= 0.0) || !std::isfinite(P_A) || !std::isfinite(P_U))
        throw DimensionError("impairments: transmit powers must be finite and >= 0");
}

ImpairmentProfile ImpairmentProfile::ideal_hardware(double P_A, double P_U)
{
    ImpairmentProfile p;
    p.P_A = P_A;
    p.P_U = P_U;
    return p;
}

ImpairmentProfile ImpairmentProfile::uniform(double kappa, double sigma2, double P_A, double P_U)
{
    return {kappa, sigma2, sigma2, sigma2, P_A, P_U};
}

double sample_von_mises(Rng& rng, double kappa)
{
    if (std::isinf(kappa))
        return 0.0;
    if (kappa == 0.0)
        return -kPi + 2.0 * kPi * uniform01(rng);

    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);

    double f = 1.0;
    for (;;) {
        const double z = std::cos(kPi * uniform01(rng));
        f = (1.0 + r * z) / (r + z);
        const double c = kappa * (r - f);
        const double u2 = uniform01(rng);
        if (c * (2.0 - c) - u2 > 0.0)
            break;
        if (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0)
            break;
    }
    double theta = std::acos(std::clamp(f, -1.0, 1.0));
    if (uniform01(rng) < 0.5)
        theta = -theta;
    if (theta >= kPi)
        theta = -kPi;
    return theta;
}

RisRealization sample_phase_offsets(int N, double kappa, Rng& rng)
{
    if (N < 1)
        throw DimensionError("sample_phase_offsets: N must be >= 1");
    if (std::isnan(kappa) || kappa < 0.0)
        throw DimensionError("sample_phase_offsets: kappa must be >= 0");
    RisRealization out{RVector(N), CVector(N)};
    for (int n = 0; n < N; ++n) {
        out.theta_offsets(n) = sample_von_mises(rng, kappa);
        out.phi_tilde(n) = std::polar(1.0, out.theta_offsets(n));
    }
    return out;
}

std::vector<CVector> sample_tx_hi(const ImpairmentProfile& profile, TxSide side, int dim, int count, Rng& rng)
{
    const double var = side == TxSide::AP ? profile.tx_var_A() : profile.tx_var_U();
    std::vector<CVector> out;
    out.reserve(count);
    for (int t = 0; t < count; ++t) {
        CVector d(dim);
        for (int i = 0; i < dim; ++i)
            d(i) = complex_gaussian(rng, var);
        out.push_back(std::move(d));
    }
    return out;
}

CMatrix compute_gamma(const ChannelSet& ch, const CVector& phi_vec, const ImpairmentProfile& profile, GammaForm form)
{
    ch.validate();
    const int N = ch.N();
    if (phi_vec.size() != N)
        throw DimensionError("compute_gamma: RIS configuration has wrong length");
    const double vphi = profile.phi();
    const double spread = 1.0 - vphi * vphi;

    // RIS-side second moment E[Phi~ B Phi~^H] for B = H H^H.
    auto ris_moment = [&](const CMatrix& H) -> CMatrix {
        const CMatrix B = H * H.adjoint();
        if (form == GammaForm::kAsPrinted)
            return vphi * vphi * B + spread * CMatrix::Identity(N, N);
        CMatrix out = vphi * vphi * B;
        out.diagonal() += spread * B.diagonal();
        return out;
    };

    const CMatrix RPhi = ch.H_RA * phi_vec.asDiagonal();
    const CMatrix casc_A = RPhi * ch.H_AR;  // H_RA Phi H_AR
    const CMatrix casc_U = RPhi * ch.H_UR;  // H_RA Phi H_UR

    CMatrix ap = ch.G_A * ch.G_A.adjoint() + vphi * ch.G_A * casc_A.adjoint() + vphi * casc_A * ch.G_A.adjoint() +
                 RPhi * ris_moment(ch.H_AR) * RPhi.adjoint();

    const CMatrix ue_direct =
        form == GammaForm::kAsPrinted ? CMatrix(ch.H_UA * ch.G_A.adjoint()) : CMatrix(ch.H_UA * ch.H_UA.adjoint());
    CMatrix ue = ue_direct + vphi * ch.H_UA * casc_U.adjoint() + vphi * casc_U * ch.H_UA.adjoint() +
                 RPhi * ris_moment(ch.H_UR) * RPhi.adjoint();

    return profile.P_A * ap + profile.P_U * ue;
}

CMatrix receiver_hi_cov(const CMatrix& gamma, double sigma2_rA)
{
    if (gamma.rows() != gamma.cols())
        throw DimensionError("receiver_hi_cov: Gamma must be square");
    if (sigma2_rA < 0.0)
        throw DimensionError("receiver_hi_cov: severity must be >= 0");
    CMatrix out = CMatrix::Zero(gamma.rows(), gamma.cols());
    for (Eigen::Index m = 0; m < gamma.rows(); ++m) {
        const double g = gamma(m, m).real();
        if (g < -1e-10)
            throw NumericalError("receiver_hi_cov: Gamma has a negative diagonal entry (" + std::to_string(g) + ")");
        out(m, m) = sigma2_rA * std::max(g, 0.0);
    }
    return out;
}

} // namespace risfd
