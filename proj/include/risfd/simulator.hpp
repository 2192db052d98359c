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
#ifndef RISFD_SIMULATOR_HPP
#define RISFD_SIMULATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risfd/estimators.hpp"

namespace risfd {

/// How the received training signal is synthesized.
struct SignalOptions {
    /// Redraw RIS phase offsets once per block instead of once per pilot instant.
    bool per_block_offsets = false;
    GammaForm gamma_form = GammaForm::kMoment;
};

/// Monte-Carlo experiment description. Base values (M, K, N, kappa_ris, snr_db)
/// are used for every axis that is not being swept.
struct SimConfig {
    int M = 3;
    int K = 2;
    int N = 8;
    Geometry geometry;
    double kappa_ris = 4.0;
    double sigma2_tA = 0.1;
    double sigma2_tU = 0.1;
    double sigma2_rA = 0.1;
    double snr_db = 20.0;
    std::vector<PilotScheme> schemes{PilotScheme::FdScheme1};
    std::vector<double> snr_db_grid{-10, -5, 0, 5, 10, 15, 20, 25, 30};
    std::vector<double> kappa_grid{0, 1, 2, 4, 8, 16};
    std::vector<int> n_grid{4, 8, 16};
    /// Optional explicit training length; 0 derives it from the scheme. When set it
    /// must be a multiple of N + 1 and match every listed scheme.
    int T = 0;
    int trials = 2000;
    std::uint64_t master_seed = 1;
    PilotScheme energy_reference = PilotScheme::FdScheme1;
    /// Reference per-antenna power P; SNR = P / sigma^2.
    double reference_power = 1.0;
    SignalOptions signal;
    MseVariant mse_variant = MseVariant::Centered;
    /// Also evaluate the closed-form MSEs for every trial.
    bool predict_mse = true;

    void validate() const;
};

enum class SweepAxis { Snr, Kappa, N };

std::string axis_name(SweepAxis axis);

/// Everything a grid point needs that does not depend on the channel draw.
struct PointSetup {
    int point_index = 0;
    double value = 0.0;
    PilotScheme scheme = PilotScheme::FdScheme1;
    SystemDims dims;
    Geometry geometry;
    ImpairmentProfile profile;
    double sigma2 = 0.0;
    /// sigma^2 Tr((X^H X)^{-1}) at this point.
    double mse_ls_value = 0.0;
    SignalOptions signal;
    MseVariant mse_variant = MseVariant::Centered;
    bool predict_mse = true;
    TrainingPlan plan;
    ErrorStats stats;
    LinearEstimator ls;
    LinearEstimator hi;
    std::optional<MsePredictor> predictor;
};

/// Resolves grid point \p point_index of \p axis for one scheme, applying energy equalization
/// against cfg.energy_reference.
PointSetup prepare_point(const SimConfig& cfg, SweepAxis axis, int point_index, PilotScheme scheme);

/// Number of grid points along an axis.
int axis_size(const SimConfig& cfg, SweepAxis axis);

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    double nmse_ls = 0.0;
    double nmse_hi = 0.0;
    /// Re<h_hat - h, h> / ||h||^2: signed bias of each estimate along the true channel.
    double bias_ls = 0.0;
    double bias_hi = 0.0;
    /// Closed-form predictions normalized by ||h||^2 (NaN when not evaluated).
    double pred_nmse_ls = 0.0;
    double pred_nmse_hi = 0.0;
    SolverPath path_ls = SolverPath::Dense;
    SolverPath path_hi = SolverPath::Dense;
    bool faulted = false;
    std::string fault;
};

/// Stacked received training vector (length T*M): one literal evaluation of the
/// impaired signal model per pilot instant.
CVector simulate_received(const ChannelSet& ch, const TrainingPlan& plan, const ImpairmentProfile& profile,
                          double sigma2, Rng& rng, const SignalOptions& opts = {});

/// ||h - h_hat||^2 / ||h||^2. Rejects h == 0 and length mismatches.
double nmse(const CVector& h, const CVector& h_hat);

/// Seed of one trial; depends only on (master seed, point index, trial index).
std::uint64_t trial_seed(std::uint64_t master_seed, int point_index, int trial_index);

/// One deterministic Monte-Carlo trial. Estimator failures are reported in the record.
TrialRecord run_trial(const PointSetup& setup, std::uint64_t master_seed, int trial_index);

struct PointSummary {
    int point_index = 0;
    PilotScheme scheme = PilotScheme::FdScheme1;
    double value = 0.0;
    double mean_nmse_ls = 0.0;
    double stderr_nmse_ls = 0.0;
    double mean_nmse_hi = 0.0;
    double stderr_nmse_hi = 0.0;
    /// Mean and standard error of the paired difference nmse_ls - nmse_hi.
    double mean_gap = 0.0;
    double stderr_gap = 0.0;
    double mean_bias_ls = 0.0;
    double mean_bias_hi = 0.0;
    double mean_pred_ls = 0.0;
    double mean_pred_hi = 0.0;
    int trials = 0;   ///< successful trials
    int faulted = 0;
};

/// Reduces records in index order.
PointSummary summarize(const std::vector<TrialRecord>& records);

struct SweepResult {
    std::uint64_t config_hash = 0;
    SweepAxis axis = SweepAxis::Snr;
    std::vector<PointSummary> points;
    std::vector<std::vector<TrialRecord>> records;  ///< parallel to points
};

/// Runs every (scheme, grid point) combination of an axis. The result is
/// identical for any thread count.
SweepResult run_sweep(const SimConfig& cfg, SweepAxis axis, int threads = 1);

/// Runs \p trials trials of one prepared point on \p threads workers.
std::vector<TrialRecord> run_trials(const PointSetup& setup, std::uint64_t master_seed, int trials, int threads);

} // namespace risfd

#endif // RISFD_SIMULATOR_HPP
