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
#include "risfd/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "risfd/config.hpp"

namespace risfd {

void SimConfig::validate() const
{
    SystemDims{M, K, N, 1}.validate();
    if (M < K)
        throw DimensionError("config: M must be >= K (the pilot constructions need M >= K)");
    geometry.validate();
    if (!(kappa_ris >= 0.0))
        throw DimensionError("config: kappa_ris must be >= 0");
    for (double s : {sigma2_tA, sigma2_tU, sigma2_rA})
        if (!(s >= 0.0) || !std::isfinite(s))
            throw DimensionError("config: impairment severities must be finite and >= 0");
    if (!std::isfinite(snr_db))
        throw DimensionError("config: snr_db must be finite");
    if (trials < 1)
        throw DimensionError("config: trials must be >= 1");
    if (schemes.empty() || snr_db_grid.empty() || kappa_grid.empty() || n_grid.empty())
        throw DimensionError("config: grids and the scheme list must be non-empty");
    for (double v : snr_db_grid)
        if (!std::isfinite(v))
            throw DimensionError("config: snr_db_grid entries must be finite");
    for (double v : kappa_grid)
        if (!(v >= 0.0))
            throw DimensionError("config: kappa_grid entries must be >= 0");
    for (int n : n_grid)
        if (n < 1)
            throw DimensionError("config: n_grid entries must be >= 1");
    if (!(reference_power > 0.0) || !std::isfinite(reference_power))
        throw DimensionError("config: reference_power must be positive");
    if (T != 0) {
        if (T < 0 || T % (N + 1) != 0)
            throw DimensionError("config: T = " + std::to_string(T) + " is not a multiple of N + 1 = " +
                                 std::to_string(N + 1));
        for (auto s : schemes)
            if (scheme_training_length(s, M, K, N) != T)
                throw DimensionError("config: T = " + std::to_string(T) + " does not match " + scheme_name(s) +
                                     ", which needs T = " + std::to_string(scheme_training_length(s, M, K, N)));
    }
}

std::string axis_name(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::Snr: return "snr";
    case SweepAxis::Kappa: return "kappa";
    case SweepAxis::N: return "n";
    }
    return "unknown";
}

int axis_size(const SimConfig& cfg, SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::Snr: return static_cast<int>(cfg.snr_db_grid.size());
    case SweepAxis::Kappa: return static_cast<int>(cfg.kappa_grid.size());
    case SweepAxis::N: return static_cast<int>(cfg.n_grid.size());
    }
    return 0;
}

PointSetup prepare_point(const SimConfig& cfg, SweepAxis axis, int point_index, PilotScheme scheme)
{
    if (point_index < 0 || point_index >= axis_size(cfg, axis))
        throw DimensionError("prepare_point: grid index out of range");
    int N = cfg.N;
    double kappa = cfg.kappa_ris;
    double snr = cfg.snr_db;
    double value = 0.0;
    switch (axis) {
    case SweepAxis::Snr: value = snr = cfg.snr_db_grid[point_index]; break;
    case SweepAxis::Kappa: value = kappa = cfg.kappa_grid[point_index]; break;
    case SweepAxis::N:
        N = cfg.n_grid[point_index];
        value = N;
        break;
    }

    const double P = cfg.reference_power;
    const TrainingPlan reference(cfg.energy_reference, cfg.M, cfg.K, N, P, P);
    const TrainingPlan base(scheme, cfg.M, cfg.K, N, P, P);
    const PowerPair pw = equalize_energy(reference, base);
    TrainingPlan plan = base.with_powers(pw.P_A, pw.P_U);

    ImpairmentProfile profile;
    profile.kappa_ris = kappa;
    profile.sigma2_tA = cfg.sigma2_tA;
    profile.sigma2_tU = cfg.sigma2_tU;
    profile.sigma2_rA = cfg.sigma2_rA;
    profile.P_A = plan.P_A();
    profile.P_U = plan.P_U();
    profile.validate();

    const double sigma2 = P / std::pow(10.0, snr / 10.0);
    ErrorStats stats = aggregate_stats(plan, profile);
    LinearEstimator ls = LinearEstimator::least_squares(plan);
    LinearEstimator hi = LinearEstimator::hi_aware(plan, stats);
    std::optional<MsePredictor> predictor;
    if (cfg.predict_mse)
        predictor.emplace(plan, stats, hi);
    const double mls = mse_ls(plan, sigma2);

    return PointSetup{point_index,
                      value,
                      scheme,
                      plan.dims(),
                      cfg.geometry,
                      profile,
                      sigma2,
                      mls,
                      cfg.signal,
                      cfg.mse_variant,
                      cfg.predict_mse,
                      std::move(plan),
                      std::move(stats),
                      std::move(ls),
                      std::move(hi),
                      std::move(predictor)};
}

CVector simulate_received(const ChannelSet& ch, const TrainingPlan& plan, const ImpairmentProfile& profile,
                          double sigma2, Rng& rng, const SignalOptions& opts)
{
    ch.validate();
    const SystemDims& d = plan.dims();
    if (ch.M() != d.M || ch.K() != d.K || ch.N() != d.N)
        throw DimensionError("simulate_received: channel and plan dimensions differ");
    if (!(sigma2 >= 0.0))
        throw DimensionError("simulate_received: noise power must be >= 0");

    const int M = d.M, K = d.K, N = d.N, T = d.T();
    const bool ideal_ris = std::isinf(profile.kappa_ris);

    // per-block receiver distortion standard deviations
    std::vector<RVector> rx_std;
    if (profile.sigma2_rA > 0.0) {
        for (const auto& blk : plan.ris_blocks()) {
            const CMatrix cov = receiver_hi_cov(compute_gamma(ch, blk, profile, opts.gamma_form), profile.sigma2_rA);
            rx_std.push_back(cov.diagonal().real().cwiseSqrt());
        }
    }

    CVector y(static_cast<Eigen::Index>(T) * M);
    CVector offsets = CVector::Ones(N);
    for (int t = 0; t < T; ++t) {
        const bool redraw = opts.per_block_offsets ? plan.pilot_of(t) == 0 : true;
        if (redraw && !ideal_ris)
            offsets = sample_phase_offsets(N, profile.kappa_ris, rng).phi_tilde;

        CVector s_A = plan.x_A(t);
        CVector s_U = plan.x_U(t);
        if (profile.sigma2_tA > 0.0)
            s_A += complex_gaussian_matrix(rng, M, 1, profile.tx_var_A());
        if (profile.sigma2_tU > 0.0)
            s_U += complex_gaussian_matrix(rng, K, 1, profile.tx_var_U());

        const CVector ris = offsets.cwiseProduct(plan.phi(t));
        const CMatrix R = ch.H_RA * ris.asDiagonal();
        CVector z = ch.G_A * s_A + R * (ch.H_AR * s_A) + ch.H_UA * s_U + R * (ch.H_UR * s_U);

        if (!rx_std.empty()) {
            const RVector& sd = rx_std[plan.block_of(t)];
            for (int m = 0; m < M; ++m)
                z(m) += complex_gaussian(rng, sd(m) * sd(m));
        }
        if (sigma2 > 0.0)
            for (int m = 0; m < M; ++m)
                z(m) += complex_gaussian(rng, sigma2);
        y.segment(static_cast<Eigen::Index>(t) * M, M) = z;
    }
    return y;
}

double nmse(const CVector& h, const CVector& h_hat)
{
    if (h.size() != h_hat.size())
        throw DimensionError("nmse: length mismatch");
    const double hn = h.squaredNorm();
    if (!(hn > 0.0))
        throw DimensionError("nmse: true channel is zero");
    return (h - h_hat).squaredNorm() / hn;
}

std::uint64_t trial_seed(std::uint64_t master_seed, int point_index, int trial_index)
{
    return derive_seed(master_seed, {static_cast<std::uint64_t>(point_index), static_cast<std::uint64_t>(trial_index)});
}

TrialRecord run_trial(const PointSetup& setup, std::uint64_t master_seed, int trial_index)
{
    TrialRecord rec;
    rec.trial = trial_index;
    rec.seed = trial_seed(master_seed, setup.point_index, trial_index);
    rec.pred_nmse_ls = rec.pred_nmse_hi = NAN;
    try {
        // channels depend only on (point, trial) so that schemes see the same draws
        const ChannelSet ch = sample_channels(setup.dims, setup.geometry, derive_seed(rec.seed, {1}));
        Rng rng = make_rng(derive_seed(rec.seed, {2, static_cast<std::uint64_t>(scheme_id(setup.scheme))}));
        const CVector h = stack_h(ch);
        const CVector y = simulate_received(ch, setup.plan, setup.profile, setup.sigma2, rng, setup.signal);

        const EstimateResult ls = setup.ls.estimate(y);
        const EstimateResult hi = setup.hi.estimate(y);
        const double hn = h.squaredNorm();
        rec.nmse_ls = nmse(h, ls.h_hat);
        rec.nmse_hi = nmse(h, hi.h_hat);
        rec.bias_ls = (ls.h_hat - h).dot(h).real() / hn;
        rec.bias_hi = (hi.h_hat - h).dot(h).real() / hn;
        rec.path_ls = ls.solver_path;
        rec.path_hi = hi.solver_path;
        if (!std::isfinite(rec.nmse_ls) || !std::isfinite(rec.nmse_hi))
            throw NumericalError("non-finite NMSE");

        if (setup.predict_mse && setup.predictor) {
            rec.pred_nmse_ls = setup.mse_ls_value / hn;
            const CMatrix Sr = averaged_receiver_cov(ch, setup.plan, setup.profile, setup.signal.gamma_form);
            rec.pred_nmse_hi = setup.predictor->predict(h, setup.sigma2, Sr, setup.mse_variant) / hn;
        }
    } catch (const std::exception& e) {
        rec.faulted = true;
        rec.fault = e.what();
    }
    return rec;
}

namespace {

void finish(const std::vector<double>& v, double& mean, double& se)
{
    const auto n = static_cast<double>(v.size());
    if (v.empty()) {
        mean = se = NAN;
        return;
    }
    double s = 0.0;
    for (double x : v)
        s += x;
    mean = s / n;
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

} // namespace

PointSummary summarize(const std::vector<TrialRecord>& records)
{
    PointSummary s;
    std::vector<double> ls, hi, gap, bls, bhi, pls, phi;
    for (const auto& r : records) {
        if (r.faulted) {
            ++s.faulted;
            continue;
        }
        ls.push_back(r.nmse_ls);
        hi.push_back(r.nmse_hi);
        gap.push_back(r.nmse_ls - r.nmse_hi);
        bls.push_back(r.bias_ls);
        bhi.push_back(r.bias_hi);
        pls.push_back(r.pred_nmse_ls);
        phi.push_back(r.pred_nmse_hi);
    }
    s.trials = static_cast<int>(ls.size());
    double unused = 0.0;
    finish(ls, s.mean_nmse_ls, s.stderr_nmse_ls);
    finish(hi, s.mean_nmse_hi, s.stderr_nmse_hi);
    finish(gap, s.mean_gap, s.stderr_gap);
    finish(bls, s.mean_bias_ls, unused);
    finish(bhi, s.mean_bias_hi, unused);
    finish(pls, s.mean_pred_ls, unused);
    finish(phi, s.mean_pred_hi, unused);
    return s;
}

std::vector<TrialRecord> run_trials(const PointSetup& setup, std::uint64_t master_seed, int trials, int threads)
{
    if (trials < 1)
        throw DimensionError("run_trials: trials must be >= 1");
    std::vector<TrialRecord> out(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1))
            out[static_cast<std::size_t>(i)] = run_trial(setup, master_seed, i);
    };
    const int nt = std::max(1, std::min(threads, trials));
    if (nt == 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int i = 0; i < nt; ++i)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    return out;
}

SweepResult run_sweep(const SimConfig& cfg, SweepAxis axis, int threads)
{
    cfg.validate();
    SweepResult res;
    res.config_hash = config_hash(cfg);
    res.axis = axis;
    const int n = axis_size(cfg, axis);
    for (auto scheme : cfg.schemes) {
        for (int p = 0; p < n; ++p) {
            const PointSetup setup = prepare_point(cfg, axis, p, scheme);
            auto recs = run_trials(setup, cfg.master_seed, cfg.trials, threads);
            PointSummary sum = summarize(recs);
            sum.point_index = p;
            sum.scheme = scheme;
            sum.value = setup.value;
            res.points.push_back(sum);
            res.records.push_back(std::move(recs));
        }
    }
    return res;
}

} // namespace risfd
