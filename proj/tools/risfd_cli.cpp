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
// Command-line front end: NMSE sweeps, pilot-plan verification and the
// Monte-Carlo check of the impairment statistics.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "risfd/config.hpp"
#include "risfd/report.hpp"

namespace fs = std::filesystem;
using namespace risfd;

namespace {

struct Options {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::optional<int> scheme;
    std::string variant;
    int draws = 100000;
};

SimConfig resolve(const Options& o)
{
    SimConfig cfg = o.config.empty() ? SimConfig{} : load_config(o.config);
    if (o.seed)
        cfg.master_seed = *o.seed;
    if (o.scheme)
        cfg.schemes = {scheme_from_int(*o.scheme)};
    if (o.variant == "centered")
        cfg.mse_variant = MseVariant::Centered;
    else if (o.variant == "moment")
        cfg.mse_variant = MseVariant::Moment;
    cfg.validate();
    return cfg;
}

std::string utc_now()
{
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const fs::path& p, const std::string& body, RunManifest& m)
{
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + p.string());
    f << body;
    if (!f)
        throw std::runtime_error("write failed for " + p.string());
    m.outputs.push_back(p.filename().string());
}

void finish_manifest(const fs::path& path, RunManifest& m, std::chrono::steady_clock::time_point t0)
{
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream f(path);
    write_manifest(f, m);
}

int run_sweep_command(const Options& o, SweepAxis axis)
{
    const auto t0 = std::chrono::steady_clock::now();
    const SimConfig cfg = resolve(o);
    const fs::path out(o.out);
    fs::create_directories(out);
    const std::string tag = axis_name(axis);

    RunManifest m;
    m.command = "sweep-" + tag;
    m.version = version();
    m.config_text = to_text(cfg);
    m.config_hash = config_hash(cfg);
    m.master_seed = cfg.master_seed;
    m.threads = o.threads;
    m.started_utc = utc_now();
    const fs::path manifest = out / ("manifest_" + tag + ".txt");
    try {
        const SweepResult r = run_sweep(cfg, axis, o.threads);
        for (auto s : cfg.schemes) {
            const std::string stem = tag + "_scheme" + std::to_string(scheme_id(s));
            std::ostringstream csv, trials, ls, hi;
            write_sweep_csv(csv, r, s);
            write_trials_csv(trials, r, s);
            write_plot_data(ls, r, s, Curve::Ls);
            write_plot_data(hi, r, s, Curve::Hi);
            write_file(out / ("sweep_" + stem + ".csv"), csv.str(), m);
            write_file(out / ("trials_" + stem + ".csv"), trials.str(), m);
            write_file(out / ("plot_" + stem + "_ls.dat"), ls.str(), m);
            write_file(out / ("plot_" + stem + "_hi.dat"), hi.str(), m);
        }
        int faulted = 0;
        for (const auto& p : r.points) {
            std::printf("scheme %d  %s = %-8g  nmse_ls = %.4e (%.1e)  nmse_hi = %.4e (%.1e)  faulted = %d\n",
                        scheme_id(p.scheme), tag.c_str(), p.value, p.mean_nmse_ls, p.stderr_nmse_ls, p.mean_nmse_hi,
                        p.stderr_nmse_hi, p.faulted);
            faulted += p.faulted;
        }
        if (faulted > 0)
            std::fprintf(stderr, "warning: %d faulted trials (see trials_*.csv)\n", faulted);
    } catch (const std::exception& e) {
        m.partial = true;
        m.error = e.what();
        finish_manifest(manifest, m, t0);
        throw;
    }
    finish_manifest(manifest, m, t0);
    std::printf("wrote %zu files and %s\n", m.outputs.size(), manifest.string().c_str());
    return 0;
}

int run_verify_plan(const Options& o)
{
    const SimConfig cfg = resolve(o);
    const fs::path out(o.out);
    fs::create_directories(out);
    std::vector<PilotScheme> schemes = cfg.schemes;
    if (!o.scheme)
        schemes = {PilotScheme::FdScheme1, PilotScheme::HdScheme2, PilotScheme::HdScheme3};

    std::ostringstream rep;
    bool ok = true;
    for (auto s : schemes) {
        const TrainingPlan plan(s, cfg.M, cfg.K, cfg.N, cfg.reference_power, cfg.reference_power);
        const OrthogonalityReport r = verify_orthogonality(plan);
        write_plan_summary(rep, plan);
        for (int i = 0; i < 5; ++i)
            rep << "condition " << (i + 1) << " " << (r.holds[i] ? "pass" : "FAIL") << " violation " << r.violation[i]
                << "\n";
        rep << "normal_matrix_diagonal " << (r.normal_diagonal ? "yes" : "NO") << " offdiag " << r.normal_offdiag
            << "\n\n";
        ok = ok && r.all_hold() && r.normal_diagonal;
    }
    rep << (ok ? "all conditions pass\n" : "some conditions FAIL\n");
    std::ofstream(out / "verify_plan.txt") << rep.str();
    std::cout << rep.str();
    return ok ? 0 : 1;
}

int run_stats_oracle(const Options& o)
{
    const SimConfig cfg = resolve(o);
    const fs::path out(o.out);
    fs::create_directories(out);
    const double P = cfg.reference_power;
    const TrainingPlan plan(cfg.schemes.front(), cfg.M, cfg.K, cfg.N, P, P);
    ImpairmentProfile prof;
    prof.kappa_ris = cfg.kappa_ris;
    prof.sigma2_tA = cfg.sigma2_tA;
    prof.sigma2_tU = cfg.sigma2_tU;
    prof.sigma2_rA = cfg.sigma2_rA;
    prof.P_A = plan.P_A();
    prof.P_U = plan.P_U();

    std::ostringstream rep;
    rep << "risfd-stats-oracle v1\n"
        << "dims M " << cfg.M << " K " << cfg.K << " N " << cfg.N << " kappa " << cfg.kappa_ris << " phi "
        << prof.phi() << " draws " << o.draws << "\n";
    const int T = plan.T();
    const std::vector<int> instants = T > 2 ? std::vector<int>{0, T / 2, T - 1} : std::vector<int>{0};
    Rng rng = make_rng(derive_seed(cfg.master_seed, {7}));
    for (int t : instants) {
        const CVector xA = plan.x_A(t), xU = plan.x_U(t);
        const CVector& ph = plan.phi(t);
        const SampledMoments s = sample_error_moments(xA, xU, ph, prof, o.draws, rng);
        const double dm = (s.mean - mean_e_t(xA, xU, ph, prof)).cwiseAbs().maxCoeff();
        const double dc = (s.corr - corr_e_t(xA, xU, ph, prof)).cwiseAbs().maxCoeff();
        rep << "t " << t << " max_mean_deviation " << dm << " max_corr_deviation " << dc << "\n";
    }
    std::ofstream(out / "stats_oracle.txt") << rep.str();
    std::cout << rep.str();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"risfd: channel estimation for RIS-assisted full-duplex MIMO with hardware impairments"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config, "key-value configuration file (default: built-in desk config)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output directory")->capture_default_str();
        sub->add_option("--seed", o.seed, "master seed, overrides the configuration");
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--scheme", o.scheme, "restrict to one pilot scheme")->check(CLI::IsMember({1, 2, 3}));
        sub->add_option("--variant", o.variant, "closed-form MSE variant")
            ->check(CLI::IsMember({"moment", "centered"}));
    };

    auto* snr = app.add_subcommand("sweep-snr", "NMSE versus SNR");
    auto* kap = app.add_subcommand("sweep-kappa", "NMSE versus RIS phase-offset concentration");
    auto* nn = app.add_subcommand("sweep-n", "NMSE versus number of RIS elements");
    auto* vp = app.add_subcommand("verify-plan", "check the pilot orthogonality conditions");
    auto* so = app.add_subcommand("stats-oracle", "compare closed-form error statistics with sampled ones");
    for (auto* s : {snr, kap, nn, vp, so})
        common(s);
    so->add_option("--draws", o.draws, "Monte-Carlo draws per pilot instant")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        if (snr->parsed())
            return run_sweep_command(o, SweepAxis::Snr);
        if (kap->parsed())
            return run_sweep_command(o, SweepAxis::Kappa);
        if (nn->parsed())
            return run_sweep_command(o, SweepAxis::N);
        if (vp->parsed())
            return run_verify_plan(o);
        if (so->parsed())
            return run_stats_oracle(o);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
