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
#include "risfd/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>

namespace risfd {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

} // namespace

std::string version()
{
    return "1.0.0";
}

void write_sweep_csv(std::ostream& os, const SweepResult& r, PilotScheme scheme)
{
    os << kCsvSchema << "\n" << kCsvColumns << "\n";
    for (const auto& p : r.points) {
        if (p.scheme != scheme)
            continue;
        os << num(p.value) << ',' << num(p.mean_nmse_ls) << ',' << num(p.mean_nmse_hi) << ','
           << num(p.stderr_nmse_ls) << ',' << num(p.stderr_nmse_hi) << ',' << p.trials << ',' << p.faulted << ','
           << num(p.mean_bias_ls) << ',' << num(p.mean_bias_hi) << ',' << num(p.mean_pred_ls) << ','
           << num(p.mean_pred_hi) << "\n";
    }
}

void write_trials_csv(std::ostream& os, const SweepResult& r, PilotScheme scheme)
{
    os << "# risfd-trials v1\n"
       << "point,trial,seed,nmse_ls,nmse_hi,bias_ls,bias_hi,pred_nmse_ls,pred_nmse_hi,path_ls,path_hi,faulted\n";
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (r.points[i].scheme != scheme)
            continue;
        for (const auto& t : r.records[i]) {
            char seed[32];
            std::snprintf(seed, sizeof seed, "%" PRIu64, t.seed);
            os << r.points[i].point_index << ',' << t.trial << ',' << seed << ',' << num(t.nmse_ls) << ','
               << num(t.nmse_hi) << ',' << num(t.bias_ls) << ',' << num(t.bias_hi) << ',' << num(t.pred_nmse_ls)
               << ',' << num(t.pred_nmse_hi) << ',' << (t.path_ls == SolverPath::Diagonal ? "diag" : "dense") << ','
               << (t.path_hi == SolverPath::Diagonal ? "diag" : "dense") << ',' << (t.faulted ? 1 : 0) << "\n";
        }
    }
}

void write_plot_data(std::ostream& os, const SweepResult& r, PilotScheme scheme, Curve curve)
{
    for (const auto& p : r.points) {
        if (p.scheme != scheme)
            continue;
        os << num(p.value) << ' ' << num(curve == Curve::Ls ? p.mean_nmse_ls : p.mean_nmse_hi) << "\n";
    }
}

void write_manifest(std::ostream& os, const RunManifest& m)
{
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016" PRIx64, m.config_hash);
    char seed[32];
    std::snprintf(seed, sizeof seed, "%" PRIu64, m.master_seed);
    os << "risfd-manifest v1\n"
       << "command = " << m.command << "\n"
       << "version = " << m.version << "\n"
       << "master_seed = " << seed << "\n"
       << "config_hash = " << hash << "\n"
       << "threads = " << m.threads << "\n"
       << "started_utc = " << m.started_utc << "\n"
       << "wall_seconds = " << m.wall_seconds << "\n"
       << "partial = " << (m.partial ? "true" : "false") << "\n";
    if (!m.error.empty())
        os << "error = " << m.error << "\n";
    for (const auto& f : m.outputs)
        os << "output = " << f << "\n";
    os << "[config]\n" << m.config_text;
}

} // namespace risfd
