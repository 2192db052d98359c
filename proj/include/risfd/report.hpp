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
#ifndef RISFD_REPORT_HPP
#define RISFD_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "risfd/simulator.hpp"

namespace risfd {

/// Schema tag written as the first line of every sweep CSV.
inline constexpr const char* kCsvSchema = "# risfd-sweep v1";

/// Fixed column order of the sweep CSV.
inline constexpr const char* kCsvColumns =
    "value,mean_nmse_ls,mean_nmse_hi,stderr_nmse_ls,stderr_nmse_hi,trials,faulted,"
    "mean_bias_ls,mean_bias_hi,pred_nmse_ls,pred_nmse_hi";

/// Writes the points of one scheme, in grid order. Only numbers, no timestamps,
/// so re-runs produce identical bytes.
void write_sweep_csv(std::ostream& os, const SweepResult& result, PilotScheme scheme);

/// Per-trial records of one scheme ("point,trial,seed,nmse_ls,nmse_hi,...").
void write_trials_csv(std::ostream& os, const SweepResult& result, PilotScheme scheme);

enum class Curve { Ls, Hi };

/// Two whitespace-separated columns: grid value and mean NMSE.
void write_plot_data(std::ostream& os, const SweepResult& result, PilotScheme scheme, Curve curve);

/// Everything needed to reproduce a run.
struct RunManifest {
    std::string command;
    std::string version;
    std::string config_text;
    std::uint64_t config_hash = 0;
    std::uint64_t master_seed = 0;
    int threads = 1;
    std::string started_utc;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;
    bool partial = false;
    std::string error;
};

void write_manifest(std::ostream& os, const RunManifest& m);

/// Library version string.
std::string version();

} // namespace risfd

#endif // RISFD_REPORT_HPP
