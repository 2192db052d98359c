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
#ifndef RISFD_CONFIG_HPP
#define RISFD_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "risfd/simulator.hpp"

namespace risfd {

/// Malformed or invalid configuration. The message names the source, line and key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a key-value configuration.
///
/// One "key = value" per line, '#' starts a comment, lists are comma separated.
/// Keys not listed below are rejected. Keys that are absent keep the SimConfig
/// defaults, which are the desk-scale values.
///
///   M, K, N                  integers (3, 2, 8)
///   T                        training length, 0 = derived from the scheme (0)
///   d_AR, d_UR, d_AU         link distances in metres (20, 20, 30)
///   ple_AR, ple_UR, ple_AU   path-loss exponents (2.1, 4.2, 2.2)
///   kappa_ris                RIS phase-offset concentration, "inf" = ideal (4)
///   sigma2_trx               sets sigma2_tA, sigma2_tU and sigma2_rA at once
///   sigma2_tA, sigma2_tU, sigma2_rA   individual severities (0.1)
///   snr_db                   SNR for sweeps over other axes (20)
///   schemes                  list of 1, 2, 3 (1)
///   snr_db_grid              (-10, -5, ..., 30)
///   kappa_grid               (0, 1, 2, 4, 8, 16)
///   n_grid                   (4, 8, 16)
///   trials                   Monte-Carlo trials per grid point (2000)
///   seed                     master seed, unsigned 64-bit (1)
///   energy_reference         scheme whose training energy all schemes match (1)
///   reference_power          P, with SNR = P / sigma^2 (1)
///   per_block_offsets        true/false: hold RIS offsets for a whole block (false)
///   gamma_form               moment | as_printed (moment)
///   mse_variant              centered | moment (centered)
///   predict_mse              true/false: evaluate closed-form MSEs per trial (true)
SimConfig parse_config(std::istream& is, const std::string& source = "<config>");

/// Reads and parses a file; a missing file is a ConfigError.
SimConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_text(c)) reproduces c exactly.
std::string to_text(const SimConfig& cfg);

/// FNV-1a hash of to_text(cfg).
std::uint64_t config_hash(const SimConfig& cfg);

} // namespace risfd

#endif // RISFD_CONFIG_HPP
