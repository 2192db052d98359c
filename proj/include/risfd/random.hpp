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
#ifndef RISFD_RANDOM_HPP
#define RISFD_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "risfd/linalg.hpp"

namespace risfd {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent substream seed from a parent seed and a path of counters,
/// e.g. derive_seed(master, {point, trial}). Order of the path matters.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path);

/// Seeded generator for a substream.
Rng make_rng(std::uint64_t seed);

// Circular complex Gaussian with E|z|^2 = variance (real and imaginary parts N(0, variance/2)).
cplx complex_gaussian(Rng& rng, double variance);

// rows x cols matrix of i.i.d. CN(0, variance) entries, filled column by column.
CMatrix complex_gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double variance);

// Uniform on [0, 1).
double uniform01(Rng& rng);

} // namespace risfd

#endif // RISFD_RANDOM_HPP
