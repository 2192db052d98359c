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
#ifndef RISFD_CHANNEL_HPP
#define RISFD_CHANNEL_HPP

#include <cstdint>
#include <iosfwd>

#include "risfd/linalg.hpp"

namespace risfd {

/// Integer dimensions of the system: M AP antennas per direction, K single-antenna UEs,
/// N RIS elements, training length T = L * (N + 1).
struct SystemDims {
    int M = 1;
    int K = 1;
    int N = 1;
    int L = 1;

    int T() const { return L * (N + 1); }
    /// Length of one regressor row x_t: (M + K)(N + 1).
    int x_dim() const { return (M + K) * (N + 1); }
    /// Length of the stacked channel vector h: M (M + K)(N + 1).
    int h_dim() const { return M * x_dim(); }

    // Throws DimensionError when a size is non-positive.
    void validate() const;

    /// Builds dims from a training length, rejecting T not divisible by N + 1.
    static SystemDims from_training_length(int M, int K, int N, int T);

    bool operator==(const SystemDims&) const = default;
};

/// Link distances in metres and path-loss exponents.
struct Geometry {
    double d_AR = 20.0;
    double d_UR = 20.0;
    double d_AU = 30.0;
    double ple_AR = 2.1;
    double ple_UR = 4.2;
    double ple_AU = 2.2;

    void validate() const;
};

/// The five physical channels. Shapes: G_A MxM, H_AR NxM, H_RA MxN, H_UA MxK, H_UR NxK.
struct ChannelSet {
    CMatrix G_A;
    CMatrix H_AR;
    CMatrix H_RA;
    CMatrix H_UA;
    CMatrix H_UR;

    int M() const { return static_cast<int>(G_A.rows()); }
    int K() const { return static_cast<int>(H_UA.cols()); }
    int N() const { return static_cast<int>(H_AR.rows()); }

    // Throws DimensionError on inconsistent shapes or non-finite entries.
    void validate() const;

    static ChannelSet zeros(int M, int K, int N);
};

/// Large-scale power gain d^{-ple} (unit gain at 1 m).
double path_gain(double distance, double ple);

/// Draws an i.i.d. Rayleigh channel set. Each channel uses its own substream of
/// \p seed, so the draw of one channel never depends on another.
ChannelSet sample_channels(const SystemDims& dims, const Geometry& geo, std::uint64_t seed);

/// h = [vec(G_A); vec(H_AR^T <> H_RA); vec(H_UA); vec(H_UR^T <> H_RA)].
CVector stack_h(const ChannelSet& ch);

/// M x (M+K)(N+1) matrix H with vec(H) == h, so that (x^T kron I_M) h == H x.
CMatrix h_as_matrix(const CVector& h, const SystemDims& dims);

/// Text dump used for regression fixtures: a "risfd-channels v1" header line,
/// a "dims M K N" line, then one "name rows cols" line per channel followed by
/// rows*cols "re im" lines in column-major order (%.17g).
void write_channels(std::ostream& os, const ChannelSet& ch);
ChannelSet read_channels(std::istream& is);

} // namespace risfd

#endif // RISFD_CHANNEL_HPP
