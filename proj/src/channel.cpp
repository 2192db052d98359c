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
#include "risfd/channel.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "risfd/random.hpp"

namespace risfd {

void SystemDims::validate() const
{
    if (M < 1 || K < 1 || N < 1 || L < 1)
        throw DimensionError("dims: M, K, N and L must all be >= 1 (got M=" + std::to_string(M) +
                             " K=" + std::to_string(K) + " N=" + std::to_string(N) + " L=" + std::to_string(L) + ")");
}

SystemDims SystemDims::from_training_length(int M, int K, int N, int T)
{
    if (N < 1 || T < 1 || T % (N + 1) != 0)
        throw DimensionError("dims: training length T=" + std::to_string(T) + " is not a multiple of N+1=" +
                             std::to_string(N + 1));
    SystemDims d{M, K, N, T / (N + 1)};
    d.validate();
    return d;
}

void Geometry::validate() const
{
    for (double d : {d_AR, d_UR, d_AU})
        if (!(d > 0.0))
            throw DimensionError("geometry: distances must be positive");
    for (double p : {ple_AR, ple_UR, ple_AU})
        if (!(p > 0.0))
            throw DimensionError("geometry: path-loss exponents must be positive");
}

void ChannelSet::validate() const
{
    const auto m = G_A.rows(), k = H_UA.cols(), n = H_AR.rows();
    const bool ok = G_A.cols() == m && H_AR.cols() == m && H_RA.rows() == m && H_RA.cols() == n &&
                    H_UA.rows() == m && H_UR.rows() == n && H_UR.cols() == k;
    if (!ok)
        throw DimensionError("channels: inconsistent shapes");
    if (!(G_A.allFinite() && H_AR.allFinite() && H_RA.allFinite() && H_UA.allFinite() && H_UR.allFinite()))
        throw DimensionError("channels: non-finite entries");
}

ChannelSet ChannelSet::zeros(int M, int K, int N)
{
    return {CMatrix::Zero(M, M), CMatrix::Zero(N, M), CMatrix::Zero(M, N), CMatrix::Zero(M, K),
            CMatrix::Zero(N, K)};
}

double path_gain(double distance, double ple)
{
    if (!(distance > 0.0))
        throw DimensionError("path_gain: distance must be positive");
    return std::pow(distance, -ple);
}

ChannelSet sample_channels(const SystemDims& dims, const Geometry& geo, std::uint64_t seed)
{
    dims.validate();
    geo.validate();
    const double g_ar = path_gain(geo.d_AR, geo.ple_AR);
    const double g_ur = path_gain(geo.d_UR, geo.ple_UR);
    const double g_au = path_gain(geo.d_AU, geo.ple_AU);

    auto draw = [&](std::uint64_t stream, Eigen::Index r, Eigen::Index c, double var) {
        Rng rng = make_rng(derive_seed(seed, {stream}));
        return complex_gaussian_matrix(rng, r, c, var);
    };
    ChannelSet ch;
    ch.G_A = draw(1, dims.M, dims.M, 1.0);
    ch.H_AR = draw(2, dims.N, dims.M, g_ar);
    ch.H_RA = draw(3, dims.M, dims.N, g_ar);
    ch.H_UA = draw(4, dims.M, dims.K, g_au);
    ch.H_UR = draw(5, dims.N, dims.K, g_ur);
    return ch;
}

CVector stack_h(const ChannelSet& ch)
{
    ch.validate();
    const CVector self = vec(ch.G_A);
    const CVector ap_cascade = vec(khatri_rao(ch.H_AR.transpose(), ch.H_RA));
    const CVector direct = vec(ch.H_UA);
    const CVector ue_cascade = vec(khatri_rao(ch.H_UR.transpose(), ch.H_RA));

    CVector h(self.size() + ap_cascade.size() + direct.size() + ue_cascade.size());
    h << self, ap_cascade, direct, ue_cascade;
    return h;
}

CMatrix h_as_matrix(const CVector& h, const SystemDims& dims)
{
    if (h.size() != dims.h_dim())
        throw DimensionError("h_as_matrix: length " + std::to_string(h.size()) + " does not match h_dim " +
                             std::to_string(dims.h_dim()));
    return unvec(h, dims.M);
}

namespace {

void write_matrix(std::ostream& os, const char* name, const CMatrix& A)
{
    os << name << ' ' << A.rows() << ' ' << A.cols() << '\n';
    char buf[96];
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", A(i, j).real(), A(i, j).imag());
            os << buf;
        }
}

CMatrix read_matrix(std::istream& is, const std::string& expected)
{
    std::string name;
    Eigen::Index r = 0, c = 0;
    if (!(is >> name >> r >> c) || name != expected || r < 0 || c < 0)
        throw DimensionError("read_channels: expected block '" + expected + "'");
    CMatrix A(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i) {
            double re = 0, im = 0;
            if (!(is >> re >> im))
                throw DimensionError("read_channels: truncated block '" + expected + "'");
            A(i, j) = {re, im};
        }
    return A;
}

} // namespace

void write_channels(std::ostream& os, const ChannelSet& ch)
{
    ch.validate();
    os << "risfd-channels v1\n";
    os << "dims " << ch.M() << ' ' << ch.K() << ' ' << ch.N() << '\n';
    write_matrix(os, "G_A", ch.G_A);
    write_matrix(os, "H_AR", ch.H_AR);
    write_matrix(os, "H_RA", ch.H_RA);
    write_matrix(os, "H_UA", ch.H_UA);
    write_matrix(os, "H_UR", ch.H_UR);
}

ChannelSet read_channels(std::istream& is)
{
    std::string magic, version, tag;
    int m = 0, k = 0, n = 0;
    if (!(is >> magic >> version) || magic != "risfd-channels" || version != "v1")
        throw DimensionError("read_channels: bad header");
    if (!(is >> tag >> m >> k >> n) || tag != "dims")
        throw DimensionError("read_channels: missing dims line");
    ChannelSet ch;
    ch.G_A = read_matrix(is, "G_A");
    ch.H_AR = read_matrix(is, "H_AR");
    ch.H_RA = read_matrix(is, "H_RA");
    ch.H_UA = read_matrix(is, "H_UA");
    ch.H_UR = read_matrix(is, "H_UR");
    ch.validate();
    if (ch.M() != m || ch.K() != k || ch.N() != n)
        throw DimensionError("read_channels: dims line does not match blocks");
    return ch;
}

} // namespace risfd
