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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"

using namespace risfd;

TEST_CASE("system dimensions")
{
    const SystemDims d{5, 2, 100, 10};
    CHECK(d.T() == 1010);
    CHECK(d.x_dim() == 707);
    CHECK(d.h_dim() == 3535);
    CHECK(SystemDims::from_training_length(3, 2, 4, 30).L == 6);
    CHECK_THROWS_AS(SystemDims::from_training_length(3, 2, 4, 31), DimensionError);
    CHECK_THROWS_AS((SystemDims{0, 1, 1, 1}.validate()), DimensionError);
    CHECK_THROWS_AS((SystemDims{1, 1, 1, 0}.validate()), DimensionError);
}

TEST_CASE("path_gain")
{
    CHECK(path_gain(1.0, 3.7) == 1.0);
    // reference values from an independent evaluation of d^-ple
    CHECK(path_gain(20.0, 2.1) == doctest::Approx(0.0018528361227673688).epsilon(1e-14));
    CHECK(path_gain(30.0, 2.2) == doctest::Approx(0.0005627729823467977).epsilon(1e-14));
    CHECK(path_gain(20.0, 2.1) == doctest::Approx(1.848e-3).epsilon(1e-3));
    CHECK_THROWS_AS(path_gain(0.0, 2.0), DimensionError);
    CHECK_THROWS_AS(path_gain(-1.0, 2.0), DimensionError);

    Geometry g;
    g.ple_AR = 0.0;
    CHECK_THROWS_AS(g.validate(), DimensionError);
}

TEST_CASE("sampled channel variances follow the geometry")
{
    const SystemDims d{3, 2, 2, 1};
    const Geometry geo;
    double sg = 0.0, su = 0.0, sr = 0.0;
    long ng = 0, nu = 0, nr = 0;
    for (std::uint64_t s = 0; ng < 100000; ++s) {
        const ChannelSet ch = sample_channels(d, geo, derive_seed(99, {s}));
        sg += ch.G_A.squaredNorm();
        ng += ch.G_A.size();
        su += ch.H_UA.squaredNorm();
        nu += ch.H_UA.size();
        sr += ch.H_RA.squaredNorm();
        nr += ch.H_RA.size();
    }
    CHECK(sg / ng == doctest::Approx(1.0).epsilon(0.02));
    CHECK(su / nu == doctest::Approx(path_gain(30.0, 2.2)).epsilon(0.03));
    CHECK(sr / nr == doctest::Approx(path_gain(20.0, 2.1)).epsilon(0.03));
}

TEST_CASE("channel draws are deterministic and use separate substreams")
{
    const SystemDims d{3, 2, 4, 1};
    const ChannelSet a = sample_channels(d, Geometry{}, 5);
    const ChannelSet b = sample_channels(d, Geometry{}, 5);
    CHECK((stack_h(a) - stack_h(b)).norm() == 0.0);

    // a different UE geometry changes only the UE channels
    Geometry g2;
    g2.d_AU = 40.0;
    const ChannelSet c = sample_channels(d, g2, 5);
    CHECK((a.G_A - c.G_A).norm() == 0.0);
    CHECK((a.H_AR - c.H_AR).norm() == 0.0);
    CHECK((a.H_UA - c.H_UA).norm() > 0.0);
    CHECK((a.H_UA / a.H_UA.norm() - c.H_UA / c.H_UA.norm()).norm() < 1e-12);
}

TEST_CASE("stack_h layout")
{
    Rng rng = make_rng(3);
    CHECK(stack_h(oracle::random_channels(rng, 5, 2, 100)).size() == 3535);
    CHECK(stack_h(oracle::random_channels(rng, 1, 1, 1)).size() == 4);

    ChannelSet ch = oracle::random_channels(rng, 2, 1, 3);
    ch.H_RA.setZero();
    const CVector h = stack_h(ch);
    const int M = 2, N = 3, K = 1;
    CHECK(h.segment(M * M, M * M * N).norm() == 0.0);
    CHECK(h.segment(M * M * (N + 1) + M * K, M * K * N).norm() == 0.0);
    CHECK(h.head(M * M).norm() > 0.0);
}

TEST_CASE("stack_h scales blockwise")
{
    Rng rng = make_rng(4);
    const int M = 2, K = 2, N = 3;
    const ChannelSet ch = oracle::random_channels(rng, M, K, N);
    const CVector h = stack_h(ch);
    const int b1 = M * M, b2 = M * M * N, b3 = M * K, b4 = M * K * N;

    ChannelSet s = ch;
    s.H_UA *= 3.0;
    CVector hs = stack_h(s);
    CHECK((hs.segment(b1 + b2, b3) - 3.0 * h.segment(b1 + b2, b3)).norm() < 1e-12);
    CHECK((hs.head(b1 + b2) - h.head(b1 + b2)).norm() == 0.0);
    CHECK((hs.tail(b4) - h.tail(b4)).norm() == 0.0);

    s = ch;
    s.H_RA *= cplx(0.0, 2.0);
    hs = stack_h(s);
    CHECK((hs.segment(b1, b2) - cplx(0.0, 2.0) * h.segment(b1, b2)).norm() < 1e-12);
    CHECK((hs.tail(b4) - cplx(0.0, 2.0) * h.tail(b4)).norm() < 1e-12);
    CHECK((hs.head(b1) - h.head(b1)).norm() == 0.0);
}

TEST_CASE("h_as_matrix")
{
    Rng rng = make_rng(6);
    const SystemDims d{3, 2, 2, 1};
    const CVector h = oracle::random_vector(rng, d.h_dim());
    const CMatrix H = h_as_matrix(h, d);
    CHECK((vec(H) - h).norm() == 0.0);
    const CVector x = oracle::random_vector(rng, d.x_dim());
    const CVector lhs = kron(x.transpose(), CMatrix::Identity(3, 3)) * h;
    CHECK((lhs - H * x).norm() < 1e-12 * lhs.norm());

    const SystemDims d1{1, 1, 2, 1};
    const CVector h1 = oracle::random_vector(rng, d1.h_dim());
    CHECK((h_as_matrix(h1, d1) - h1.transpose()).norm() == 0.0);
    CHECK_THROWS_AS(h_as_matrix(h1, d), DimensionError);
}

TEST_CASE("linear model reproduces the direct received signal")
{
    Rng rng = make_rng(7);
    for (int M = 1; M <= 3; ++M)
        for (int K = 1; K <= 3; ++K)
            for (int N = 1; N <= 3; ++N) {
                const ChannelSet ch = oracle::random_channels(rng, M, K, N);
                const CVector a = oracle::random_vector(rng, M), u = oracle::random_vector(rng, K);
                CVector phi(N);
                for (int n = 0; n < N; ++n)
                    phi(n) = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
                const CVector x = assemble_x_t(a, u, phi);
                const CVector z = kron(x.transpose(), CMatrix::Identity(M, M)) * stack_h(ch);
                const CVector direct = oracle::received(ch, a, u, phi);
                CHECK((z - direct).norm() <= 1e-10 * direct.norm());
            }
}

TEST_CASE("channel text dump round-trips exactly")
{
    Rng rng = make_rng(8);
    const ChannelSet ch = oracle::random_channels(rng, 2, 1, 3);
    std::stringstream ss;
    write_channels(ss, ch);
    CHECK(ss.str().rfind("risfd-channels v1", 0) == 0);
    const ChannelSet back = read_channels(ss);
    CHECK((stack_h(back) - stack_h(ch)).norm() == 0.0);
    CHECK((back.G_A - ch.G_A).norm() == 0.0);

    std::stringstream bad("not a dump\n");
    CHECK_THROWS(read_channels(bad));
}

TEST_CASE("channel validation")
{
    ChannelSet ch = ChannelSet::zeros(2, 1, 3);
    CHECK_NOTHROW(ch.validate());
    ch.H_UR = CMatrix::Zero(2, 1);
    CHECK_THROWS_AS(ch.validate(), DimensionError);
    ch = ChannelSet::zeros(2, 1, 3);
    ch.G_A(0, 0) = cplx(NAN, 0.0);
    CHECK_THROWS_AS(ch.validate(), DimensionError);
}
