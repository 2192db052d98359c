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

#include "oracles.hpp"

using namespace risfd;
using oracle::random_matrix;

TEST_CASE("kron of identity and row vectors")
{
    Rng rng = make_rng(11);
    const CMatrix B = random_matrix(rng, 2, 3);
    CHECK((kron(CMatrix::Identity(1, 1), B) - B).norm() == 0.0);

    CMatrix a(1, 2), b(1, 2);
    a << 1.0, 2.0;
    b << 0.0, 1.0;
    CMatrix want(1, 4);
    want << 0.0, 1.0, 0.0, 2.0;
    CHECK((kron(a, b) - want).norm() == 0.0);

    const CMatrix K = kron(CMatrix::Ones(3, 1), CMatrix::Identity(2, 2));
    REQUIRE(K.rows() == 6);
    REQUIRE(K.cols() == 2);
    for (int i = 0; i < 3; ++i)
        CHECK((K.block(2 * i, 0, 2, 2) - CMatrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("kron is associative")
{
    Rng rng = make_rng(12);
    const CMatrix A = random_matrix(rng, 2, 3), B = random_matrix(rng, 3, 2), C = random_matrix(rng, 2, 2);
    const CMatrix l = kron(kron(A, B), C), r = kron(A, kron(B, C));
    CHECK((l - r).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("khatri_rao")
{
    const CMatrix I = CMatrix::Identity(2, 2);
    const CMatrix kr = khatri_rao(I, I);
    REQUIRE(kr.rows() == 4);
    CMatrix want = CMatrix::Zero(4, 2);
    want(0, 0) = 1.0;
    want(3, 1) = 1.0;
    CHECK((kr - want).norm() == 0.0);

    CMatrix a(2, 1), b(2, 1), ab(4, 1);
    a << 1.0, 2.0;
    b << 3.0, 4.0;
    ab << 3.0, 4.0, 6.0, 8.0;
    CHECK((khatri_rao(a, b) - ab).norm() == 0.0);

    Rng rng = make_rng(13);
    const CMatrix A = random_matrix(rng, 2, 3), B = random_matrix(rng, 4, 3);
    const CMatrix R = khatri_rao(A, B);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 4; ++k)
                CHECK(std::abs(R(i * 4 + k, j) - A(i, j) * B(k, j)) == 0.0);

    CHECK_THROWS_AS(khatri_rao(A, random_matrix(rng, 4, 2)), DimensionError);
    try {
        khatri_rao(A, random_matrix(rng, 4, 2));
    } catch (const DimensionError& e) {
        CHECK(std::string(e.what()).find("3 vs 2") != std::string::npos);
    }
}

TEST_CASE("vec and unvec")
{
    const CVector v = vec(CMatrix::Identity(2, 2));
    CVector want(4);
    want << 1.0, 0.0, 0.0, 1.0;
    CHECK((v - want).norm() == 0.0);
    CHECK((unvec(want, 2) - CMatrix::Identity(2, 2)).norm() == 0.0);

    Rng rng = make_rng(14);
    const CMatrix A = random_matrix(rng, 3, 5);
    CHECK((unvec(vec(A), 3) - A).norm() == 0.0);
    CHECK(vec(A)(3) == A(0, 1));  // column stacking
    CHECK_THROWS_AS(unvec(vec(A), 4), DimensionError);
    CHECK_THROWS_AS(unvec(vec(A), 0), DimensionError);
}

TEST_CASE("mixed-product identity (a^T kron I) vec(B) == B a")
{
    Rng rng = make_rng(15);
    for (int M : {1, 2, 4}) {
        const CMatrix B = random_matrix(rng, M, 5);
        const CMatrix a = random_matrix(rng, 5, 1);
        const CMatrix lhs = kron(a.transpose(), CMatrix::Identity(M, M)) * vec(B);
        CHECK((lhs - B * a).norm() < 1e-12 * (B * a).norm());
    }
}

TEST_CASE("dft_matrix")
{
    CMatrix F2(2, 2);
    F2 << 1.0, 1.0, 1.0, -1.0;
    CHECK((dft_matrix(2, false) - F2).cwiseAbs().maxCoeff() < 1e-15);

    CVector c1(4);
    c1 << 1.0, cplx(0, -1), -1.0, cplx(0, 1);
    CHECK((dft_matrix(4, false).col(1) - c1).cwiseAbs().maxCoeff() < 1e-15);

    for (int n : {3, 8, 16}) {
        const CMatrix F = dft_matrix(n, true);
        CHECK((F * F.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((dft_matrix(n, false).cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
    }
    CHECK_THROWS_AS(dft_matrix(0, true), DimensionError);
}

TEST_CASE("hermitian_solve")
{
    Rng rng = make_rng(16);
    const CMatrix B = random_matrix(rng, 3, 2);
    CHECK((hermitian_solve(CMatrix::Identity(3, 3), B) - B).norm() < 1e-14);
    const CMatrix X = hermitian_solve(2.0 * CMatrix::Identity(3, 3), CMatrix::Identity(3, 3));
    CHECK((X - 0.5 * CMatrix::Identity(3, 3)).norm() < 1e-15);

    const CMatrix R = random_matrix(rng, 6, 6);
    const CMatrix A = R.adjoint() * R + CMatrix::Identity(6, 6);
    const CMatrix rhs = random_matrix(rng, 6, 3);
    const CMatrix sol = hermitian_solve(A, rhs);
    CHECK((A * sol - rhs).norm() / rhs.norm() <= 1e-10);
}

TEST_CASE("hermitian_solve rejects bad input without regularizing")
{
    CMatrix nh = CMatrix::Identity(2, 2);
    nh(0, 1) = 0.5;
    CHECK_THROWS_AS(hermitian_solve(nh, CMatrix::Identity(2, 2)), NumericalError);

    CMatrix indef = CMatrix::Identity(2, 2);
    indef(1, 1) = -1.0;
    CHECK_THROWS_AS(hermitian_solve(indef, CMatrix::Identity(2, 2)), NumericalError);
    try {
        hermitian_solve(CMatrix::Zero(2, 2), CMatrix::Identity(2, 2));
        FAIL("singular matrix accepted");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("condition") != std::string::npos);
    }
    CHECK_THROWS_AS(hermitian_solve(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)), DimensionError);
    CHECK_THROWS_AS(hermitian_solve(CMatrix::Identity(2, 3), CMatrix::Identity(2, 2)), DimensionError);
}

TEST_CASE("factorization counter counts dense solves")
{
    const auto before = factorization_count();
    hermitian_solve(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
    CHECK(factorization_count() == before + 1);
}

TEST_CASE("trace of diag equals the sum")
{
    Rng rng = make_rng(17);
    const CVector d = oracle::random_vector(rng, 7);
    CHECK(std::abs(diag(d).trace() - d.sum()) < 1e-14);
    CHECK(hermitian_defect(CMatrix::Zero(2, 2)) == 0.0);
    CHECK(offdiag_ratio(CMatrix::Identity(3, 3)) == 0.0);
}
