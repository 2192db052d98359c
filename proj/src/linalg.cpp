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

#include "risfd/linalg.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace risfd {

namespace {
std::atomic<std::uint64_t> g_factorizations{0};
constexpr double kHermitianTol = 1e-10;
constexpr double kResidualTol = 1e-10;
} // namespace

CMatrix kron(const CMatrix& A, const CMatrix& B)
{
    const Eigen::Index rb = B.rows(), cb = B.cols();
    CMatrix out(A.rows() * rb, A.cols() * cb);
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            out.block(i * rb, j * cb, rb, cb) = A(i, j) * B;
    return out;
}

CMatrix khatri_rao(const CMatrix& A, const CMatrix& B)
{
    if (A.cols() != B.cols())
        throw DimensionError("khatri_rao: column counts differ (" + std::to_string(A.cols()) + " vs " +
                             std::to_string(B.cols()) + ")");
    const Eigen::Index rb = B.rows();
    CMatrix out(A.rows() * rb, A.cols());
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            out.col(j).segment(i * rb, rb) = A(i, j) * B.col(j);
    return out;
}

CVector vec(const CMatrix& A)
{
    return Eigen::Map<const CVector>(A.data(), A.size());
}

CMatrix unvec(const CVector& v, Eigen::Index rows)
{
    if (rows <= 0 || v.size() % rows != 0)
        throw DimensionError("unvec: length " + std::to_string(v.size()) + " is not divisible by " +
                             std::to_string(rows));
    return Eigen::Map<const CMatrix>(v.data(), rows, v.size() / rows);
}

CMatrix dft_matrix(Eigen::Index n, bool normalized)
{
    if (n < 1)
        throw DimensionError("dft_matrix: size must be >= 1");
    CMatrix F(n, n);
    const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index m = 0; m < n; ++m) {
            // reduce the exponent first so large n keeps entries exact at the quarter turns
            const auto e = (m * k) % n;
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
            F(m, k) = scale * std::polar(1.0, ang);
        }
    return F;
}

double hermitian_defect(const CMatrix& A)
{
    if (A.rows() != A.cols())
        return INFINITY;
    const double amax = A.cwiseAbs().maxCoeff();
    if (amax == 0.0)
        return 0.0;
    return (A - A.adjoint()).cwiseAbs().maxCoeff() / amax;
}

double offdiag_ratio(const CMatrix& A)
{
    const double dmax = A.diagonal().cwiseAbs().maxCoeff();
    CMatrix off = A;
    off.diagonal().setZero();
    const double omax = off.size() ? off.cwiseAbs().maxCoeff() : 0.0;
    if (dmax == 0.0)
        return omax == 0.0 ? 0.0 : INFINITY;
    return omax / dmax;
}

CMatrix diag(const CVector& d)
{
    return d.asDiagonal();
}

CMatrix hermitian_solve(const CMatrix& A, const CMatrix& B)
{
    if (A.rows() != A.cols())
        throw DimensionError("hermitian_solve: matrix is not square");
    if (A.rows() != B.rows())
        throw DimensionError("hermitian_solve: right-hand side has " + std::to_string(B.rows()) +
                             " rows, expected " + std::to_string(A.rows()));
    const double defect = hermitian_defect(A);
    if (defect > kHermitianTol)
        throw NumericalError("hermitian_solve: matrix is not Hermitian (relative defect " +
                             std::to_string(defect) + ")");

    g_factorizations.fetch_add(1, std::memory_order_relaxed);
    Eigen::LLT<CMatrix> llt(A);
    if (llt.info() != Eigen::Success) {
        const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(A, Eigen::EigenvaluesOnly).eigenvalues();
        const double lo = ev.minCoeff(), hi = ev.cwiseAbs().maxCoeff();
        throw NumericalError("hermitian_solve: Cholesky factorization failed; smallest eigenvalue " +
                             std::to_string(lo) + ", condition estimate " +
                             (lo > 0.0 ? std::to_string(hi / lo) : std::string("inf")));
    }

    CMatrix X = llt.solve(B);
    const double bnorm = B.norm();
    const double resid = bnorm > 0.0 ? (A * X - B).norm() / bnorm : (A * X).norm();
    if (!X.allFinite() || resid > kResidualTol) {
        const auto ldiag = llt.matrixL().toDenseMatrix().diagonal().cwiseAbs();
        const double ratio = ldiag.maxCoeff() / ldiag.minCoeff();
        throw NumericalError("hermitian_solve: residual " + std::to_string(resid) +
                             " exceeds tolerance; condition estimate " + std::to_string(ratio * ratio));
    }
    return X;
}

std::uint64_t factorization_count()
{
    return g_factorizations.load(std::memory_order_relaxed);
}

} // namespace risfd
