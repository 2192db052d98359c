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

#ifndef RISFD_LINALG_HPP
#define RISFD_LINALG_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace risfd {

using cplx = std::complex<double>;

/// Dense complex matrix, column-major storage so that vec() is a plain copy.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Raised on shape mismatches and violated preconditions.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a factorization fails or a matrix is not Hermitian positive definite.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Kronecker product: block (i,j) of the result is A(i,j) * B.
CMatrix kron(const CMatrix& A, const CMatrix& B);

// Column-wise Kronecker product. Requires A.cols() == B.cols().
CMatrix khatri_rao(const CMatrix& A, const CMatrix& B);

// Column-stacking vectorization.
CVector vec(const CMatrix& A);

// Inverse of vec(): reshape into a matrix with `rows` rows, filled column by column.
CMatrix unvec(const CVector& v, Eigen::Index rows);

/// n x n DFT matrix with entries w^{mk}, w = exp(-j 2 pi / n).
///
/// With `normalized` the matrix is scaled by 1/sqrt(n) and is unitary;
/// otherwise every entry has unit modulus, which is what RIS phase
/// configurations need.
CMatrix dft_matrix(Eigen::Index n, bool normalized);

/// Solves A X = B for Hermitian positive definite A using a Cholesky factorization.
///
/// A must be Hermitian to 1e-10 (relative to its largest entry). A failed
/// factorization throws NumericalError; no regularization is ever applied.
CMatrix hermitian_solve(const CMatrix& A, const CMatrix& B);

/// Number of dense factorizations performed by hermitian_solve() in this process.
/// Used by tests to check that the diagonal solve path never factorizes.
std::uint64_t factorization_count();

/// Largest |A - A^H| entry divided by the largest |A| entry (0 for a zero matrix).
double hermitian_defect(const CMatrix& A);

/// Largest off-diagonal magnitude relative to the largest diagonal magnitude.
double offdiag_ratio(const CMatrix& A);

// diag(d) as a dense matrix.
CMatrix diag(const CVector& d);

} // namespace risfd

#endif // RISFD_LINALG_HPP
