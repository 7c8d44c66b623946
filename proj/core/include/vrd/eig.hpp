// Copyright 2026 The vrdistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Hermitian eigendecompositions via cyclic Jacobi rotations, and the small
 * factorizations built on top of them. Jacobi is quadratically convergent
 * and accurate to ~1e-14 at the dimensions this library works at (<= 64),
 * which keeps the numerical kernel free of external dependencies.
 */

#pragma once

#include <vector>

#include "vrd/complex_matrix.hpp"

namespace vrd::qmath {

struct EigResult {
    std::vector<double> eigenvalues;  // sorted descending
    ComplexMatrix eigenvectors;       // columns match eigenvalue order
};

/// Full eigendecomposition A = V diag(w) V^dag of a Hermitian matrix.
/// Throws std::invalid_argument if A is not Hermitian within `herm_tol`.
EigResult hermitian_eig(const ComplexMatrix &a, double herm_tol = 1e-10);

/// Eigenvalues only (descending).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a, double herm_tol = 1e-10);

double min_eigenvalue(const ComplexMatrix &a, double herm_tol = 1e-10);

/// f(A) for Hermitian A through its spectral decomposition.
ComplexMatrix hermitian_function(const ComplexMatrix &a, double (*f)(double),
                                 double herm_tol = 1e-10);

/// PSD square root; eigenvalues below zero are clamped to zero first
/// (inputs are PSD up to solver roundoff of order 1e-10).
ComplexMatrix psd_sqrt(const ComplexMatrix &a, double herm_tol = 1e-8);

/// Cholesky factor L (lower triangular, A = L L^dag) of a Hermitian
/// positive definite matrix. Returns false if a pivot drops below `min_pivot`.
bool cholesky(const ComplexMatrix &a, ComplexMatrix &l, double min_pivot = 0.0);

/// Solves L x = b with L lower triangular.
std::vector<Complex> forward_subst(const ComplexMatrix &l, const std::vector<Complex> &b);
/// Solves L^dag x = b with L lower triangular.
std::vector<Complex> backward_subst_adjoint(const ComplexMatrix &l, const std::vector<Complex> &b);

/// L^{-1} for lower-triangular L.
ComplexMatrix lower_triangular_inverse(const ComplexMatrix &l);

}  // namespace vrd::qmath
