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
 * Dense complex matrices in row-major order, plus the handful of
 * operations the rest of the library is built on (Kronecker products,
 * adjoints, traces, subsystem permutations, partial transposes).
 *
 * Everything is value-semantic and immutable-friendly: operations return
 * new matrices and never mutate their inputs, so values can be shared
 * freely across threads.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace vrd::qmath {

using Complex = std::complex<double>;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
    ComplexMatrix(int rows, int cols, std::vector<Complex> entries);

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int rows, int cols);
    /// Rank-1 projector |v><v| from a (not necessarily normalized) vector.
    static ComplexMatrix projector(const std::vector<Complex> &v);
    static ComplexMatrix diag(const std::vector<double> &d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex &operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex &operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const std::vector<Complex> &data() const { return data_; }
    std::vector<Complex> &data() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    ComplexMatrix &operator+=(const ComplexMatrix &rhs);
    ComplexMatrix &operator-=(const ComplexMatrix &rhs);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

    Complex trace() const;
    /// Largest entrywise absolute value.
    double max_abs() const;
    /// Frobenius norm.
    double frobenius_norm() const;
    /// max_ij |(A - A^dag)_ij|; zero for exactly Hermitian matrices.
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-12) const { return square() && hermiticity_defect() <= tol; }

    /// (A + A^dag) / 2. The standard cleanup for numerically Hermitian data.
    ComplexMatrix symmetrized() const;

    std::string to_string(int precision = 6) const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product with row index convention i = i_a * rows_b + i_b.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Re tr(A^dag B); the real Hilbert-Schmidt inner product.
double hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);

/// Reorders tensor factors of a square matrix on dims[0] x ... x dims[n-1].
/// perm[i] = j means factor j of the input becomes factor i of the output.
ComplexMatrix permute_subsystems(const ComplexMatrix &a, const std::vector<int> &dims,
                                 const std::vector<int> &perm);

}  // namespace vrd::qmath
