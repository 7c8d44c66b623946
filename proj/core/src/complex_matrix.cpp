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

#include "vrd/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vrd::qmath {

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ < 0 || cols_ < 0 ||
        data_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
        throw std::invalid_argument("ComplexMatrix: entry count must equal rows*cols");
    }
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::projector(const std::vector<Complex> &v) {
    double n2 = 0.0;
    for (const auto &x : v) n2 += std::norm(x);
    if (n2 <= 0.0) throw std::invalid_argument("projector: zero vector");
    const int d = static_cast<int>(v.size());
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = v[i] * std::conj(v[j]) / n2;
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double> &d) {
    const int n = static_cast<int>(d.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = std::conj(data_[k]);
    return m;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix addition: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix subtraction: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &x : data_) x *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Complex ComplexMatrix::trace() const {
    if (!square()) throw std::invalid_argument("trace: non-square matrix");
    Complex t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto &x : data_) m = std::max(m, std::abs(x));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &x : data_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

ComplexMatrix ComplexMatrix::symmetrized() const {
    if (!square()) throw std::invalid_argument("symmetrized: non-square matrix");
    ComplexMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return m;
}

std::string ComplexMatrix::to_string(int precision) const {
    std::ostringstream os;
    os.precision(precision);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            const Complex &x = (*this)(i, j);
            os << x.real() << (x.imag() < 0 ? "-" : "+") << std::abs(x.imag()) << "i";
            os << (j + 1 == cols_ ? "" : "  ");
        }
        os << "\n";
    }
    return os.str();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            const Complex aij = a(ia, ja);
            if (aij == Complex(0.0, 0.0)) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb)
                    c(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
        }
    return c;
}

double hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hs_inner: shape mismatch");
    double s = 0.0;
    const auto &da = a.data();
    const auto &db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k)
        s += da[k].real() * db[k].real() + da[k].imag() * db[k].imag();
    return s;
}

ComplexMatrix permute_subsystems(const ComplexMatrix &a, const std::vector<int> &dims,
                                 const std::vector<int> &perm) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permute_subsystems: perm size mismatch");
    int total = 1;
    for (int d : dims) total *= d;
    if (a.rows() != total || a.cols() != total)
        throw std::invalid_argument("permute_subsystems: dims do not factor the matrix");

    // Strides of each factor in the input index.
    std::vector<int> stride(n, 1);
    for (int f = n - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];
    std::vector<int> out_dims(n), out_stride(n, 1);
    for (int f = 0; f < n; ++f) out_dims[f] = dims[perm[f]];
    for (int f = n - 2; f >= 0; --f) out_stride[f] = out_stride[f + 1] * out_dims[f + 1];

    // Map each input composite index to its permuted counterpart.
    std::vector<int> map(total);
    std::vector<int> digits(n);
    for (int idx = 0; idx < total; ++idx) {
        int rem = idx;
        for (int f = 0; f < n; ++f) {
            digits[f] = rem / stride[f];
            rem %= stride[f];
        }
        int out = 0;
        for (int f = 0; f < n; ++f) out += digits[perm[f]] * out_stride[f];
        map[idx] = out;
    }

    ComplexMatrix c(total, total);
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j) c(map[i], map[j]) = a(i, j);
    return c;
}

}  // namespace vrd::qmath
