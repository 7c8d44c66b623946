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

#include "vrd/states.hpp"

#include <cmath>
#include <stdexcept>

namespace vrd::qmath {

namespace {
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix &m) {
    if (!m.square()) throw std::invalid_argument("DensityMatrix: non-square matrix");
    if (m.hermiticity_defect() > kHermTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    matrix_ = m.symmetrized();
    if (std::abs(matrix_.trace().real() - 1.0) > kTraceTol)
        throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-10");
    if (min_eigenvalue(matrix_, 1e-9) < -kPsdTol)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond 1e-10");
}

bool DensityMatrix::is_pure(double tol) const {
    return hermitian_eigenvalues(matrix_).front() >= 1.0 - tol;
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus_operators)
    : kraus_(std::move(kraus_operators)) {
    if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: no Kraus operators");
    in_dim_ = kraus_.front().cols();
    out_dim_ = kraus_.front().rows();
    ComplexMatrix sum(in_dim_, in_dim_);
    for (const auto &k : kraus_) {
        if (k.cols() != in_dim_ || k.rows() != out_dim_)
            throw std::invalid_argument("QuantumChannel: inconsistent Kraus shapes");
        sum += k.adjoint() * k;
    }
    sum -= ComplexMatrix::identity(in_dim_);
    if (sum.max_abs() > 1e-10)
        throw std::invalid_argument("QuantumChannel: Kraus operators are not trace preserving");
}

QuantumChannel QuantumChannel::identity(int dim) {
    return QuantumChannel({ComplexMatrix::identity(dim)});
}

QuantumChannel QuantumChannel::replacement(const DensityMatrix &sigma, int input_dim) {
    // K_{j,i} = sqrt(q_j) |phi_j><i| built from the eigenbasis of sigma.
    const EigResult eig = hermitian_eig(sigma.matrix());
    std::vector<ComplexMatrix> kraus;
    const int d_out = sigma.dim();
    for (int j = 0; j < d_out; ++j) {
        const double q = std::max(eig.eigenvalues[j], 0.0);
        if (q < 1e-15) continue;
        for (int i = 0; i < input_dim; ++i) {
            ComplexMatrix k(d_out, input_dim);
            for (int r = 0; r < d_out; ++r) k(r, i) = std::sqrt(q) * eig.eigenvectors(r, j);
            kraus.push_back(std::move(k));
        }
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::depolarizing(int dim) {
    return replacement(maximally_mixed_state(dim), dim);
}

Observable::Observable(const ComplexMatrix &m) {
    if (!m.square()) throw std::invalid_argument("Observable: non-square matrix");
    if (m.hermiticity_defect() > 1e-10)
        throw std::invalid_argument("Observable: not Hermitian");
    matrix_ = m.symmetrized();
    const auto eigs = hermitian_eigenvalues(matrix_);
    if (eigs.front() > 1.0 + 1e-10 || eigs.back() < -1e-10)
        throw std::invalid_argument("Observable: spectrum not contained in [0, 1]");
}

const EigResult &Observable::eigensystem() const {
    if (!eigen_cache_) eigen_cache_ = hermitian_eig(matrix_);
    return *eigen_cache_;
}

double trace_norm(const ComplexMatrix &a) {
    if (!a.square()) throw std::invalid_argument("trace_norm: non-square matrix");
    // Singular values through the Hermitian eigenvalues of A^dag A.
    const auto eigs = hermitian_eigenvalues((a.adjoint() * a).symmetrized(), 1e-8);
    double s = 0.0;
    for (double w : eigs) s += std::sqrt(std::max(w, 0.0));
    return s;
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    const ComplexMatrix root = psd_sqrt(rho.matrix());
    const ComplexMatrix inner = (root * sigma.matrix() * root).symmetrized();
    const auto eigs = hermitian_eigenvalues(inner, 1e-8);
    double s = 0.0;
    for (double w : eigs) s += std::sqrt(std::max(w, 0.0));
    const double f = s * s;
    return std::min(std::max(f, 0.0), 1.0 + 1e-12);
}

ComplexMatrix partial_transpose(const ComplexMatrix &a, int dim_a, int dim_b, Subsystem which) {
    if (a.rows() != dim_a * dim_b || a.cols() != dim_a * dim_b)
        throw std::invalid_argument("partial_transpose: dims do not factor the matrix");
    ComplexMatrix out(a.rows(), a.cols());
    for (int ia = 0; ia < dim_a; ++ia)
        for (int ib = 0; ib < dim_b; ++ib)
            for (int ja = 0; ja < dim_a; ++ja)
                for (int jb = 0; jb < dim_b; ++jb) {
                    const Complex v = a(ia * dim_b + ib, ja * dim_b + jb);
                    if (which == Subsystem::B)
                        out(ia * dim_b + jb, ja * dim_b + ib) = v;
                    else
                        out(ja * dim_b + ib, ia * dim_b + jb) = v;
                }
    return out;
}

DensityMatrix apply_channel(const QuantumChannel &ch, const DensityMatrix &rho) {
    if (ch.input_dim() != rho.dim())
        throw std::invalid_argument("apply_channel: dimension mismatch");
    ComplexMatrix out(ch.output_dim(), ch.output_dim());
    for (const auto &k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix(out);
}

DensityMatrix isotropic_state(const DensityMatrix &psi, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("isotropic_state: p outside [0, 1]");
    if (!psi.is_pure()) throw std::invalid_argument("isotropic_state: psi is not pure");
    const int d = psi.dim();
    ComplexMatrix m = p * psi.matrix();
    for (int i = 0; i < d; ++i) m(i, i) += (1.0 - p) / d;
    return DensityMatrix(m);
}

DensityMatrix basis_state(int dim, int index) {
    std::vector<Complex> v(dim, 0.0);
    v[index] = 1.0;
    return DensityMatrix(ComplexMatrix::projector(v));
}

DensityMatrix maximally_coherent_state(int dim) {
    std::vector<Complex> v(dim, 1.0);
    return DensityMatrix(ComplexMatrix::projector(v));
}

DensityMatrix maximally_mixed_state(int dim) {
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0 / dim;
    return DensityMatrix(m);
}

DensityMatrix bell_state() {
    std::vector<Complex> v = {1.0, 0.0, 0.0, 1.0};
    return DensityMatrix(ComplexMatrix::projector(v));
}

DensityMatrix t_state() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(0, 1) = Complex(1.0, -1.0) / (2.0 * std::sqrt(2.0));  // (X + Y)/(2 sqrt(2))
    m(1, 0) = std::conj(m(0, 1));
    return DensityMatrix(m);
}

}  // namespace vrd::qmath
