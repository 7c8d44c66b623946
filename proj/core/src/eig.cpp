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

#include "vrd/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vrd::qmath {

namespace {

double offdiag_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
}

// One cyclic Jacobi pass; returns the rotations applied.
int jacobi_sweep(ComplexMatrix &a, ComplexMatrix &v, double threshold) {
    const int n = a.rows();
    int rotations = 0;
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const Complex apq = a(p, q);
            const double mag = std::abs(apq);
            if (mag <= threshold) continue;
            ++rotations;

            const Complex phase = apq / mag;  // e^{i phi}
            const double alpha = a(p, p).real();
            const double gamma = a(q, q).real();
            const double tau = (gamma - alpha) / (2.0 * mag);
            double t;
            if (tau >= 0.0)
                t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
            else
                t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            const Complex spp = s * phase;              // s e^{i phi}
            const Complex spm = s * std::conj(phase);   // s e^{-i phi}

            // A <- J^dag A J with J_pp = c, J_pq = s e^{i phi},
            // J_qp = -s e^{-i phi}, J_qq = c.
            for (int k = 0; k < n; ++k) {
                const Complex akp = a(k, p), akq = a(k, q);
                a(k, p) = c * akp - spm * akq;
                a(k, q) = spp * akp + c * akq;
            }
            for (int k = 0; k < n; ++k) {
                const Complex apk = a(p, k), aqk = a(q, k);
                a(p, k) = c * apk - spp * aqk;
                a(q, k) = spm * apk + c * aqk;
            }
            for (int k = 0; k < n; ++k) {
                const Complex vkp = v(k, p), vkq = v(k, q);
                v(k, p) = c * vkp - spm * vkq;
                v(k, q) = spp * vkp + c * vkq;
            }
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            a(p, p) = Complex(a(p, p).real(), 0.0);
            a(q, q) = Complex(a(q, q).real(), 0.0);
        }
    }
    return rotations;
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix &a, double herm_tol) {
    if (!a.square()) throw std::invalid_argument("hermitian_eig: non-square matrix");
    if (a.hermiticity_defect() > herm_tol)
        throw std::invalid_argument("hermitian_eig: input is not Hermitian within tolerance");

    const int n = a.rows();
    ComplexMatrix w = a.symmetrized();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(w.frobenius_norm(), 1e-300);
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = offdiag_norm(w);
        if (off <= 1e-15 * scale) break;
        // Threshold strategy keeps early sweeps from chasing tiny entries.
        const double threshold = (sweep < 3) ? 0.05 * off / (n * n) : 0.0;
        if (jacobi_sweep(w, v, threshold) == 0 && threshold == 0.0) break;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> eigs(n);
    for (int i = 0; i < n; ++i) eigs[i] = w(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return eigs[i] > eigs[j]; });

    EigResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        result.eigenvalues[j] = eigs[order[j]];
        for (int i = 0; i < n; ++i) result.eigenvectors(i, j) = v(i, order[j]);
    }
    return result;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a, double herm_tol) {
    return hermitian_eig(a, herm_tol).eigenvalues;
}

double min_eigenvalue(const ComplexMatrix &a, double herm_tol) {
    const auto eigs = hermitian_eigenvalues(a, herm_tol);
    return eigs.back();
}

ComplexMatrix hermitian_function(const ComplexMatrix &a, double (*f)(double), double herm_tol) {
    const EigResult eig = hermitian_eig(a, herm_tol);
    const int n = a.rows();
    ComplexMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double fk = f(eig.eigenvalues[k]);
        if (fk == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += fk * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
    }
    return out.symmetrized();
}

ComplexMatrix psd_sqrt(const ComplexMatrix &a, double herm_tol) {
    return hermitian_function(
        a, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }, herm_tol);
}

bool cholesky(const ComplexMatrix &a, ComplexMatrix &l, double min_pivot) {
    const int n = a.rows();
    l = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > min_pivot)) return false;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            Complex s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return true;
}

std::vector<Complex> forward_subst(const ComplexMatrix &l, const std::vector<Complex> &b) {
    const int n = l.rows();
    std::vector<Complex> x(b);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) x[i] -= l(i, j) * x[j];
        x[i] /= l(i, i);
    }
    return x;
}

std::vector<Complex> backward_subst_adjoint(const ComplexMatrix &l, const std::vector<Complex> &b) {
    const int n = l.rows();
    std::vector<Complex> x(b);
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= std::conj(l(j, i)) * x[j];
        x[i] /= std::conj(l(i, i));
    }
    return x;
}

ComplexMatrix lower_triangular_inverse(const ComplexMatrix &l) {
    const int n = l.rows();
    ComplexMatrix inv(n, n);
    for (int col = 0; col < n; ++col) {
        std::vector<Complex> e(n, 0.0);
        e[col] = 1.0;
        const auto x = forward_subst(l, e);
        for (int i = 0; i < n; ++i) inv(i, col) = x[i];
    }
    return inv;
}

}  // namespace vrd::qmath
