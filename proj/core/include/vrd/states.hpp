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
 * Quantum state and channel primitives: validated density matrices,
 * Kraus-form channels, observables with spectrum in [0, 1], and the
 * distance/overlap measures used throughout (trace norm, Uhlmann fidelity,
 * partial transpose).
 */

#pragma once

#include <optional>
#include <vector>

#include "vrd/complex_matrix.hpp"
#include "vrd/eig.hpp"

namespace vrd::qmath {

/// Hermitian, PSD, unit-trace matrix. Construction symmetrizes the input,
/// then validates: hermiticity defect <= 1e-12 (pre-symmetrization),
/// |tr - 1| <= 1e-10, min eigenvalue >= -1e-10.
class DensityMatrix {
  public:
    explicit DensityMatrix(const ComplexMatrix &m);

    int dim() const { return matrix_.rows(); }
    const ComplexMatrix &matrix() const { return matrix_; }
    const Complex &operator()(int i, int j) const { return matrix_(i, j); }

    /// Largest eigenvalue >= 1 - tol, i.e. the state is rank one.
    bool is_pure(double tol = 1e-9) const;

  private:
    ComplexMatrix matrix_;
};

/// Trace-preserving channel in Kraus form: rho -> sum_k K_k rho K_k^dag.
/// Construction validates sum_k K_k^dag K_k = I entrywise within 1e-10.
class QuantumChannel {
  public:
    explicit QuantumChannel(std::vector<ComplexMatrix> kraus_operators);

    static QuantumChannel identity(int dim);
    /// Maps every input to the fixed state sigma.
    static QuantumChannel replacement(const DensityMatrix &sigma, int input_dim);
    static QuantumChannel depolarizing(int dim);

    int input_dim() const { return in_dim_; }
    int output_dim() const { return out_dim_; }
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }

  private:
    std::vector<ComplexMatrix> kraus_;
    int in_dim_ = 0;
    int out_dim_ = 0;
};

/// Hermitian operator M with 0 <= M <= I (within 1e-10). Caches its
/// eigendecomposition for repeated Born-rule sampling.
class Observable {
  public:
    explicit Observable(const ComplexMatrix &m);

    int dim() const { return matrix_.rows(); }
    const ComplexMatrix &matrix() const { return matrix_; }
    const EigResult &eigensystem() const;

  private:
    ComplexMatrix matrix_;
    mutable std::optional<EigResult> eigen_cache_;
};

/// Sum of singular values. For Hermitian input this is the sum of
/// absolute eigenvalues.
double trace_norm(const ComplexMatrix &a);

/// Half the trace norm of rho - sigma.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Uhlmann fidelity (tr sqrt(rho^{1/2} sigma rho^{1/2}))^2 in [0, 1].
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Partial transpose on subsystem A or B of a dA x dB bipartite operator.
enum class Subsystem { A, B };
ComplexMatrix partial_transpose(const ComplexMatrix &a, int dim_a, int dim_b,
                                Subsystem which = Subsystem::B);

DensityMatrix apply_channel(const QuantumChannel &ch, const DensityMatrix &rho);

/// p * psi + (1 - p) * I/d for a pure state psi and p in [0, 1].
DensityMatrix isotropic_state(const DensityMatrix &psi, double p);

// Frequently used states.
DensityMatrix basis_state(int dim, int index);
/// Uniform-superposition pure state (|0> + ... + |d-1>)/sqrt(d).
DensityMatrix maximally_coherent_state(int dim);
DensityMatrix maximally_mixed_state(int dim);
/// (|00> + |11>)/sqrt(2) on two qubits.
DensityMatrix bell_state();
/// Single-qubit state (I + (X + Y)/sqrt(2))/2.
DensityMatrix t_state();

}  // namespace vrd::qmath
