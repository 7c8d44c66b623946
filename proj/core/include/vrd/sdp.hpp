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
 * A small primal-dual interior-point solver for semidefinite programs over
 * complex Hermitian blocks:
 *
 *   minimize   sum_b <C_b, X_b> + c_f^T z
 *   subject to sum_b <A_{i,b}, X_b> + a_{i,f}^T z  (= or <=)  rhs_i
 *              X_b >= 0,  z free
 *
 * where <A, X> = tr(A X) for Hermitian A, X. The solver runs a homogeneous
 * self-dual embedding with Nesterov-Todd scaling and Mehrotra
 * predictor-corrector steps, so primal or dual infeasibility is detected
 * through the embedding rather than by divergence heuristics. Hermitian
 * blocks are handled natively; there is no 2n x 2n real embedding.
 *
 * Solutions carry enough data for independent certification; see
 * verify_certificate().
 */

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vrd/complex_matrix.hpp"

namespace vrd::sdp {

using qmath::Complex;
using qmath::ComplexMatrix;

enum class Relation { Equal, LessEqual };

struct Constraint {
    /// Hermitian coefficient matrix per touched block (block index -> matrix).
    std::map<int, ComplexMatrix> block_coeffs;
    /// Coefficients on free scalar variables (scalar index -> value).
    std::map<int, double> scalar_coeffs;
    Relation relation = Relation::Equal;
    double rhs = 0.0;
};

struct SdpProblem {
    std::vector<int> block_dims;            ///< one Hermitian PSD variable per entry
    int free_scalars = 0;                   ///< unconstrained real scalar variables
    std::vector<ComplexMatrix> objective;   ///< Hermitian cost matrix per block
    std::vector<double> objective_scalars;  ///< cost per free scalar (may be empty)
    std::vector<Constraint> constraints;

    /// Structural validation: shapes line up, coefficient matrices Hermitian
    /// within 1e-12. Throws std::invalid_argument on violation.
    void validate() const;

    /// Plain-text dump (17 significant digits) for cross-checking against
    /// external solvers. Format: one "block <dim>" line per block, a
    /// "scalars <n>" line, "objective" sections listing (block, i, j, re, im)
    /// triplets, then one "constraint <rel> <rhs>" section per constraint
    /// with the same triplet layout.
    void dump(std::ostream &os) const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string to_string(SolveStatus s);

struct SdpSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    double primal_value = 0.0;
    double dual_value = 0.0;
    std::vector<ComplexMatrix> primal_blocks;  ///< PSD blocks (original problem order)
    std::vector<double> scalars;               ///< free scalar values
    std::vector<double> dual_multipliers;      ///< one per constraint
    /// Dual slack blocks Z_b = C_b - sum_i y_i A_{i,b} (PSD at optimality).
    std::vector<ComplexMatrix> dual_blocks;
    int iterations = 0;
};

struct SdpSettings {
    double gap_tol = 1e-8;
    double feas_tol = 1e-8;
    int max_iter = 200;
    bool verbose = false;
};

/// Solves the problem. Deterministic: identical inputs produce bitwise
/// identical outputs.
SdpSolution solve(const SdpProblem &problem, const SdpSettings &settings = {});

struct CertificateReport {
    double primal_residual = 0.0;  ///< max violation of constraints by primal point
    double dual_residual = 0.0;    ///< max violation of dual feasibility
    double gap = 0.0;              ///< |primal - dual| objective gap
    double psd_margin = 0.0;       ///< most negative eigenvalue over all blocks (>= 0 is clean)
    bool accepted = false;         ///< all residuals within 10x solver tolerances
};

/// Recomputes all optimality residuals of a solution from scratch.
CertificateReport verify_certificate(const SdpProblem &problem, const SdpSolution &solution,
                                     const SdpSettings &settings = {});

/// Optional global observer invoked after every solve(); used by the
/// acceptance suite to certify each solution produced during a run.
/// Thread safe. Pass nullptr to clear.
using SolveObserver = void (*)(const SdpProblem &, const SdpSolution &);
void set_solve_observer(SolveObserver observer);

}  // namespace vrd::sdp
