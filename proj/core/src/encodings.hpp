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

// Internal helpers for building SDP constraint rows. An entrywise equality
// between Hermitian matrix expressions expands into d real-linear rows for
// the diagonal plus d(d-1) for the real and imaginary parts above it.

#pragma once

#include <vector>

#include "vrd/sdp.hpp"
#include "vrd/states.hpp"

namespace vrd::detail {

using qmath::Complex;
using qmath::ComplexMatrix;

// Hermitian pairing basis: tr(basis_re(i,j) X) = Re X_ij,
// tr(basis_im(i,j) X) = -Im X_ij.
inline ComplexMatrix basis_re(int d, int i, int j) {
    ComplexMatrix m(d, d);
    if (i == j) {
        m(i, i) = 1.0;
    } else {
        m(i, j) = 0.5;
        m(j, i) = 0.5;
    }
    return m;
}

inline ComplexMatrix basis_im(int d, int i, int j) {
    ComplexMatrix m(d, d);
    m(i, j) = Complex(0.0, -0.5);
    m(j, i) = Complex(0.0, 0.5);
    return m;
}

// One summand of a matrix equality sum_t scale_t * Op_t(X_{b_t}) = RHS.
// If `shape` is nonempty the block is a 1x1 scalar x entering as x * shape.
// If `pt_da` > 0 the coefficient basis element is partially transposed on
// the (pt_da x pt_db) split before pairing (partial transpose is
// self-adjoint for the trace pairing).
struct EqTerm {
    int block = 0;
    double scale = 1.0;
    int pt_da = 0;
    int pt_db = 0;
    ComplexMatrix shape;
};

// Appends the d*d real rows of sum_t term_t = rhs to `problem`.
inline void emit_matrix_equality(sdp::SdpProblem &problem, int d,
                                 const std::vector<EqTerm> &terms, const ComplexMatrix &rhs) {
    auto add_row = [&](const ComplexMatrix &e, double rhs_value) {
        sdp::Constraint con;
        con.rhs = rhs_value;
        for (const auto &t : terms) {
            if (t.shape.rows() > 0) {
                ComplexMatrix coeff(1, 1);
                coeff(0, 0) = t.scale * qmath::hs_inner(e, t.shape);
                if (coeff(0, 0) == Complex(0.0, 0.0)) continue;
                auto it = con.block_coeffs.find(t.block);
                if (it == con.block_coeffs.end())
                    con.block_coeffs[t.block] = coeff;
                else
                    it->second += coeff;
            } else {
                ComplexMatrix coeff =
                    t.pt_da > 0 ? qmath::partial_transpose(e, t.pt_da, t.pt_db) : e;
                coeff *= Complex(t.scale, 0.0);
                auto it = con.block_coeffs.find(t.block);
                if (it == con.block_coeffs.end())
                    con.block_coeffs[t.block] = coeff;
                else
                    it->second += coeff;
            }
        }
        problem.constraints.push_back(std::move(con));
    };

    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            add_row(basis_re(d, i, j), rhs(i, j).real());
            if (i != j) add_row(basis_im(d, i, j), -rhs(i, j).imag());
        }
    }
}

}  // namespace vrd::detail
