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
 * Computable descriptions of free-state sets: diagonal (incoherent) states,
 * vertex polytopes (stabilizer states), and PPT states as the semidefinite
 * relaxation of separability. For two qubits PPT equals separability, so
 * entanglement results at that size are exact.
 */

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "vrd/states.hpp"

namespace vrd::resources {

using qmath::ComplexMatrix;
using qmath::DensityMatrix;

struct DiagonalStates {
    int dim;
};

struct VertexPolytope {
    std::vector<DensityMatrix> vertices;
};

struct PptStates {
    int dim_a;
    int dim_b;
};

class FreeSetSpec {
  public:
    using Kind = std::variant<DiagonalStates, VertexPolytope, PptStates>;

    FreeSetSpec(Kind kind, std::string label);

    const Kind &kind() const { return kind_; }
    const std::string &label() const { return label_; }
    int dim() const { return dim_; }

    bool is_diagonal() const { return std::holds_alternative<DiagonalStates>(kind_); }
    bool is_polytope() const { return std::holds_alternative<VertexPolytope>(kind_); }
    bool is_ppt() const { return std::holds_alternative<PptStates>(kind_); }
    const std::vector<DensityMatrix> &vertices() const;
    const PptStates &ppt() const { return std::get<PptStates>(kind_); }

  private:
    Kind kind_;
    std::string label_;
    int dim_;
};

/// Incoherent (diagonal) states in dimension d.
FreeSetSpec diagonal_states(int dim);

/// PPT states of a dA x dB bipartite system.
FreeSetSpec ppt_states(int dim_a, int dim_b);

/// The six single-qubit stabilizer states (eigenstates of X, Y, Z).
FreeSetSpec stabilizer_octahedron();

/// Convex hull of the 60 two-qubit pure stabilizer states, enumerated as
/// the Clifford orbit of |00>. `product_only` restricts to the 36 tensor
/// products of single-qubit vertices, a strictly smaller polytope that is
/// faster but only a relaxation; results computed with it are labeled.
FreeSetSpec two_qubit_stabilizer_polytope(bool product_only = false);

}  // namespace vrd::resources
