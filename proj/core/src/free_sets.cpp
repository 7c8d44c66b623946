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

#include "vrd/free_sets.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace vrd::resources {

namespace {
using qmath::Complex;

int kind_dim(const FreeSetSpec::Kind &kind) {
    if (const auto *d = std::get_if<DiagonalStates>(&kind)) return d->dim;
    if (const auto *p = std::get_if<PptStates>(&kind)) return p->dim_a * p->dim_b;
    const auto &v = std::get<VertexPolytope>(kind);
    if (v.vertices.empty()) throw std::invalid_argument("FreeSetSpec: empty vertex polytope");
    return v.vertices.front().dim();
}

std::vector<Complex> normalized(std::vector<Complex> v) {
    double n = 0.0;
    for (const auto &x : v) n += std::norm(x);
    n = std::sqrt(n);
    for (auto &x : v) x /= n;
    // Canonical global phase: first significant amplitude real positive.
    for (const auto &x : v) {
        if (std::abs(x) > 1e-8) {
            const Complex ph = std::conj(x) / std::abs(x);
            for (auto &y : v) y *= ph;
            break;
        }
    }
    return v;
}

std::string state_key(const std::vector<Complex> &v) {
    std::string key;
    char buf[32];
    for (const auto &x : v) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f;", x.real() + 0.0, x.imag() + 0.0);
        key += buf;
    }
    return key;
}

std::vector<Complex> apply_gate(const std::vector<std::vector<Complex>> &gate,
                                const std::vector<Complex> &v) {
    const std::size_t n = v.size();
    std::vector<Complex> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += gate[i][j] * v[j];
    return out;
}

// Two-qubit Clifford generators as dense 4x4 gates.
std::vector<std::vector<std::vector<Complex>>> clifford_generators() {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex I1(0.0, 1.0);
    auto id2 = std::vector<std::vector<Complex>>{{1, 0}, {0, 1}};
    auto had = std::vector<std::vector<Complex>>{{h, h}, {h, -h}};
    auto phs = std::vector<std::vector<Complex>>{{1, 0}, {0, I1}};

    auto kron2 = [](const std::vector<std::vector<Complex>> &a,
                    const std::vector<std::vector<Complex>> &b) {
        std::vector<std::vector<Complex>> c(4, std::vector<Complex>(4, 0.0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) c[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
        return c;
    };

    std::vector<std::vector<std::vector<Complex>>> gates;
    gates.push_back(kron2(had, id2));
    gates.push_back(kron2(id2, had));
    gates.push_back(kron2(phs, id2));
    gates.push_back(kron2(id2, phs));
    std::vector<std::vector<Complex>> cnot01(4, std::vector<Complex>(4, 0.0));
    cnot01[0][0] = 1;
    cnot01[1][1] = 1;
    cnot01[2][3] = 1;
    cnot01[3][2] = 1;
    std::vector<std::vector<Complex>> cnot10(4, std::vector<Complex>(4, 0.0));
    cnot10[0][0] = 1;
    cnot10[1][3] = 1;
    cnot10[2][2] = 1;
    cnot10[3][1] = 1;
    gates.push_back(cnot01);
    gates.push_back(cnot10);
    return gates;
}

}  // namespace

FreeSetSpec::FreeSetSpec(Kind kind, std::string label)
    : kind_(std::move(kind)), label_(std::move(label)), dim_(kind_dim(kind_)) {
    if (const auto *d = std::get_if<DiagonalStates>(&kind_)) {
        if (d->dim < 2) throw std::invalid_argument("diagonal free set needs dim >= 2");
    }
    if (const auto *v = std::get_if<VertexPolytope>(&kind_)) {
        for (const auto &vert : v->vertices)
            if (vert.dim() != dim_)
                throw std::invalid_argument("vertex polytope: mixed dimensions");
    }
}

const std::vector<DensityMatrix> &FreeSetSpec::vertices() const {
    return std::get<VertexPolytope>(kind_).vertices;
}

FreeSetSpec diagonal_states(int dim) {
    return FreeSetSpec(DiagonalStates{dim}, "incoherent(d=" + std::to_string(dim) + ")");
}

FreeSetSpec ppt_states(int dim_a, int dim_b) {
    return FreeSetSpec(PptStates{dim_a, dim_b},
                       "ppt(" + std::to_string(dim_a) + "x" + std::to_string(dim_b) + ")");
}

FreeSetSpec stabilizer_octahedron() {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex I1(0.0, 1.0);
    std::vector<DensityMatrix> v;
    v.push_back(qmath::basis_state(2, 0));
    v.push_back(qmath::basis_state(2, 1));
    v.push_back(DensityMatrix(ComplexMatrix::projector({h, h})));
    v.push_back(DensityMatrix(ComplexMatrix::projector({h, -h})));
    v.push_back(DensityMatrix(ComplexMatrix::projector({h, h * I1})));
    v.push_back(DensityMatrix(ComplexMatrix::projector({h, -h * I1})));
    return FreeSetSpec(VertexPolytope{std::move(v)}, "stabilizer(1 qubit)");
}

FreeSetSpec two_qubit_stabilizer_polytope(bool product_only) {
    if (product_only) {
        const auto oct = stabilizer_octahedron();
        std::vector<DensityMatrix> v;
        for (const auto &a : oct.vertices())
            for (const auto &b : oct.vertices())
                v.push_back(DensityMatrix(qmath::kron(a.matrix(), b.matrix())));
        return FreeSetSpec(VertexPolytope{std::move(v)}, "stabilizer(2 qubits, product only)");
    }

    // Clifford orbit of |00>, breadth-first until closure.
    const auto gates = clifford_generators();
    std::map<std::string, std::vector<Complex>> seen;
    std::vector<std::vector<Complex>> frontier;
    std::vector<Complex> start = {1, 0, 0, 0};
    seen[state_key(start)] = start;
    frontier.push_back(start);
    while (!frontier.empty()) {
        std::vector<std::vector<Complex>> next;
        for (const auto &v : frontier) {
            for (const auto &g : gates) {
                auto w = normalized(apply_gate(g, v));
                const std::string key = state_key(w);
                if (seen.emplace(key, w).second) next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    if (seen.size() != 60)
        throw std::logic_error("two-qubit stabilizer enumeration produced " +
                               std::to_string(seen.size()) + " states, expected 60");
    std::vector<DensityMatrix> v;
    v.reserve(60);
    for (const auto &[key, vec] : seen) v.push_back(DensityMatrix(ComplexMatrix::projector(vec)));
    return FreeSetSpec(VertexPolytope{std::move(v)}, "stabilizer(2 qubits)");
}

}  // namespace vrd::resources
