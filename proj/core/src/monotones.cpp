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

#include "vrd/monotones.hpp"

#include <cmath>

#include "encodings.hpp"
#include "vrd/eig.hpp"

namespace vrd::resources {

namespace {

using detail::EqTerm;
using detail::emit_matrix_equality;
using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::DensityMatrix;

constexpr double kInf = std::numeric_limits<double>::infinity();

MonotoneValue from_solution(const sdp::SdpSolution &sol, MonotoneMethod method,
                            int witness_block = 0) {
    if (sol.status == sdp::SolveStatus::Infeasible)
        return {kInf, method, std::nullopt};
    if (sol.status != sdp::SolveStatus::Optimal)
        throw std::runtime_error("monotone SDP did not converge: " + sdp::to_string(sol.status));
    MonotoneValue v;
    v.value = std::max(sol.primal_value, 0.0);
    v.method = method;
    v.certificate = MonotoneCertificate{sol.dual_blocks[witness_block], sol.dual_value};
    return v;
}

// Pure-state vector (top eigenvector), valid when rho is rank one.
std::vector<Complex> pure_vector(const DensityMatrix &rho) {
    const auto eig = qmath::hermitian_eig(rho.matrix());
    std::vector<Complex> v(rho.dim());
    for (int i = 0; i < rho.dim(); ++i) v[i] = eig.eigenvectors(i, 0);
    return v;
}

// min tr(omega) with omega >= 0 and rho + omega in the cone over F.
MonotoneValue robustness_generalized_sdp(const DensityMatrix &rho, const FreeSetSpec &free) {
    const int d = rho.dim();
    sdp::SdpProblem p;

    if (free.is_diagonal()) {
        // offdiag(rho + omega) = 0.
        p.block_dims = {d};
        p.objective = {ComplexMatrix::identity(d)};
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                sdp::Constraint cre;
                cre.block_coeffs[0] = detail::basis_re(d, i, j);
                cre.rhs = -rho(i, j).real();
                p.constraints.push_back(cre);
                sdp::Constraint cim;
                cim.block_coeffs[0] = detail::basis_im(d, i, j);
                cim.rhs = rho(i, j).imag();
                p.constraints.push_back(cim);
            }
        return from_solution(sdp::solve(p), MonotoneMethod::Sdp);
    }
    if (free.is_ppt()) {
        // blocks: omega, Z with Z = (rho + omega)^{T_B} >= 0.
        const auto [da, db] = free.ppt();
        p.block_dims = {d, d};
        p.objective = {ComplexMatrix::identity(d), ComplexMatrix::zero(d, d)};
        emit_matrix_equality(p, d,
                             {EqTerm{1, 1.0}, EqTerm{0, -1.0, da, db}},
                             qmath::partial_transpose(rho.matrix(), da, db));
        return from_solution(sdp::solve(p), MonotoneMethod::Sdp);
    }
    // Polytope: rho + omega = sum_i b_i v_i with b_i >= 0.
    const auto &verts = free.vertices();
    const int nv = static_cast<int>(verts.size());
    p.block_dims.assign(1, d);
    for (int i = 0; i < nv; ++i) p.block_dims.push_back(1);
    p.objective.resize(p.block_dims.size());
    p.objective[0] = ComplexMatrix::identity(d);
    std::vector<EqTerm> terms;
    terms.push_back(EqTerm{0, -1.0});
    for (int i = 0; i < nv; ++i) terms.push_back(EqTerm{1 + i, 1.0, 0, 0, verts[i].matrix()});
    emit_matrix_equality(p, d, terms, rho.matrix());
    return from_solution(sdp::solve(p), MonotoneMethod::Sdp);
}

}  // namespace

bool is_free_member(const DensityMatrix &rho, const FreeSetSpec &free, double tol) {
    if (rho.dim() != free.dim()) return false;
    if (free.is_diagonal()) {
        double off = 0.0;
        for (int i = 0; i < rho.dim(); ++i)
            for (int j = i + 1; j < rho.dim(); ++j) off = std::max(off, std::abs(rho(i, j)));
        return off <= tol;
    }
    if (free.is_ppt()) {
        const auto [da, db] = free.ppt();
        return qmath::min_eigenvalue(qmath::partial_transpose(rho.matrix(), da, db)) >= -tol;
    }
    return generalized_robustness(rho, free).value <= tol;
}

void validate_twirling(const TwirlingSpec &twirl, const FreeSetSpec &free) {
    if (!twirl.target.is_pure())
        throw std::invalid_argument("TwirlingSpec: target must be pure");
    if (!is_free_member(twirl.residual_free_state, free, 1e-8))
        throw std::invalid_argument("TwirlingSpec: residual state is not free within 1e-8");
    const double overlap =
        qmath::hs_inner(twirl.target.matrix(), twirl.residual_free_state.matrix());
    if (std::abs(overlap) > 1e-8)
        throw std::invalid_argument(
            "TwirlingSpec: residual state is not a fixed point (tr[psi sigma*] != 0)");
}

MonotoneValue generalized_robustness(const DensityMatrix &rho, const FreeSetSpec &free) {
    if (rho.dim() != free.dim())
        throw std::invalid_argument("generalized_robustness: dimension mismatch");
    if (free.is_diagonal() && rho.dim() > 16) {
        // Pure-state closed form: (sum_i |c_i|)^2 - 1. Cross-checked against
        // the SDP at small dimensions in the test suite.
        if (!rho.is_pure())
            throw UnsupportedError(
                "generalized_robustness: diagonal free set beyond d=16 supports pure states only");
        const auto v = pure_vector(rho);
        double s = 0.0;
        for (const auto &c : v) s += std::abs(c);
        return {std::max(s * s - 1.0, 0.0), MonotoneMethod::ClosedForm, std::nullopt};
    }
    return robustness_generalized_sdp(rho, free);
}

MonotoneValue standard_robustness(const DensityMatrix &rho, const FreeSetSpec &free) {
    if (rho.dim() != free.dim())
        throw std::invalid_argument("standard_robustness: dimension mismatch");
    const int d = rho.dim();

    if (free.is_diagonal()) {
        // Incoherent noise has no off-diagonal part, so mixing can never
        // cancel coherences: R^s is 0 on diagonal states and infinite
        // otherwise.
        double off = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off = std::max(off, std::abs(rho(i, j)));
        if (off <= 1e-12) return {0.0, MonotoneMethod::ClosedForm, std::nullopt};
        return {kInf, MonotoneMethod::ClosedForm, std::nullopt};
    }

    sdp::SdpProblem p;
    if (free.is_ppt()) {
        // blocks: N, N^{T_B}, Y, Y^{T_B}; rho + N = Y; both N and Y PPT.
        const auto [da, db] = free.ppt();
        p.block_dims = {d, d, d, d};
        p.objective.resize(4);
        p.objective[0] = ComplexMatrix::identity(d);
        emit_matrix_equality(p, d, {EqTerm{1, 1.0}, EqTerm{0, -1.0, da, db}},
                             ComplexMatrix::zero(d, d));
        emit_matrix_equality(p, d, {EqTerm{2, 1.0}, EqTerm{0, -1.0}}, rho.matrix());
        emit_matrix_equality(p, d, {EqTerm{3, 1.0}, EqTerm{2, -1.0, da, db}},
                             ComplexMatrix::zero(d, d));
        return from_solution(sdp::solve(p), MonotoneMethod::Sdp);
    }
    // Polytope: rho + sum_i a_i v_i = sum_j b_j v_j, minimize sum a_i.
    const auto &verts = free.vertices();
    const int nv = static_cast<int>(verts.size());
    p.block_dims.assign(2 * nv, 1);
    p.objective.resize(2 * nv);
    for (int i = 0; i < nv; ++i) {
        ComplexMatrix one(1, 1);
        one(0, 0) = 1.0;
        p.objective[i] = one;  // a_i weights
    }
    std::vector<EqTerm> terms;
    for (int i = 0; i < nv; ++i) terms.push_back(EqTerm{i, 1.0, 0, 0, verts[i].matrix()});
    for (int j = 0; j < nv; ++j) terms.push_back(EqTerm{nv + j, -1.0, 0, 0, verts[j].matrix()});
    ComplexMatrix rhs = rho.matrix();
    rhs *= Complex(-1.0, 0.0);
    emit_matrix_equality(p, d, terms, rhs);
    return from_solution(sdp::solve(p), MonotoneMethod::Sdp);
}

MonotoneValue free_fidelity(const DensityMatrix &psi, const FreeSetSpec &free) {
    if (psi.dim() != free.dim())
        throw std::invalid_argument("free_fidelity: dimension mismatch");
    if (!psi.is_pure()) throw std::invalid_argument("free_fidelity: psi must be pure");

    if (free.is_diagonal()) {
        double best = 0.0;
        for (int i = 0; i < psi.dim(); ++i) best = std::max(best, psi(i, i).real());
        return {best, MonotoneMethod::VertexEnum, std::nullopt};
    }
    if (free.is_polytope()) {
        double best = 0.0;
        for (const auto &v : free.vertices())
            best = std::max(best, qmath::hs_inner(psi.matrix(), v.matrix()));
        return {best, MonotoneMethod::VertexEnum, std::nullopt};
    }
    // PPT: maximize tr(psi sigma) over sigma >= 0, sigma^{T_B} >= 0, tr = 1.
    const int d = psi.dim();
    const auto [da, db] = free.ppt();
    sdp::SdpProblem p;
    p.block_dims = {d, d};
    p.objective.resize(2);
    ComplexMatrix c = psi.matrix();
    c *= Complex(-1.0, 0.0);
    p.objective[0] = c;
    sdp::Constraint tr1;
    tr1.block_coeffs[0] = ComplexMatrix::identity(d);
    tr1.rhs = 1.0;
    p.constraints.push_back(tr1);
    emit_matrix_equality(p, d, {EqTerm{1, 1.0}, EqTerm{0, -1.0, da, db}},
                         ComplexMatrix::zero(d, d));
    auto sol = sdp::solve(p);
    if (sol.status != sdp::SolveStatus::Optimal)
        throw std::runtime_error("free_fidelity SDP did not converge");
    MonotoneValue v;
    v.value = -sol.primal_value;
    v.method = MonotoneMethod::Sdp;
    v.certificate = MonotoneCertificate{sol.dual_blocks[0], -sol.dual_value};
    return v;
}

MonotoneValue max_overlap_fo(const DensityMatrix &rho, const DensityMatrix &target,
                             const FreeSetSpec &free_target,
                             const std::optional<TwirlingSpec> &twirl) {
    if (rho.dim() != target.dim())
        throw UnsupportedError(
            "max_overlap_fo: state and target live in different dimensions; "
            "unsupported, use zeta bounds instead");
    if (!target.is_pure()) throw std::invalid_argument("max_overlap_fo: target must be pure");

    bool justified = false;
    if (twirl) {
        validate_twirling(*twirl, free_target);
        if ((twirl->target.matrix() - target.matrix()).max_abs() > 1e-10)
            throw std::invalid_argument("max_overlap_fo: twirling spec targets a different state");
        justified = true;
    }
    const double d = rho.dim();
    const double overlap = qmath::hs_inner(rho.matrix(), target.matrix());
    if (!justified) {
        // Isotropic-type input: rho = q psi + (1-q) I/d, for which free
        // operations cannot improve the target fidelity.
        const double q = (overlap - 1.0 / d) / (1.0 - 1.0 / d);
        ComplexMatrix recon = target.matrix();
        recon *= Complex(q, 0.0);
        for (int i = 0; i < rho.dim(); ++i) recon(i, i) += (1.0 - q) / d;
        justified = (recon - rho.matrix()).max_abs() <= 1e-9 && q >= -1e-9 && q <= 1.0 + 1e-9;
    }
    if (!justified)
        throw UnsupportedError(
            "max_overlap_fo: no twirling operation and input is not isotropic-type; "
            "unsupported, use zeta bounds instead");

    const double ff = free_fidelity(target, free_target).value;
    return {std::max(overlap, ff), MonotoneMethod::ClosedForm, std::nullopt};
}

CoincidenceReport coincidence_check(const DensityMatrix &psi, const FreeSetSpec &free) {
    if (!psi.is_pure()) throw std::invalid_argument("coincidence_check: psi must be pure");
    CoincidenceReport rep;
    rep.fs_inv = 1.0 / free_fidelity(psi, free).value;
    rep.rs_plus_1 = standard_robustness(psi, free).value + 1.0;
    rep.rg_plus_1 = generalized_robustness(psi, free).value + 1.0;

    if (free.is_diagonal()) {
        double lo = 1.0, hi = 0.0;
        for (int i = 0; i < psi.dim(); ++i) {
            lo = std::min(lo, psi(i, i).real());
            hi = std::max(hi, psi(i, i).real());
        }
        rep.constant_overlap = hi - lo <= 1e-9;
    } else if (free.is_polytope()) {
        double lo = kInf, hi = -kInf;
        for (const auto &v : free.vertices()) {
            const double o = qmath::hs_inner(psi.matrix(), v.matrix());
            lo = std::min(lo, o);
            hi = std::max(hi, o);
        }
        rep.constant_overlap = hi - lo <= 1e-9;
    } else {
        rep.constant_overlap = false;  // PPT overlaps with a pure state always vary
    }

    constexpr double kTol = 1e-6;
    rep.coincide_s = std::isfinite(rep.rs_plus_1) && std::abs(rep.fs_inv - rep.rs_plus_1) <= kTol;
    rep.coincide_g = rep.constant_overlap && std::abs(rep.fs_inv - rep.rg_plus_1) <= kTol;
    return rep;
}

}  // namespace vrd::resources
