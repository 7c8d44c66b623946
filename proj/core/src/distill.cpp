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

#include "vrd/distill.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "encodings.hpp"
#include "vrd/eig.hpp"

namespace vrd::distill {

namespace {

using detail::EqTerm;
using detail::emit_matrix_equality;
using qmath::Complex;
using resources::UnsupportedError;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Appends the free-set constraints tr(Q sigma) (<= or =) mu/k for one sign,
// where `q_block` holds Q and `mu_block` the 1x1 scalar mu. For the PPT set
// the constraint is the dual-cone identity (mu/k) I - Q = A + B^{T_B} with
// fresh PSD blocks A and B appended by the caller.
void add_free_constraints(sdp::SdpProblem &p, const FreeSetSpec &free, double k, int q_block,
                          int mu_block, ZetaVariant variant, int a_block, int b_block) {
    const int d = free.dim();
    const auto rel =
        variant == ZetaVariant::S ? sdp::Relation::LessEqual : sdp::Relation::Equal;
    if (free.is_diagonal()) {
        for (int i = 0; i < d; ++i) {
            sdp::Constraint con;
            con.block_coeffs[q_block] = detail::basis_re(d, i, i);
            qmath::ComplexMatrix mu_coeff(1, 1);
            mu_coeff(0, 0) = -1.0 / k;
            con.block_coeffs[mu_block] = mu_coeff;
            con.relation = rel;
            con.rhs = 0.0;
            p.constraints.push_back(std::move(con));
        }
        return;
    }
    if (free.is_polytope()) {
        for (const auto &v : free.vertices()) {
            sdp::Constraint con;
            con.block_coeffs[q_block] = v.matrix();
            qmath::ComplexMatrix mu_coeff(1, 1);
            mu_coeff(0, 0) = -1.0 / k;
            con.block_coeffs[mu_block] = mu_coeff;
            con.relation = rel;
            con.rhs = 0.0;
            p.constraints.push_back(std::move(con));
        }
        return;
    }
    if (variant == ZetaVariant::G)
        throw UnsupportedError(
            "zeta: equality variant over the PPT set degenerates (the overlap is "
            "not constant on a full-dimensional set); use the s variant");
    const auto [da, db] = free.ppt();
    std::vector<EqTerm> terms;
    terms.push_back(EqTerm{q_block, 1.0});
    terms.push_back(EqTerm{a_block, 1.0});
    terms.push_back(EqTerm{b_block, 1.0, da, db});
    EqTerm mu_term;
    mu_term.block = mu_block;
    mu_term.scale = -1.0 / k;
    mu_term.shape = qmath::ComplexMatrix::identity(d);
    terms.push_back(mu_term);
    emit_matrix_equality(p, d, terms, qmath::ComplexMatrix::zero(d, d));
}

}  // namespace

ZetaResult zeta(const DensityMatrix &rho, double k, double eps, ZetaVariant variant,
                const FreeSetSpec &free) {
    if (!(k > 0.0)) throw std::invalid_argument("zeta: k must be positive");
    if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("zeta: eps must be in [0, 1)");
    if (rho.dim() != free.dim()) throw std::invalid_argument("zeta: dimension mismatch");
    const int d = rho.dim();
    const bool ppt = free.is_ppt();
    if (ppt && variant == ZetaVariant::G)
        throw UnsupportedError(
            "zeta: equality variant over the PPT set degenerates (the overlap is "
            "not constant on a full-dimensional set); use the s variant");

    // Blocks: Q+, Q-, T+, T-, mu+, mu- and, for PPT, dual-cone blocks per sign.
    sdp::SdpProblem p;
    p.block_dims = {d, d, d, d, 1, 1};
    const int kQp = 0, kQm = 1, kTp = 2, kTm = 3, kMup = 4, kMum = 5;
    int a_p = -1, b_p = -1, a_m = -1, b_m = -1;
    if (ppt) {
        a_p = 6;
        b_p = 7;
        a_m = 8;
        b_m = 9;
        p.block_dims.insert(p.block_dims.end(), {d, d, d, d});
    }
    p.objective.resize(p.block_dims.size());
    qmath::ComplexMatrix one(1, 1);
    one(0, 0) = 1.0;
    p.objective[kMup] = one;
    p.objective[kMum] = one;

    // Q + T - mu I = 0 per sign.
    for (int sign = 0; sign < 2; ++sign) {
        EqTerm mu_term;
        mu_term.block = sign == 0 ? kMup : kMum;
        mu_term.scale = -1.0;
        mu_term.shape = qmath::ComplexMatrix::identity(d);
        emit_matrix_equality(p, d,
                             {EqTerm{sign == 0 ? kQp : kQm, 1.0},
                              EqTerm{sign == 0 ? kTp : kTm, 1.0}, mu_term},
                             qmath::ComplexMatrix::zero(d, d));
    }
    add_free_constraints(p, free, k, kQp, kMup, variant, a_p, b_p);
    add_free_constraints(p, free, k, kQm, kMum, variant, a_m, b_m);

    {
        sdp::Constraint con;  // mu+ - mu- = 1
        qmath::ComplexMatrix plus(1, 1), minus(1, 1);
        plus(0, 0) = 1.0;
        minus(0, 0) = -1.0;
        con.block_coeffs[kMup] = plus;
        con.block_coeffs[kMum] = minus;
        con.rhs = 1.0;
        p.constraints.push_back(std::move(con));
    }
    {
        sdp::Constraint con;  // tr rho (Q+ - Q-) >= 1 - eps
        qmath::ComplexMatrix neg = rho.matrix();
        neg *= Complex(-1.0, 0.0);
        con.block_coeffs[kQp] = neg;
        con.block_coeffs[kQm] = rho.matrix();
        con.relation = sdp::Relation::LessEqual;
        con.rhs = -(1.0 - eps);
        p.constraints.push_back(std::move(con));
    }

    const sdp::SdpSolution sol = sdp::solve(p);
    ZetaResult res;
    res.variant = variant;
    res.k = k;
    res.status = sol.status;
    res.iterations = sol.iterations;
    if (sol.status == sdp::SolveStatus::Optimal) {
        res.value = sol.primal_value;
        res.mu_plus = sol.primal_blocks[kMup](0, 0).real();
        res.mu_minus = sol.primal_blocks[kMum](0, 0).real();
        res.q_plus = sol.primal_blocks[kQp];
        res.q_minus = sol.primal_blocks[kQm];
    } else if (sol.status == sdp::SolveStatus::Infeasible) {
        res.value = kInf;
    }
    return res;
}

double max_free_overlap_program(const DensityMatrix &rho, double k, const FreeSetSpec &free) {
    if (!(k > 0.0)) throw std::invalid_argument("max_free_overlap_program: k must be positive");
    if (rho.dim() != free.dim())
        throw std::invalid_argument("max_free_overlap_program: dimension mismatch");
    const int d = rho.dim();
    const bool ppt = free.is_ppt();

    sdp::SdpProblem p;
    p.block_dims = {d, d};  // Q, T = I - Q
    int a_b = -1, b_b = -1;
    if (ppt) {
        a_b = 2;
        b_b = 3;
        p.block_dims.insert(p.block_dims.end(), {d, d});
    }
    p.objective.resize(p.block_dims.size());
    qmath::ComplexMatrix c = rho.matrix();
    c *= Complex(-1.0, 0.0);
    p.objective[0] = c;

    emit_matrix_equality(p, d, {EqTerm{0, 1.0}, EqTerm{1, 1.0}},
                         qmath::ComplexMatrix::identity(d));
    if (free.is_diagonal()) {
        for (int i = 0; i < d; ++i) {
            sdp::Constraint con;
            con.block_coeffs[0] = detail::basis_re(d, i, i);
            con.relation = sdp::Relation::LessEqual;
            con.rhs = 1.0 / k;
            p.constraints.push_back(std::move(con));
        }
    } else if (free.is_polytope()) {
        for (const auto &v : free.vertices()) {
            sdp::Constraint con;
            con.block_coeffs[0] = v.matrix();
            con.relation = sdp::Relation::LessEqual;
            con.rhs = 1.0 / k;
            p.constraints.push_back(std::move(con));
        }
    } else {
        const auto [da, db] = free.ppt();
        qmath::ComplexMatrix rhs = qmath::ComplexMatrix::identity(d);
        rhs *= Complex(1.0 / k, 0.0);
        emit_matrix_equality(p, d,
                             {EqTerm{0, 1.0}, EqTerm{a_b, 1.0}, EqTerm{b_b, 1.0, da, db}}, rhs);
    }

    const sdp::SdpSolution sol = sdp::solve(p);
    if (sol.status != sdp::SolveStatus::Optimal)
        throw std::runtime_error("max_free_overlap_program: solver returned " +
                                 sdp::to_string(sol.status));
    return -sol.primal_value;
}

double overhead_closed_form(double f, double eps) {
    if (!(f > 0.0) || f > 1.0 + 1e-7)
        throw std::invalid_argument("overhead_closed_form: overlap must be in (0, 1]");
    if (eps < 0.0 || eps >= 1.0)
        throw std::invalid_argument("overhead_closed_form: eps must be in [0, 1)");
    f = std::min(f, 1.0);
    return std::max(2.0 * (1.0 - eps) / f - 1.0, 1.0);
}

struct Theory::Cache {
    std::mutex mutex;
    std::map<int, TargetInfo> targets;
};

Theory::Theory(std::string name, FreeSetSpec input_free, DensityMatrix family_pure, int max_m,
               std::function<TargetInfo(int)> build_target)
    : name_(std::move(name)),
      input_dim_(family_pure.dim()),
      input_free_(std::move(input_free)),
      family_pure_(std::move(family_pure)),
      max_m_(max_m),
      build_target_(std::move(build_target)),
      cache_(std::make_shared<Cache>()) {}

DensityMatrix Theory::family_state(double p) const {
    return qmath::isotropic_state(family_pure_, p);
}

const TargetInfo &Theory::target(int m) const {
    if (m < 1 || m > max_m_)
        throw UnsupportedError(name_ + ": target copy count m=" + std::to_string(m) +
                               " outside supported range [1, " + std::to_string(max_m_) + "]");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->targets.find(m);
    if (it == cache_->targets.end()) it = cache_->targets.emplace(m, build_target_(m)).first;
    return it->second;
}

namespace {

TargetInfo make_target(DensityMatrix psi, FreeSetSpec free,
                       std::optional<resources::TwirlingSpec> twirl) {
    TargetInfo t{std::move(psi), std::move(free), 0.0, 0.0, 0.0, {}, std::move(twirl)};
    t.fidelity_free = resources::free_fidelity(t.psi, t.free_set).value;
    t.coincidence = resources::coincidence_check(t.psi, t.free_set);
    t.robustness_std = t.coincidence.rs_plus_1 - 1.0;
    t.robustness_gen = t.coincidence.rg_plus_1 - 1.0;
    if (t.twirl) resources::validate_twirling(*t.twirl, t.free_set);
    return t;
}

}  // namespace

Theory Theory::coherence() {
    return Theory(
        "coherence", resources::diagonal_states(4), qmath::maximally_coherent_state(4), 6,
        [](int m) {
            const int d = 1 << m;
            return make_target(qmath::maximally_coherent_state(d), resources::diagonal_states(d),
                               std::nullopt);
        });
}

Theory Theory::entanglement() {
    return Theory(
        "entanglement", resources::ppt_states(2, 2), qmath::bell_state(), 2, [](int m) {
            if (m == 1) {
                const DensityMatrix psi = qmath::bell_state();
                qmath::ComplexMatrix residual = qmath::ComplexMatrix::identity(4) - psi.matrix();
                residual *= Complex(1.0 / 3.0, 0.0);
                resources::TwirlingSpec twirl{psi, DensityMatrix(residual)};
                return make_target(psi, resources::ppt_states(2, 2), twirl);
            }
            // Two Bell pairs, reordered to the (A1 A2 | B1 B2) cut.
            const qmath::ComplexMatrix two =
                qmath::kron(qmath::bell_state().matrix(), qmath::bell_state().matrix());
            const qmath::ComplexMatrix cut =
                qmath::permute_subsystems(two, {2, 2, 2, 2}, {0, 2, 1, 3});
            return make_target(DensityMatrix(cut), resources::ppt_states(4, 4), std::nullopt);
        });
}

Theory Theory::magic(bool product_only_m2) {
    return Theory("magic", resources::stabilizer_octahedron(), qmath::t_state(), 2,
                  [product_only_m2](int m) {
                      if (m == 1)
                          return make_target(qmath::t_state(), resources::stabilizer_octahedron(),
                                             std::nullopt);
                      const qmath::ComplexMatrix two =
                          qmath::kron(qmath::t_state().matrix(), qmath::t_state().matrix());
                      return make_target(
                          DensityMatrix(two),
                          resources::two_qubit_stabilizer_polytope(product_only_m2), std::nullopt);
                  });
}

std::string to_string(OverheadMethod m) {
    switch (m) {
        case OverheadMethod::Thm1S: return "thm1-s";
        case OverheadMethod::Thm1G: return "thm1-g";
        case OverheadMethod::Thm2: return "thm2";
        case OverheadMethod::Both: return "both";
    }
    return "?";
}

OverheadResult overhead_bounds(const DensityMatrix &rho, int m, double eps, const Theory &theory) {
    if (eps < 0.0 || eps >= 1.0)
        throw std::invalid_argument("overhead_bounds: eps must be in [0, 1)");
    if (rho.dim() != theory.input_dim())
        throw std::invalid_argument("overhead_bounds: state does not match the theory's input space");
    const TargetInfo &t = theory.target(m);
    const double k_low = 1.0 / t.fidelity_free;

    OverheadResult res;
    res.epsilon = eps;
    res.m = m;
    res.formula =
        overhead_closed_form(max_free_overlap_program(rho, k_low, theory.input_free()), eps);
    res.formula_guaranteed = t.coincidence.coincide_s || t.twirl.has_value();

    auto require_solved = [](const ZetaResult &z) {
        if (z.status != sdp::SolveStatus::Optimal && z.status != sdp::SolveStatus::Infeasible)
            throw std::runtime_error("overhead_bounds: zeta solver returned " +
                                     sdp::to_string(z.status));
    };

    if (t.coincidence.coincide_s) {
        ZetaResult z = zeta(rho, k_low, eps, ZetaVariant::S, theory.input_free());
        require_solved(z);
        res.lower = res.upper = z.value;
        res.exact = z.value;
        res.method = t.twirl ? OverheadMethod::Both : OverheadMethod::Thm1S;
        res.witness = std::move(z);
    } else if (t.coincidence.coincide_g) {
        ZetaResult z = zeta(rho, k_low, eps, ZetaVariant::G, theory.input_free());
        require_solved(z);
        res.method = OverheadMethod::Thm1G;
        if (z.status == sdp::SolveStatus::Optimal) {
            res.lower = res.upper = z.value;
            res.exact = z.value;
        } else {
            // No virtual operation attains the condition; the overhead is
            // infinite. The formula value remains a finite lower bound of
            // the unconstrained-route cost and is reported separately.
            res.g_infeasible = true;
            res.lower = kInf;
            res.upper = kInf;
        }
        res.witness = std::move(z);
    } else {
        ZetaResult zlow = zeta(rho, k_low, eps, ZetaVariant::S, theory.input_free());
        require_solved(zlow);
        res.lower = zlow.value;
        res.method = OverheadMethod::Thm2;
        res.witness = std::move(zlow);
        if (std::isfinite(t.robustness_std)) {
            ZetaResult zup =
                zeta(rho, t.robustness_std + 1.0, eps, ZetaVariant::S, theory.input_free());
            require_solved(zup);
            res.upper = zup.value;
        }
    }
    return res;
}

int conventional_rate(const DensityMatrix &rho, double eps, const Theory &theory, int m_max) {
    if (m_max < 1) throw std::invalid_argument("conventional_rate: m_max must be >= 1");
    int best = 0;
    for (int m = 1; m <= m_max; ++m) {
        const double k = 1.0 / theory.target(m).fidelity_free;
        const double g = max_free_overlap_program(rho, k, theory.input_free());
        // 1e-9 slack absorbs solver noise at the feasibility boundary.
        if (g >= 1.0 - eps - 1e-9) best = m;
    }
    return best;
}

RateResult virtual_rate(const DensityMatrix &rho, double eps, const Theory &theory, int m_max) {
    if (m_max < 1) throw std::invalid_argument("virtual_rate: m_max must be >= 1");
    RateResult res;
    res.epsilon = eps;
    for (int m = 1; m <= m_max; ++m) {
        const double k = 1.0 / theory.target(m).fidelity_free;
        const double g = max_free_overlap_program(rho, k, theory.input_free());
        const double c = overhead_closed_form(g, eps);
        const double v = static_cast<double>(m) / (c * c);
        res.per_m.push_back({m, c, v});
        if (res.m_star == 0 || v > res.rate + 1e-9) {
            res.rate = v;
            res.m_star = m;
        }
    }
    return res;
}

sampler::VirtualOperation build_virtual_operation_teleport(double p) {
    if (p < 1.0 / 3.0 - 1e-12 || p > 1.0 + 1e-12)
        throw std::invalid_argument(
            "build_virtual_operation_teleport: the explicit construction is valid for p in "
            "[1/3, 1]");
    const double lambda_plus = 4.0 / (1.0 + 3.0 * p);
    const double lambda_minus = (3.0 - 3.0 * p) / (1.0 + 3.0 * p);

    std::vector<sampler::VirtualOperation::Term> terms;
    terms.push_back({lambda_plus, qmath::QuantumChannel::identity(4)});
    if (lambda_minus > 1e-15) {
        qmath::ComplexMatrix residual =
            qmath::ComplexMatrix::identity(4) - qmath::bell_state().matrix();
        residual *= Complex(1.0 / 3.0, 0.0);
        terms.push_back(
            {-lambda_minus, qmath::QuantumChannel::replacement(DensityMatrix(residual), 4)});
    }
    return sampler::VirtualOperation(std::move(terms));
}

double teleport_overhead_formula(double p) {
    return std::min((7.0 - 3.0 * p) / (1.0 + 3.0 * p), 3.0);
}

}  // namespace vrd::distill
