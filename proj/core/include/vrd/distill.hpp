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
 * Virtual distillation overheads and rates.
 *
 * The central quantity is the overhead C of simulating measurement
 * statistics of a pure target from a noisy input with signed mixtures of
 * free operations. It is bounded (often exactly) by the zeta programs: for
 * a parameter k,
 *
 *   zeta_eps(rho, k) = min mu+ + mu-   s.t.  0 <= Q+- <= mu+- I,
 *                                            tr(Q+- sigma) <= mu+-/k  (all free sigma),
 *                                            mu+ - mu- = 1,
 *                                            tr rho (Q+ - Q-) >= 1 - eps,
 *
 * with equality variants of the free-set constraints giving the "g" flavor.
 * Evaluated at k = 1/F(target) and k = 1 + R(target) these sandwich the
 * true overhead, and coincide for theories whose target monotones match.
 * A companion closed form max{2(1-eps)/f - 1, 1} applies whenever a
 * generalized twirling operation exists.
 */

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vrd/monotones.hpp"
#include "vrd/sampler.hpp"

namespace vrd::distill {

using qmath::ComplexMatrix;
using qmath::DensityMatrix;
using resources::FreeSetSpec;

enum class ZetaVariant { S, G };

struct ZetaResult {
    sdp::SolveStatus status = sdp::SolveStatus::NumericalFailure;
    double value = 0.0;  ///< mu+ + mu-; +infinity when Infeasible
    double mu_plus = 0.0;
    double mu_minus = 0.0;
    ComplexMatrix q_plus;
    ComplexMatrix q_minus;
    ZetaVariant variant = ZetaVariant::S;
    double k = 0.0;
    int iterations = 0;
};

/// Solves the zeta program. The "g" variant with a PPT free set is
/// unsupported (the equality constraints degenerate); throws UnsupportedError.
ZetaResult zeta(const DensityMatrix &rho, double k, double eps, ZetaVariant variant,
                const FreeSetSpec &free);

/// max{ tr(rho Q) : 0 <= Q <= I, tr(Q sigma) <= 1/k for all free sigma }.
/// The best target overlap reachable by a single free operation; drives both
/// the closed-form overhead and the conventional-rate feasibility test.
double max_free_overlap_program(const DensityMatrix &rho, double k, const FreeSetSpec &free);

/// max{ 2(1-eps)/f - 1, 1 }: the overhead closed form for overlap f.
double overhead_closed_form(double f, double eps);

struct TargetInfo {
    DensityMatrix psi;        ///< m-unit target state
    FreeSetSpec free_set;     ///< free set of the target space
    double fidelity_free;     ///< F(psi)
    double robustness_std;    ///< R^s(psi), may be +infinity
    double robustness_gen;    ///< R^g(psi)
    resources::CoincidenceReport coincidence;
    std::optional<resources::TwirlingSpec> twirl;
};

/// A resource theory instance: the input-space free set, the isotropic noise
/// family of the worked examples, and per-m target data (cached).
class Theory {
  public:
    const std::string &name() const { return name_; }
    int input_dim() const { return input_dim_; }
    const FreeSetSpec &input_free() const { return input_free_; }
    int max_m() const { return max_m_; }

    /// rho_p = p psi_family + (1-p) I/d.
    DensityMatrix family_state(double p) const;

    /// Target data for distilling m units; throws UnsupportedError beyond max_m.
    const TargetInfo &target(int m) const;

    /// Four-dimensional coherent input family; targets are m maximally
    /// coherent qubit states (dimension 2^m).
    static Theory coherence();
    /// Two-qubit isotropic family; targets are m Bell pairs under PPT.
    static Theory entanglement();
    /// Noisy T-state family; targets are m T states over the stabilizer
    /// polytope (exact 60-vertex set at m = 2 unless product_only).
    static Theory magic(bool product_only_m2 = false);

  private:
    struct Cache;
    std::string name_;
    int input_dim_;
    FreeSetSpec input_free_;
    DensityMatrix family_pure_;
    int max_m_;
    std::function<TargetInfo(int)> build_target_;
    std::shared_ptr<Cache> cache_;

    Theory(std::string name, FreeSetSpec input_free, DensityMatrix family_pure, int max_m,
           std::function<TargetInfo(int)> build_target);
};

enum class OverheadMethod { Thm1S, Thm1G, Thm2, Both };

std::string to_string(OverheadMethod m);

struct OverheadResult {
    double epsilon = 0.0;
    int m = 1;
    /// Theorem-1 bounds from the branch selected by the coincidence report.
    double lower = 1.0;
    double upper = std::numeric_limits<double>::infinity();
    /// Set when the branch bounds coincide (and are finite).
    std::optional<double> exact;
    /// Closed-form route: overhead_closed_form at the best free-operation
    /// overlap. Always finite; exact when `formula_guaranteed`, otherwise a
    /// certified lower bound on the overhead.
    double formula = 1.0;
    bool formula_guaranteed = false;
    OverheadMethod method = OverheadMethod::Thm2;
    /// True when the g-branch applies but its program is infeasible at this
    /// (rho, eps): no virtual operation attains the condition, the exact
    /// overhead is infinite.
    bool g_infeasible = false;
    std::optional<ZetaResult> witness;
};

/// Theorem-1 bounds (with exact value when the coincidence conditions hold)
/// plus the closed-form route.
OverheadResult overhead_bounds(const DensityMatrix &rho, int m, double eps, const Theory &theory);

/// Largest m <= m_max whose conventional (single free operation) distillation
/// condition is feasible at error eps; 0 when even m = 1 fails.
int conventional_rate(const DensityMatrix &rho, double eps, const Theory &theory, int m_max);

struct RateResult {
    double epsilon = 0.0;
    int m_star = 0;
    double rate = 0.0;
    struct PerM {
        int m;
        double overhead;   ///< formula-route overhead used for the rate
        double m_over_c2;  ///< m / overhead^2
    };
    std::vector<PerM> per_m;
};

/// V = max_m m / C(m)^2 over m = 1..m_max, using the formula-route overhead
/// (exact whenever the theory's twirling structure exists; otherwise rates
/// are computed from the certified lower bound and labeled so). Ties go to
/// the smaller m.
RateResult virtual_rate(const DensityMatrix &rho, double eps, const Theory &theory, int m_max);

/// The explicit two-term teleportation virtual operation for the two-qubit
/// isotropic state at p >= 1/3: weight 4/(1+3p) on the identity channel and
/// -(3-3p)/(1+3p) on the replacement channel to (I - psi)/3. Applying it to
/// rho_p reproduces the Bell state exactly.
sampler::VirtualOperation build_virtual_operation_teleport(double p);

/// min{(7 - 3p)/(1 + 3p), 3}: the teleportation overhead formula.
double teleport_overhead_formula(double p);

}  // namespace vrd::distill
