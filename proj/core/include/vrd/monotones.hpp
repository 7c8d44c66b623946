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
 * Resource monotones over the supported free-state sets: generalized and
 * standard robustness, free-state fidelity, the maximum free overlap with a
 * pure target, and the bound-coincidence report that decides which overhead
 * branch applies to a theory.
 */

#pragma once

#include <limits>
#include <optional>
#include <stdexcept>

#include "vrd/free_sets.hpp"
#include "vrd/sdp.hpp"
#include "vrd/states.hpp"

namespace vrd::resources {

/// Raised when an operation has no supported computation path for its inputs.
class UnsupportedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class MonotoneMethod { Sdp, VertexEnum, ClosedForm };

struct MonotoneCertificate {
    qmath::ComplexMatrix witness;  ///< dual block of the defining program
    double dual_value = 0.0;
};

struct MonotoneValue {
    double value = 0.0;  ///< may be +infinity (e.g. standard robustness of coherence)
    MonotoneMethod method = MonotoneMethod::Sdp;
    std::optional<MonotoneCertificate> certificate;

    bool finite() const { return std::isfinite(value); }
};

/// Generalized twirling data: a free channel of the form
/// T(rho) = tr[psi rho] psi + tr[(I - psi) rho] sigma*.
/// Validation requires sigma* in F (within 1e-8) and tr[psi sigma*] ~ 0,
/// the fixed-point condition T(sigma*) = sigma*.
struct TwirlingSpec {
    qmath::DensityMatrix target;
    qmath::DensityMatrix residual_free_state;
};

/// Membership distance check: rho within `tol` of the free set, measured by
/// the feasibility margin of the set's defining program.
bool is_free_member(const qmath::DensityMatrix &rho, const FreeSetSpec &free, double tol = 1e-8);

/// Validates a TwirlingSpec against a free set; throws std::invalid_argument
/// if the residual state is not free or breaks the fixed-point structure.
void validate_twirling(const TwirlingSpec &twirl, const FreeSetSpec &free);

/// R^g(rho): least mixing weight of an arbitrary state pushing rho into F.
MonotoneValue generalized_robustness(const qmath::DensityMatrix &rho, const FreeSetSpec &free);

/// R^s(rho): same with the noise restricted to F. Infinite for any
/// non-diagonal state under the diagonal free set (no incoherent noise can
/// cancel off-diagonal elements), reported as value = +infinity.
MonotoneValue standard_robustness(const qmath::DensityMatrix &rho, const FreeSetSpec &free);

/// F_F(psi) = max_{sigma in F} <psi|sigma|psi> for pure psi.
MonotoneValue free_fidelity(const qmath::DensityMatrix &psi, const FreeSetSpec &free);

/// f_O(rho) = max over free operations of tr[Lambda(rho) psi], evaluated by
/// the closed form max{tr[rho psi], F_F(psi)}. The closed form is justified
/// when a validated twirling operation exists, or when rho is of isotropic
/// type with respect to psi (free operations cannot improve its fidelity).
/// Otherwise throws UnsupportedError("...use zeta bounds instead").
MonotoneValue max_overlap_fo(const qmath::DensityMatrix &rho, const qmath::DensityMatrix &target,
                             const FreeSetSpec &free_target,
                             const std::optional<TwirlingSpec> &twirl);

struct CoincidenceReport {
    double fs_inv = 0.0;      ///< 1 / F_F(psi)
    double rs_plus_1 = 0.0;   ///< R^s(psi) + 1 (may be +infinity)
    double rg_plus_1 = 0.0;   ///< R^g(psi) + 1
    bool constant_overlap = false;
    bool coincide_s = false;
    bool coincide_g = false;
};

/// Checks the bound-coincidence conditions for a pure target against its
/// free set, with tolerance 1e-6 on the k values.
CoincidenceReport coincidence_check(const qmath::DensityMatrix &psi, const FreeSetSpec &free);

}  // namespace vrd::resources
