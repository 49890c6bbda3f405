// Copyright 2026 The relcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Conditional min-entropy through the semidefinite program
//
//   minimize Tr σ_B  subject to  τ_A ⊗ σ_B ⪰ ρ_AB,
//
// solved by a log-det barrier method and certified by an explicit dual point
// Y ⪰ 0 with Tr_A Y = I_B, so that dual = Tr[ρ Y] <= optimum <= primal.

#pragma once

#include "relcover/linalg.hpp"

namespace relcover {

struct SdpCertificate {
  double primal = 0.0;  // Tr σ_B of a strictly feasible point
  double dual = 0.0;    // Tr ρ Y of a feasible dual point
  Matrix sigma_B;       // the primal point (unnormalized)
  int newton_steps = 0;

  double gap() const { return primal - dual; }
  /// −log primal: a lower bound on H_min.
  double h_min_lower() const;
  /// −log dual: an upper bound on H_min.
  double h_min_upper() const;
};

struct SdpOptions {
  double relative_gap = 1e-7;
  int max_newton_steps = 2000;
};

/// Solves the program with τ_A = I_A for a state ordered (A, B).
/// Throws NumericalError if the certified relative gap exceeds the option.
SdpCertificate h_min_sdp(const BipartiteState& rho_AB, const SdpOptions& options = {});

/// H_min(A|B) = −inf_σ D_max(ρ_AB ‖ I_A ⊗ σ_B), reported as −log primal.
double h_min(const BipartiteState& rho_AB);

/// The program for a general τ_A ⪰ 0 with supp ρ_A ⊂ supp τ_A; log primal and
/// log dual bracket inf_ξ D_max(ρ_AB ‖ τ_A ⊗ ξ_B) over normalized ξ_B.
/// Throws SupportError when the support condition fails.
SdpCertificate conditional_dmax_sdp(const BipartiteState& rho_AB, const HermitianOperator& tau_A,
                                    const SdpOptions& options = {});

}  // namespace relcover
