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

// One-sided smoothing. Each routine searches the purified-distance ball for a
// good sub-normalized candidate; any feasible candidate certifies a bound:
// an upper bound on the smooth max-divergence (a minimum) and a lower bound
// on the smooth min-entropy (a maximum).
//
// Candidate families, with T the target and R the reference operator:
//   scaled caps  R^{1/2} V min(κΓ, λ) V† R^{1/2},  Γ = R^{-1/2} T R^{-1/2} = VΓV†,
//                which satisfies candidate <= λR by construction;
//   mixing       (1 − w) T + w R Tr T / Tr R   (max-divergence only).
// λ is bisected for feasibility and κ is line-searched for fidelity. For
// commuting T and R the scaled caps contain the exact optimum.

#pragma once

#include "relcover/linalg.hpp"

namespace relcover {

struct SmoothingCertificate {
  DensityOperator candidate;
  double epsilon_used = 0.0;  // purified distance from candidate to target
  double bound_value = 0.0;
};

enum class SmoothingKind { kDmaxEps, kHminEps };

/// Upper bound on D_max^ε(σ‖ρ). ε must lie in [0, √Tr σ]; ε = 0 returns
/// the exact D_max. Throws SupportError if no finite candidate exists.
SmoothingCertificate smooth_dmax(const DensityOperator& sigma, const HermitianOperator& rho, double epsilon);

/// Lower bound on H_min^ε(A|B) of a state ordered (A, B). ε = 0 returns the
/// SDP value.
SmoothingCertificate smooth_hmin(const BipartiteState& rho_AB, double epsilon);

/// Dispatcher: the reference is used by kDmaxEps only.
SmoothingCertificate smooth_bound(SmoothingKind kind, const BipartiteState& target,
                                  const HermitianOperator& reference, double epsilon);

}  // namespace relcover
