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

// Inequality audits. Each registry entry samples a random instance that
// satisfies the hypotheses of one inequality, evaluates both sides and
// reports slack = rhs − lhs (nonnegative when the inequality holds).

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relcover/channels.hpp"
#include "relcover/linalg.hpp"

namespace relcover {

enum class LemmaId {
  kPinsker,
  kTraceNormPartialTrace,
  kTraceNormChannel,
  kPurifiedDistanceTrace,
  kContinuityRelativeEntropy,
  kQuadUpperBound,
  kDualityStates,
  kDualitySub,
  kImaxBound,
  kEntropyContinuityClassical,
  kEntropyContinuityQuantum,
  kIntegralB1,
  kIntegralB2,
};

struct LemmaAuditRecord {
  LemmaId lemma_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::uint64_t instance_seed = 0;
  int dim = 0;
};

std::span<const LemmaId> all_lemmas();
std::string lemma_name(LemmaId id);
/// Throws LookupError for unknown names.
LemmaId lemma_from_name(const std::string& name);

LemmaAuditRecord lemma_audit(LemmaId id, std::uint64_t instance_seed);
LemmaAuditRecord lemma_audit(const std::string& name, std::uint64_t instance_seed);

struct LemmaSummary {
  LemmaId lemma_id;
  int instances = 0;
  double worst_slack = 0.0;
  std::uint64_t worst_seed = 0;
};

/// Runs `instances` audits per lemma with seeds derived from master_seed.
std::vector<LemmaSummary> audit_all(int instances, std::uint64_t master_seed);

// Two sides of one inequality evaluated on explicit inputs.
struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return rhs - lhs; }
};

/// (1/(2 ln 2))‖σ − ρ‖₁² against D(σ‖ρ).
InequalitySides pinsker_sides(const DensityOperator& sigma, const HermitianOperator& rho);
/// D(σ‖ρ)/log e against Q̃₂(σ‖ρ) − Tr σ.
InequalitySides quad_bound_sides(const HermitianOperator& sigma, const HermitianOperator& rho);
/// |E D(σ‖ρ) − E D(σ̂‖ρ̂)| against the continuity bound, for a finite
/// ensemble with weights p and ρ = Σ p σ_k, ρ̂ = Σ p σ̂_k.
InequalitySides continuity_sides(const std::vector<double>& weights, const std::vector<DensityOperator>& sigma,
                                 const std::vector<DensityOperator>& sigma_hat);

/// Gauss–Legendre nodes and weights on [−1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// log e ∫_0^∞ (ρ+t)^{-1} δ (ρ+t)^{-1} dt by quadrature in u with t = u/(1−u).
Matrix log_derivative_integral(const HermitianOperator& rho, const HermitianOperator& delta, int nodes = 400);
/// ∫_0^∞ Tr[δ(ρ+t)^{-1}δ(ρ+t)^{-1}] dt by the same quadrature.
double quad_integral(const HermitianOperator& rho, const HermitianOperator& delta, int nodes = 400);

}  // namespace relcover
