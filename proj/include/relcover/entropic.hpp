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

// Divergences, entropies and distances. All logarithms are base 2.
//
// Functions taking HermitianOperator accept any positive semidefinite
// operator (for example I_A ⊗ ρ_B, whose trace exceeds one); a
// DensityOperator binds to those parameters directly.

#pragma once

#include "relcover/channels.hpp"
#include "relcover/linalg.hpp"

namespace relcover {

/// log2(e).
inline constexpr double kLog2E = 1.4426950408889634;

/// A divergence value or a tagged +∞ for a support violation.
struct DivergenceResult {
  double value = 0.0;     // bits; meaningful only when support_ok
  bool support_ok = true;
  double lhs_trace = 0.0; // Tr of the first argument; the value does not divide by it

  bool infinite() const { return !support_ok; }
  /// The value, or SupportError when infinite.
  double finite_value() const;
};

/// Tr[σ(log σ − log ρ)], without normalizing by Tr σ.
DivergenceResult relative_entropy(const HermitianOperator& sigma, const HermitianOperator& rho);

enum class RenyiVariant { kPetz, kSandwiched, kClassical };

/// Petz and sandwiched: (1/(α−1)) log(Q_α / Tr σ).
/// Classical: (1/(α−1)) log Σ p^α q^(1−α) over the diagonals of two diagonal
/// operators.
DivergenceResult renyi_divergence(const HermitianOperator& sigma, const HermitianOperator& rho, double alpha,
                                  RenyiVariant variant);

/// Tr[σ ρ^{-1/2} σ ρ^{-1/2}]. Throws SupportError unless supp σ ⊂ supp ρ.
double q2_tilde(const HermitianOperator& sigma, const HermitianOperator& rho);

/// log λ_max(ρ^{-1/2} σ ρ^{-1/2}); infinite when supp σ ⊄ supp ρ.
DivergenceResult d_max(const HermitianOperator& sigma, const HermitianOperator& rho);

/// Generalized fidelity F*(τ, ρ) for sub-normalized states.
double fidelity(const DensityOperator& tau, const DensityOperator& rho);
/// √(1 − F*).
double purified_distance(const DensityOperator& tau, const DensityOperator& rho);

/// −Tr ρ log ρ, sub-normalized inputs allowed.
double von_neumann_entropy(const HermitianOperator& rho);
/// Entropy of a nonnegative sequence, −Σ p log p (no normalization).
double shannon_entropy(const RealVector& p);

/// f(t) = −t log t with f(0) = 0.
double entropy_f(double t);
double binary_entropy(double p);

/// I(R⟩B) = H(B) − H(BR) of a state ordered (B, R). The divergence form
/// D(ρ_BR ‖ ρ_B ⊗ I_R) is evaluated as well and must agree within 1e-9.
double coherent_information(const BipartiteState& rho_BR);

/// H(ρ) − Σ Q(x) H(ρ_x), checked against the divergence form.
double holevo_information(const CQEnsemble& ensemble);

/// Tr[σ(log σ − log ρ)²] − D(σ‖ρ)².
double info_variance(const DensityOperator& sigma, const DensityOperator& rho);

/// Second-order rate D − √(V/n) Φ^{-1}(ε²).
double aep_rate(const DensityOperator& sigma, const DensityOperator& rho, int n, double epsilon);
/// Same rate with ε² passed directly, so ε² = 1/2 is exact.
double aep_rate_eps2(const DensityOperator& sigma, const DensityOperator& rho, int n, double epsilon_sq);

/// Φ^{-1}(p), Wichura's AS241 (relative accuracy about 1e-16).
double inverse_normal_cdf(double p);

/// Throws SupportError unless supp σ ⊂ supp ρ up to tolerance.
void require_support(const HermitianOperator& sigma, const HermitianOperator& rho, const char* what);
bool support_contained(const HermitianOperator& sigma, const HermitianOperator& rho);

}  // namespace relcover
