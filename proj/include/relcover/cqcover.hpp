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

// Covering for classical-quantum ensembles: a codebook of Θ symbols drawn
// i.i.d. from Q is judged by D(Θ^{-1} Σ_i ρ_{x_i} ‖ ρ), ρ = Σ_x Q(x) ρ_x.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relcover/channels.hpp"
#include "relcover/estimate.hpp"
#include "relcover/linalg.hpp"

namespace relcover {

/// Ordered codebooks with more than this many members are not enumerated.
inline constexpr double kEnumerationLimit = 1e6;

struct CQJoint {
  BipartiteState phi_XB;  // Σ Q(x) |x⟩⟨x| ⊗ ρ_x, ordered (X, B)
  RealVector q_x;
  DensityOperator rho_avg;
};

CQJoint cq_joint(const CQEnsemble& ens);

struct Codebook {
  std::vector<std::string> symbols;
  int theta() const { return static_cast<int>(symbols.size()); }
};

/// Θ symbols drawn i.i.d. from the ensemble pmf.
Codebook sample_codebook(const CQEnsemble& ens, int theta, std::uint64_t seed);

/// Θ^{-1} Σ_i ρ_{x_i}. Throws LookupError for unknown symbols.
DensityOperator mix_codebook(const CQEnsemble& ens, const Codebook& code);

/// Q̃₂(φ_XB ‖ Q_X ⊗ ρ), cross-checked against Σ_x Q(x) Tr[ρ_x ρ^{-1/2} ρ_x ρ^{-1/2}].
/// SupportError names the first symbol whose state leaves supp ρ.
double q2_cq(const CQEnsemble& ens);

/// (log e / Θ) q2_cq.
double cq_expected_bound(const CQEnsemble& ens, int theta);

/// Σ_x Q(x) Tr[ρ_x (log(ρ_x/Θ + ρ) − log ρ)].
double jensen_intermediate(const CQEnsemble& ens, int theta);

/// E D(mix ‖ ρ) over all |X|^Θ ordered codebooks, grouped by symbol counts.
/// Throws ResourceError above kEnumerationLimit codebooks.
double exact_expectation(const CQEnsemble& ens, int theta);

/// Codebook for trial k is drawn with derive_seed(master_seed, k).
McEstimate mc_expectation(const CQEnsemble& ens, int theta, int trials, std::uint64_t master_seed);

struct Theorem3Terms {
  double epsilon = 0.0;
  double eta = 0.0;
  double dmax = 0.0;         // D_max(φ_XB ‖ Q_X ⊗ ρ)
  double dmax_smooth = 0.0;  // certified upper bound on the ε-smooth value
  double log_theta_bound = 0.0;
  double delta_bound = 0.0;  // +inf at ε = 0
};

/// ε ∈ [0, 1/24), η ∈ (0, 1/24).
Theorem3Terms theorem3_terms(const CQEnsemble& ens, double epsilon, double eta);

struct ConverseCertificate {
  double input_dmax = 0.0;   // D_max(ω_IA ‖ ω'_IA), equal to log Θ
  double output_dmax = 0.0;  // D_max(ω_IB ‖ ω_I ⊗ ω_B)
  double log_theta = 0.0;
};

/// Index register I and input register A both carry the codeword index;
/// the channel i ↦ ρ_{x_i} maps A to B. Asserts the input value is log Θ.
ConverseCertificate converse_certificate(const CQEnsemble& ens, const Codebook& code);

struct ClassicalCover {
  double expected_divergence = 0.0;
  double stderr_ = 0.0;  // zero when exact
  bool exact = true;
  double d2_bound = 0.0; // (log e/Θ) Σ_x Q(x) Σ_y W(y|x)² / Q_Y(y)
};

/// W is |X| × |Y| with stochastic rows. Exact enumeration when feasible and
/// not `sample`, otherwise `trials` Monte-Carlo codebooks. The bound is
/// cross-checked against the diagonal ensemble embedding.
ClassicalCover classical_bound(const RealMatrix& w, const RealVector& q, int theta, int trials = 2000,
                               std::uint64_t master_seed = 0, bool sample = false);

/// Diagonal ensemble with ρ_x = diag(W(·|x)).
CQEnsemble diagonal_ensemble(const RealMatrix& w, const RealVector& q);

}  // namespace relcover
