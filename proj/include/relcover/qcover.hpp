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

// Quantum soft covering by a random unitary and a block measurement on the
// purifying system.
//
// Given ρ_A with canonical purification |ψ⟩_AR and a channel N : A → B,
//   ρ_BR  = (N ⊗ id_R)ψ = Σ_ij ω_ij ⊗ |i⟩⟨j|,   ω_ij = N(√ρ |i⟩⟨j| √ρ),
// and a code (U, {P_m}) yields the covering state
//   σ_BM  = Σ_m σ_B^m ⊗ |m⟩⟨m|,   σ_B^m = Σ_ij ω_ij ⟨j|U†P_mU|i⟩,
// compared against ρ_BM = ρ_B ⊗ I_M / M.

#pragma once

#include <cstdint>
#include <vector>

#include "relcover/channels.hpp"
#include "relcover/estimate.hpp"
#include "relcover/linalg.hpp"

namespace relcover {

class QCoverInstance {
 public:
  QCoverInstance(DensityOperator rho_A, QuantumChannel channel);

  int input_dim() const { return rho_A_.dim(); }
  int output_dim() const { return channel_.d_out(); }
  const DensityOperator& rho_A() const { return rho_A_; }
  const QuantumChannel& channel() const { return channel_; }
  /// Ordered (B, R).
  const BipartiteState& rho_BR() const { return rho_BR_; }
  const DensityOperator& rho_B() const { return rho_B_; }
  /// ω_ij, i.e. the (i, j) block of ρ_BR in the R index.
  const Matrix& omega(int i, int j) const { return omega_.at(static_cast<std::size_t>(i * input_dim() + j)); }

 private:
  DensityOperator rho_A_;
  QuantumChannel channel_;
  BipartiteState rho_BR_;
  DensityOperator rho_B_;
  std::vector<Matrix> omega_;
};

/// Throws MalformedInput on a dimension mismatch and PreconditionError for a
/// non-normalized input.
QCoverInstance build_instance(const DensityOperator& rho_A, const QuantumChannel& channel);

/// Q̃₂(ρ_BR ‖ ρ_B ⊗ I_R) from the ω blocks, cross-checked against the direct
/// sandwiched evaluation (NumericalError on disagreement beyond 1e-9).
double q2_target(const QCoverInstance& inst);

struct BlockCode {
  Matrix unitary;
  int theta = 0;
  int m_count = 0;

  /// Computational-basis projector onto indices [mΘ, (m+1)Θ).
  Matrix projector(int m) const;
};

/// E_U[U†PU |i⟩⟨l| U†PU] = α δ_il I + β |i⟩⟨l| for a rank-Θ projector P.
struct HaarMoments {
  double alpha = 0.0;  // (DΘ − Θ²)/(D(D² − 1))
  double beta = 0.0;   // (DΘ² − Θ)/(D(D² − 1))
};

/// D >= 2, 1 <= Θ <= D.
HaarMoments haar_moments(int dim, int theta);

/// Haar U with M = D/Θ basis blocks. Θ must divide D.
BlockCode sample_block_code(int dim, int theta, std::uint64_t seed);

struct CoverOutcome {
  BipartiteState sigma_BM;  // ordered (B, M)
  std::vector<double> block_weights;
  std::vector<DensityOperator> block_states;  // normalized σ̄_B^m
  std::vector<int> input_ranks;               // rank of √ρ U^T P_m Ū √ρ
  int theta = 0;
  double d_value = 0.0;                       // D(σ_BM ‖ ρ_BM)
};

CoverOutcome simulate(const QCoverInstance& inst, const BlockCode& code);

/// σ_B^m by Tr_R'[(I ⊗ P_m U) ρ_BR (I ⊗ U† P_m)].
std::vector<Matrix> blocks_via_purifier(const QCoverInstance& inst, const BlockCode& code);
/// σ_B^m by N(√ρ U^T P_m Ū √ρ), the same unitary acting on A.
std::vector<Matrix> blocks_via_input(const QCoverInstance& inst, const BlockCode& code);

struct ExtractedBlock {
  DensityOperator sigma_B;
  int m = 0;
  double divergence = 0.0;  // D(σ̄_B^m ‖ ρ_B)
  int output_rank = 0;
};

/// The block of least divergence to ρ_B. Asserts that the input-side rank
/// is at most Θ and that the divergence does not exceed the outcome's value.
ExtractedBlock extract_block(const CoverOutcome& outcome, const DensityOperator& rho_B);

/// Mean and standard error of D(σ_BM ‖ ρ_BM) over Haar codes. Draw k uses
/// derive_seed(master_seed, k); a resampled draw consumes the next index.
McEstimate mc_expectation(const QCoverInstance& inst, int theta, int trials, std::uint64_t master_seed);

/// (log e / Θ) Q̃₂(ρ_BR ‖ ρ_B ⊗ I_R).
double expected_divergence_bound(const QCoverInstance& inst, int theta);

struct Theorem1Terms {
  double epsilon = 0.0;
  double eta = 0.0;
  double neg_hmin = 0.0;         // −H_min(R|B), exact SDP value
  double neg_hmin_smooth = 0.0;  // certified upper bound on −H_min^ε(R|B)
  double log_theta_bound = 0.0;  // [−H_min^ε(R|B) − log η]^+
  double delta_bound = 0.0;      // (log e)η + 6ε log d_B + f(4ε) + f(2ε)
  double converse_bound = 0.0;   // [−H_min(R|B)]^+
};

/// ε ∈ [0, 1/8), η ∈ (0, 1/8).
Theorem1Terms theorem1_terms(const QCoverInstance& inst, double epsilon, double eta);

}  // namespace relcover
