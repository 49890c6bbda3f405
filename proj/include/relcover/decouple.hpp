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

// Decoupling: σ_BE = (T ⊗ id_E)((U ⊗ I)ρ_AE(U† ⊗ I)) for Haar U, compared
// with τ_B ⊗ ρ_E where τ_B = T(I/D).

#pragma once

#include <cstdint>

#include "relcover/channels.hpp"
#include "relcover/estimate.hpp"
#include "relcover/linalg.hpp"

namespace relcover {

class DecoupleInstance {
 public:
  /// rho_AE ordered (A, E); channel maps A to B.
  DecoupleInstance(BipartiteState rho_AE, QuantumChannel channel);

  int d_A() const { return rho_AE_.subsystem_dim(0); }
  int d_B() const { return channel_.d_out(); }
  int d_E() const { return rho_AE_.subsystem_dim(1); }
  const BipartiteState& rho_AE() const { return rho_AE_; }
  const QuantumChannel& channel() const { return channel_; }
  const BipartiteState& tau_AB() const { return tau_AB_; }
  /// τ_B ⊗ ρ_E, ordered (B, E).
  const BipartiteState& target() const { return target_; }

 private:
  BipartiteState rho_AE_;
  QuantumChannel channel_;
  BipartiteState tau_AB_;
  BipartiteState target_;
};

struct DecoupleTrial {
  BipartiteState sigma_BE;
  double d_value = 0.0;  // +inf when σ_BE leaves supp of the target
  bool support_ok = true;
};

DecoupleTrial decouple_trial(const DecoupleInstance& inst, const Matrix& unitary);

struct ProductBound {
  double q2_tau = 0.0;  // Q̃₂(τ_AB ‖ I_A ⊗ τ_B)
  double q2_rho = 0.0;  // Q̃₂(ρ_AE ‖ I_A ⊗ ρ_E)
  double bound = 0.0;   // log e · q2_tau · q2_rho
  double tilde_tau_error = 0.0;  // max |Tr_A τ̃_AB − √τ_B|
  double tilde_rho_error = 0.0;  // max |Tr_A ρ̃_AE − √ρ_E|
};

/// Evaluates both factors as Tr[X̃²] with X̃ = (I ⊗ X_B^{-1/4}) X (I ⊗ X_B^{-1/4})
/// and cross-checks against the direct sandwiched form.
ProductBound q2_product_bound(const DecoupleInstance& inst);

struct Theorem5Terms {
  double epsilon = 0.0;
  double hmin_tau = 0.0;  // certified lower bound on H_min^ε(A|B)_τ
  double hmin_rho = 0.0;  // certified lower bound on H_min^ε(A|E)_ρ
  double additive = 0.0;  // 12ε log(d_B d_E) + f(8ε) + f(4ε)
  double value = 0.0;     // log e · 2^{−hmin_tau − hmin_rho} + additive
};

/// ε ∈ [0, 1/16); at ε = 0 the exact min-entropies are used and the
/// additive terms vanish.
Theorem5Terms theorem5_terms(const DecoupleInstance& inst, double epsilon);

struct DecoupleEstimate {
  McEstimate estimate;  // over trials with finite divergence
  int excluded = 0;
  double exclusion_rate = 0.0;
  bool flagged_invalid = false;  // exclusion rate above 1%
  bool pinsker_ok = true;        // per-trial (1/(2 ln 2))‖σ − target‖₁² <= d_value
  double bound = 0.0;            // q2_product_bound
  bool bound_holds = true;       // mean <= bound + 3 stderr
};

/// Trial t draws U with derive_seed(master_seed, t). Throws NumericalError
/// when every trial is excluded.
DecoupleEstimate mc_expectation(const DecoupleInstance& inst, int trials, std::uint64_t master_seed);

}  // namespace relcover
