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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relcover/linalg.hpp"

namespace relcover {

/// CPTP map held as a Kraus list. Σ K†K = I is checked at construction.
class QuantumChannel {
 public:
  QuantumChannel() = default;
  QuantumChannel(std::vector<Matrix> kraus, double tp_tol = 1e-10);

  static QuantumChannel identity(int dim);
  /// ρ ↦ Tr[ρ] I/d.
  static QuantumChannel depolarizing(int dim);
  /// Random channel from the first d_in columns of a Haar unitary on
  /// d_out * n_kraus dimensions.
  static QuantumChannel random(int d_in, int d_out, int n_kraus, std::uint64_t seed);

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  int env_dim() const { return static_cast<int>(kraus_.size()); }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  /// Σ_k K ρ K† on a raw matrix (any Hermitian input).
  Matrix apply(const Matrix& rho) const;

 private:
  std::vector<Matrix> kraus_;
  int d_in_ = 0;
  int d_out_ = 0;
};

DensityOperator apply(const QuantumChannel& channel, const DensityOperator& rho);

/// Applies the channel to one tensor factor of a multipartite state; the
/// factor's dimension changes from d_in to d_out in place.
BipartiteState apply_partial(const QuantumChannel& channel, const BipartiteState& state, int subsystem);
Matrix apply_partial(const QuantumChannel& channel, const Matrix& op, const std::vector<int>& dims,
                     int subsystem);

/// Stinespring isometry W : A → B ⊗ E with W = Σ_e K_e ⊗ |e⟩, so that
/// Tr_E[W ρ W†] = N(ρ). Row index is b * env_dim + e.
Matrix stinespring(const QuantumChannel& channel);

/// Normalized Choi state (1/D)(id ⊗ N)|Γ⟩⟨Γ| on A ⊗ B.
BipartiteState choi(const QuantumChannel& channel);

/// Applies the map encoded by a normalized Choi state:
/// N(ρ) = D Tr_A[(ρ^T ⊗ I) J].
Matrix apply_via_choi(const BipartiteState& choi_state, const Matrix& rho);

/// Finite ensemble {Q(x), ρ_x}; also the CQ channel x ↦ ρ_x.
class CQEnsemble {
 public:
  CQEnsemble() = default;
  CQEnsemble(std::vector<std::string> alphabet, std::vector<double> pmf, std::vector<DensityOperator> states);

  /// Symbols named "0", "1", ...
  static CQEnsemble from_states(std::vector<double> pmf, std::vector<DensityOperator> states);

  std::size_t size() const { return alphabet_.size(); }
  int output_dim() const { return states_.front().dim(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<double>& pmf() const { return pmf_; }
  const std::vector<DensityOperator>& states() const { return states_; }
  const DensityOperator& state(std::size_t x) const { return states_.at(x); }

  std::size_t index_of(const std::string& symbol) const;
  /// Σ_x Q(x) ρ_x.
  DensityOperator average_state() const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<double> pmf_;
  std::vector<DensityOperator> states_;
};

/// Channel |x⟩⟨x| ↦ ρ_x on a |X|-dimensional input; off-diagonal inputs are
/// dephased in the computational basis first.
QuantumChannel cq_as_channel(const CQEnsemble& ensemble);

}  // namespace relcover
