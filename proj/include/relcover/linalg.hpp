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

// Dense complex Hermitian linear algebra: operators, states, partial traces,
// matrix functions, purifications and seeded random sampling.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace relcover {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct Spectrum {
  RealVector values;
  Matrix vectors;

  double max() const { return values.size() ? values(values.size() - 1) : 0.0; }
  double min() const { return values.size() ? values(0) : 0.0; }
};

/// Eigenvalues below this are treated as outside the support:
/// dim * machine epsilon * largest |eigenvalue|.
double support_cutoff(const RealVector& eigenvalues);

/// Tolerance multiple of support_cutoff allowed for negative eigenvalues and
/// for leakage outside a support.
inline constexpr double kSupportSlack = 10.0;

/// Dense Hermitian matrix. Construction symmetrizes the input; inputs whose
/// anti-Hermitian part exceeds herm_tol are rejected.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Matrix entries, double herm_tol = -1.0);

  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);
  static HermitianOperator diagonal(std::span<const double> diag);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  double herm_tol() const { return herm_tol_; }

  double trace() const { return entries_.trace().real(); }
  Spectrum spectrum() const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;

 private:
  Matrix entries_;
  double herm_tol_ = 0.0;
};

/// A positive semidefinite operator with trace in (0, 1]. The σ, ρ, τ of
/// every entropic quantity.
class DensityOperator : public HermitianOperator {
 public:
  DensityOperator() = default;
  explicit DensityOperator(HermitianOperator op);
  explicit DensityOperator(Matrix entries) : DensityOperator(HermitianOperator(std::move(entries))) {}

  static DensityOperator maximally_mixed(int dim);
  static DensityOperator pure(const Vector& psi);
  static DensityOperator basis_state(int dim, int index);

  bool normalized() const { return normalized_; }
  int support_rank() const { return support_rank_; }
  double purity() const;

 private:
  bool normalized_ = false;
  int support_rank_ = 0;
};

/// A density operator on a tensor product of subsystems, dims in order.
class BipartiteState {
 public:
  BipartiteState() = default;
  BipartiteState(DensityOperator state, std::vector<int> dims);

  const DensityOperator& state() const { return state_; }
  const std::vector<int>& dims() const { return dims_; }
  int subsystem_dim(int index) const { return dims_.at(index); }

  /// Marginal on the listed subsystems (kept in their original order).
  DensityOperator marginal(std::vector<int> keep) const;

  /// Reorders the subsystems: new subsystem k is old subsystem perm[k].
  BipartiteState permuted(const std::vector<int>& perm) const;
  BipartiteState swapped() const { return permuted({1, 0}); }

 private:
  DensityOperator state_;
  std::vector<int> dims_;
};

/// |ψ⟩_AR with its A-marginal.
struct Purification {
  Vector vector;  // index a * d_R + r
  DensityOperator marginal;
  int d_R = 0;

  BipartiteState joint() const;
};

// Matrix functions, evaluated through the eigendecomposition on the support.
struct Power {
  double exponent;
};
struct Log2 {};
struct Exp2 {};
using MatrixFunction = std::variant<Power, Log2, Exp2>;

/// U f(Λ) U†. Negative powers, zero power and log2 act on the support only
/// (eigenvalues above the cutoff); off-support directions map to zero.
HermitianOperator operator_function(const HermitianOperator& op, const MatrixFunction& f);

/// Convenience: ρ^p restricted to the support for p <= 0.
Matrix matrix_power(const HermitianOperator& op, double exponent);
/// Projector onto the span of eigenvectors above the support cutoff.
Matrix support_projector(const HermitianOperator& op);

/// Sum of absolute eigenvalues.
double trace_norm(const HermitianOperator& op);

/// Trace out every subsystem not listed in keep.
Matrix partial_trace(const Matrix& op, const std::vector<int>& dims, std::vector<int> keep);
DensityOperator partial_trace(const BipartiteState& state, std::vector<int> keep);

/// Reorder tensor factors: new factor k is old factor perm[k].
Matrix permute_subsystems(const Matrix& op, const std::vector<int>& dims, const std::vector<int>& perm);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_all(std::span<const Matrix> factors);

/// |ψ⟩ = Σ_i (√ρ|i⟩) ⊗ |i⟩ for a normalized ρ_A.
Purification canonical_purification(const DensityOperator& rho_A);

/// Maximally entangled pure state (1/√d) Σ_i |ii⟩.
DensityOperator maximally_entangled(int dim);

/// Haar-distributed d×d unitary from QR of a complex Gaussian matrix with
/// the diagonal of R rotated to positive reals. Deterministic in (d, seed).
Matrix haar_unitary(int dim, std::uint64_t seed);

/// Normalized G G† with G a dim×rank complex Gaussian matrix.
DensityOperator random_density(int dim, int rank, std::uint64_t seed);

/// Per-trial seed derived from a master seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Max-entry distance between two matrices.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Rank counting eigenvalues above relative_cutoff * λ_max.
int numerical_rank(const HermitianOperator& op, double relative_cutoff);

}  // namespace relcover
