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

#include "relcover/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "relcover/errors.hpp"

namespace relcover {

namespace {

constexpr double kTraceTol = 1e-10;

void require_finite(const Matrix& m) {
  if (!m.allFinite()) {
    throw MalformedInput("operator has non-finite entries");
  }
}

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

// Digits of a flat tensor index, most significant subsystem first.
std::vector<int> unflatten(int index, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
  return digits;
}

int flatten(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    index = index * dims[k] + digits[k];
  }
  return index;
}

std::vector<int> normalized_keep(std::vector<int> keep, std::size_t n_sub) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) {
    throw MalformedInput("partial_trace: keep set is empty");
  }
  if (keep.front() < 0 || keep.back() >= static_cast<int>(n_sub)) {
    throw MalformedInput("partial_trace: subsystem index out of range");
  }
  return keep;
}

}  // namespace

double support_cutoff(const RealVector& eigenvalues) {
  if (eigenvalues.size() == 0) return 0.0;
  const double scale = eigenvalues.cwiseAbs().maxCoeff();
  return static_cast<double>(eigenvalues.size()) * std::numeric_limits<double>::epsilon() * scale;
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(Matrix entries, double herm_tol) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw MalformedInput("HermitianOperator: matrix must be square with dim >= 1");
  }
  require_finite(entries);
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  herm_tol_ = herm_tol >= 0.0 ? herm_tol : 1e-9 * scale;
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > herm_tol_) {
    throw MalformedInput("HermitianOperator: matrix is not Hermitian (max |H - H^dag| = " +
                         std::to_string(asym) + ")");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> diag) {
  Matrix m = Matrix::Zero(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return HermitianOperator(std::move(m));
}

Spectrum HermitianOperator::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw MalformedInput("operator sum: dimension mismatch");
  return HermitianOperator(entries_ + other.entries_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw MalformedInput("operator difference: dimension mismatch");
  return HermitianOperator(entries_ - other.entries_);
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  return HermitianOperator(entries_ * scale);
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(HermitianOperator op) : HermitianOperator(std::move(op)) {
  const Spectrum spec = spectrum();
  const double cutoff = support_cutoff(spec.values);
  if (spec.min() < -kSupportSlack * cutoff - 1e-14) {
    throw MalformedInput("DensityOperator: operator is not positive semidefinite (min eigenvalue " +
                         std::to_string(spec.min()) + ")");
  }
  const double tr = trace();
  if (!(tr > 0.0) || tr > 1.0 + kTraceTol) {
    throw MalformedInput("DensityOperator: trace must lie in (0, 1], got " + std::to_string(tr));
  }
  normalized_ = std::abs(tr - 1.0) <= kTraceTol;
  support_rank_ = static_cast<int>((spec.values.array() > cutoff).count());
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(HermitianOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityOperator DensityOperator::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw MalformedInput("pure state: zero vector");
  const Vector unit = psi / norm;
  return DensityOperator(HermitianOperator(unit * unit.adjoint()));
}

DensityOperator DensityOperator::basis_state(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return pure(v);
}

double DensityOperator::purity() const {
  return (matrix() * matrix()).trace().real();
}

// ---------------------------------------------------------------------------
// BipartiteState

BipartiteState::BipartiteState(DensityOperator state, std::vector<int> dims)
    : state_(std::move(state)), dims_(std::move(dims)) {
  if (dims_.empty() || std::any_of(dims_.begin(), dims_.end(), [](int d) { return d < 1; })) {
    throw MalformedInput("BipartiteState: subsystem dimensions must be positive");
  }
  if (product(dims_) != state_.dim()) {
    throw MalformedInput("BipartiteState: product of dims does not match state dimension");
  }
}

DensityOperator BipartiteState::marginal(std::vector<int> keep) const {
  return partial_trace(*this, std::move(keep));
}

BipartiteState BipartiteState::permuted(const std::vector<int>& perm) const {
  std::vector<int> new_dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims_.at(perm[k]);
  return BipartiteState(DensityOperator(HermitianOperator(permute_subsystems(state_.matrix(), dims_, perm))),
                        new_dims);
}

BipartiteState Purification::joint() const {
  return BipartiteState(DensityOperator::pure(vector), {marginal.dim(), d_R});
}

// ---------------------------------------------------------------------------
// Matrix functions

HermitianOperator operator_function(const HermitianOperator& op, const MatrixFunction& f) {
  const Spectrum spec = op.spectrum();
  const double cutoff = support_cutoff(spec.values);
  RealVector mapped(spec.values.size());
  for (int k = 0; k < spec.values.size(); ++k) {
    const double lambda = spec.values(k);
    const bool on_support = lambda > cutoff;
    mapped(k) = std::visit(
        [&](const auto& fn) -> double {
          using T = std::decay_t<decltype(fn)>;
          if constexpr (std::is_same_v<T, Power>) {
            return on_support ? std::pow(lambda, fn.exponent) : 0.0;
          } else if constexpr (std::is_same_v<T, Log2>) {
            return on_support ? std::log2(lambda) : 0.0;
          } else {
            return std::exp2(lambda);
          }
        },
        f);
  }
  Matrix out = spec.vectors * mapped.asDiagonal() * spec.vectors.adjoint();
  if (!out.allFinite()) throw MalformedInput("operator_function: non-finite result");
  return HermitianOperator(std::move(out), std::numeric_limits<double>::infinity());
}

Matrix matrix_power(const HermitianOperator& op, double exponent) {
  return operator_function(op, Power{exponent}).matrix();
}

Matrix support_projector(const HermitianOperator& op) {
  return operator_function(op, Power{0.0}).matrix();
}

double trace_norm(const HermitianOperator& op) {
  return op.spectrum().values.cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Tensor structure

Matrix partial_trace(const Matrix& op, const std::vector<int>& dims, std::vector<int> keep) {
  if (op.rows() != op.cols() || product(dims) != op.rows()) {
    throw MalformedInput("partial_trace: dims do not match operator dimension");
  }
  keep = normalized_keep(std::move(keep), dims.size());
  std::vector<int> traced;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);
  }
  std::vector<int> keep_dims, traced_dims;
  for (int k : keep) keep_dims.push_back(dims[k]);
  for (int k : traced) traced_dims.push_back(dims[k]);
  const int n_keep = product(keep_dims);
  const int n_traced = product(traced_dims);

  // full[ki][t]: flat index of (kept digits ki, traced digits t).
  std::vector<std::vector<int>> full(n_keep, std::vector<int>(n_traced));
  std::vector<int> digits(dims.size());
  for (int ki = 0; ki < n_keep; ++ki) {
    const std::vector<int> kd = unflatten(ki, keep_dims);
    for (int t = 0; t < n_traced; ++t) {
      const std::vector<int> td = unflatten(t, traced_dims);
      for (std::size_t a = 0; a < keep.size(); ++a) digits[keep[a]] = kd[a];
      for (std::size_t a = 0; a < traced.size(); ++a) digits[traced[a]] = td[a];
      full[ki][t] = flatten(digits, dims);
    }
  }
  Matrix out = Matrix::Zero(n_keep, n_keep);
  for (int t = 0; t < n_traced; ++t) {
    for (int i = 0; i < n_keep; ++i) {
      for (int j = 0; j < n_keep; ++j) {
        out(i, j) += op(full[i][t], full[j][t]);
      }
    }
  }
  return out;
}

DensityOperator partial_trace(const BipartiteState& state, std::vector<int> keep) {
  return DensityOperator(
      HermitianOperator(partial_trace(state.state().matrix(), state.dims(), std::move(keep))));
}

Matrix permute_subsystems(const Matrix& op, const std::vector<int>& dims, const std::vector<int>& perm) {
  if (perm.size() != dims.size() || product(dims) != op.rows()) {
    throw MalformedInput("permute_subsystems: dims/perm mismatch");
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < static_cast<int>(sorted.size()); ++k) {
    if (sorted[k] != k) throw MalformedInput("permute_subsystems: not a permutation");
  }
  std::vector<int> new_dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  const int n = static_cast<int>(op.rows());
  std::vector<int> old_of_new(n);
  std::vector<int> old_digits(dims.size());
  for (int idx = 0; idx < n; ++idx) {
    const std::vector<int> nd = unflatten(idx, new_dims);
    for (std::size_t k = 0; k < perm.size(); ++k) old_digits[perm[k]] = nd[k];
    old_of_new[idx] = flatten(old_digits, dims);
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = op(old_of_new[i], old_of_new[j]);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_all(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out;
}

// ---------------------------------------------------------------------------
// States

Purification canonical_purification(const DensityOperator& rho_A) {
  if (!rho_A.normalized()) {
    throw PreconditionError("canonical_purification: rho_A must be normalized");
  }
  const int d = rho_A.dim();
  const Matrix sqrt_rho = matrix_power(rho_A, 0.5);
  Vector psi(d * d);
  for (int a = 0; a < d; ++a) {
    for (int r = 0; r < d; ++r) psi(a * d + r) = sqrt_rho(a, r);
  }
  return Purification{psi, rho_A, d};
}

DensityOperator maximally_entangled(int dim) {
  Vector psi = Vector::Zero(dim * dim);
  for (int i = 0; i < dim; ++i) psi(i * dim + i) = 1.0;
  return DensityOperator::pure(psi);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

Matrix gaussian_matrix(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

Matrix haar_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw PreconditionError("haar_unitary: dim must be >= 1");
  std::mt19937_64 gen(seed);
  const Matrix g = gaussian_matrix(dim, dim, gen);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

DensityOperator random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw PreconditionError("random_density: need 1 <= rank <= dim");
  }
  std::mt19937_64 gen(seed);
  const Matrix g = gaussian_matrix(dim, rank, gen);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(HermitianOperator(std::move(rho)));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (a - b).cwiseAbs().maxCoeff();
}

int numerical_rank(const HermitianOperator& op, double relative_cutoff) {
  const Spectrum spec = op.spectrum();
  const double threshold = relative_cutoff * std::max(0.0, spec.max());
  return static_cast<int>((spec.values.array() > threshold).count());
}

}  // namespace relcover
