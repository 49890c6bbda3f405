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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "relcover/errors.hpp"

using namespace relcover;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(linalg, rejects_non_hermitian) {
  EXPECT_THROW(HermitianOperator(mat2(1, 1, 0, 1)), MalformedInput);
  EXPECT_THROW(HermitianOperator(Matrix::Zero(2, 3)), MalformedInput);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(HermitianOperator{bad}, MalformedInput);
}

TEST(linalg, density_operator_preconditions) {
  EXPECT_THROW(DensityOperator(mat2(1, 0, 0, -0.1)), MalformedInput);
  EXPECT_THROW(DensityOperator(Matrix(Matrix::Identity(2, 2))), MalformedInput);  // trace 2
  EXPECT_THROW(DensityOperator(Matrix(Matrix::Zero(2, 2))), MalformedInput);
  const DensityOperator sub(Matrix(0.25 * Matrix::Identity(2, 2)));
  EXPECT_FALSE(sub.normalized());
  EXPECT_EQ(sub.support_rank(), 2);
  EXPECT_TRUE(DensityOperator::maximally_mixed(3).normalized());
}

TEST(linalg, spectrum_ascending) {
  const HermitianOperator h(mat2(2, Complex(0, 1), Complex(0, -1), 2));
  const Spectrum s = h.spectrum();
  EXPECT_NEAR(s.min(), 1.0, 1e-14);
  EXPECT_NEAR(s.max(), 3.0, 1e-14);
}

TEST(linalg, matrix_functions_on_support) {
  const HermitianOperator p(mat2(1, 0, 0, 0));
  EXPECT_LT(max_abs_diff(matrix_power(p, -0.5), mat2(1, 0, 0, 0)), 1e-15);
  EXPECT_LT(max_abs_diff(matrix_power(p, 0.0), mat2(1, 0, 0, 0)), 1e-15);
  const HermitianOperator d(mat2(4, 0, 0, 0.25));
  EXPECT_LT(max_abs_diff(operator_function(d, Log2{}).matrix(), mat2(2, 0, 0, -2)), 1e-14);
  EXPECT_LT(max_abs_diff(operator_function(d, Exp2{}).matrix(), mat2(16, 0, 0, std::pow(2.0, 0.25))), 1e-13);
  EXPECT_LT(max_abs_diff(support_projector(p), mat2(1, 0, 0, 0)), 1e-15);
}

TEST(linalg, trace_norm_matches_svd) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = random_density(4, 3, seed).matrix() - random_density(4, 2, seed + 100).matrix();
    EXPECT_NEAR(trace_norm(HermitianOperator(a)), oracle::trace_norm_svd(a), 1e-12);
  }
}

TEST(linalg, partial_trace_and_permutation) {
  const Matrix a = random_density(2, 2, 1).matrix();
  const Matrix b = random_density(3, 3, 2).matrix();
  const Matrix ab = kron(a, b);
  EXPECT_LT(max_abs_diff(partial_trace(ab, {2, 3}, {0}), a), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(ab, {2, 3}, {1}), b), 1e-14);
  EXPECT_LT(max_abs_diff(permute_subsystems(ab, {2, 3}, {1, 0}), kron(b, a)), 1e-14);
  EXPECT_THROW(partial_trace(ab, {2, 2}, {0}), MalformedInput);
  EXPECT_THROW(permute_subsystems(ab, {2, 3}, {0, 0}), MalformedInput);

  const Matrix rho = random_density(6, 4, 3).matrix();
  EXPECT_LT(max_abs_diff(partial_trace(rho, {2, 3}, {1}), oracle::trace_first(rho, 2, 3)), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(rho, {2, 3}, {0}), oracle::trace_second(rho, 2, 3)), 1e-14);
}

TEST(linalg, bipartite_marginals) {
  const BipartiteState s(random_density(6, 6, 4), {3, 2});
  const BipartiteState t = s.swapped();
  EXPECT_EQ(t.dims(), (std::vector<int>{2, 3}));
  EXPECT_LT(max_abs_diff(s.marginal({0}).matrix(), t.marginal({1}).matrix()), 1e-14);
  EXPECT_THROW(BipartiteState(random_density(6, 6, 4), {2, 2}), MalformedInput);
}

TEST(linalg, canonical_purification) {
  const DensityOperator rho = random_density(3, 3, 5);
  const Purification p = canonical_purification(rho);
  const BipartiteState joint = p.joint();
  EXPECT_NEAR(joint.state().purity(), 1.0, 1e-13);
  EXPECT_LT(max_abs_diff(joint.marginal({0}).matrix(), rho.matrix()), 1e-14);
  // The R marginal of the canonical purification is ρ^T.
  EXPECT_LT(max_abs_diff(joint.marginal({1}).matrix(), rho.matrix().transpose()), 1e-14);
  EXPECT_THROW(canonical_purification(DensityOperator(Matrix(0.5 * rho.matrix()))), PreconditionError);
}

TEST(linalg, maximally_entangled) {
  const DensityOperator phi = maximally_entangled(3);
  EXPECT_NEAR(phi.purity(), 1.0, 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(phi.matrix(), {3, 3}, {0}), Matrix::Identity(3, 3) / 3.0), 1e-15);
}

TEST(linalg, haar_unitary_is_deterministic_and_unitary) {
  const Matrix u = haar_unitary(5, 77);
  EXPECT_LT(max_abs_diff(u.adjoint() * u, Matrix::Identity(5, 5)), 1e-13);
  EXPECT_EQ(max_abs_diff(u, haar_unitary(5, 77)), 0.0);
  EXPECT_GT(max_abs_diff(u, haar_unitary(5, 78)), 1e-3);
}

TEST(linalg, haar_first_moment) {
  // E |U_00|^2 = 1/d.
  double sum = 0.0;
  constexpr int n = 4000;
  for (int k = 0; k < n; ++k) sum += std::norm(haar_unitary(3, derive_seed(9, k))(0, 0));
  EXPECT_NEAR(sum / n, 1.0 / 3.0, 0.02);
}

TEST(linalg, random_density_rank) {
  const DensityOperator r = random_density(5, 2, 3);
  EXPECT_TRUE(r.normalized());
  EXPECT_EQ(r.support_rank(), 2);
  EXPECT_EQ(numerical_rank(r, 1e-12), 2);
  EXPECT_THROW(random_density(3, 4, 0), PreconditionError);
}

TEST(linalg, derive_seed_spreads) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}

TEST(linalg, kron_all_associates) {
  const Matrix a = random_density(2, 2, 1).matrix();
  const Matrix b = random_density(2, 1, 2).matrix();
  const Matrix c = random_density(3, 2, 3).matrix();
  const std::vector<Matrix> f{a, b, c};
  EXPECT_LT(max_abs_diff(kron_all(f), kron(kron(a, b), c)), 1e-15);
  EXPECT_EQ(max_abs_diff(kron(a, c), oracle::kron(a, c)), 0.0);
}
