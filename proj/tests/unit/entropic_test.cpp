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

#include "relcover/entropic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "relcover/errors.hpp"

using namespace relcover;

namespace {

DensityOperator diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return DensityOperator(m);
}

}  // namespace

TEST(entropic, relative_entropy_commuting) {
  const double expected = 0.75 * std::log2(0.75 / 0.5) + 0.25 * std::log2(0.25 / 0.5);
  EXPECT_NEAR(relative_entropy(diag2(0.75, 0.25), diag2(0.5, 0.5)).value, expected, 1e-15);
  EXPECT_NEAR(relative_entropy(diag2(0.3, 0.7), diag2(0.3, 0.7)).value, 0.0, 1e-15);
}

TEST(entropic, relative_entropy_matches_oracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityOperator s = random_density(4, 1 + seed % 4, seed);
    const DensityOperator r = random_density(4, 4, seed + 50);
    EXPECT_NEAR(relative_entropy(s, r).value, oracle::relative_entropy(s.matrix(), r.matrix()), 1e-10);
  }
}

TEST(entropic, relative_entropy_support) {
  const DivergenceResult d = relative_entropy(diag2(0.5, 0.5), diag2(1.0, 0.0));
  EXPECT_TRUE(d.infinite());
  EXPECT_THROW(d.finite_value(), SupportError);
  EXPECT_FALSE(relative_entropy(diag2(1.0, 0.0), diag2(0.5, 0.5)).infinite());
  EXPECT_THROW(q2_tilde(diag2(0.5, 0.5), diag2(1.0, 0.0)), SupportError);
  EXPECT_TRUE(d_max(diag2(0.5, 0.5), diag2(1.0, 0.0)).infinite());
  EXPECT_TRUE(support_contained(diag2(1.0, 0.0), diag2(0.5, 0.5)));
  EXPECT_THROW(require_support(diag2(0.5, 0.5), diag2(1.0, 0.0), "test"), SupportError);
}

TEST(entropic, maximally_entangled_anchors) {
  for (int d = 2; d <= 4; ++d) {
    const DensityOperator psi = maximally_entangled(d);
    const HermitianOperator ref(kron(Matrix::Identity(d, d), Matrix(Matrix::Identity(d, d) / d)));
    EXPECT_NEAR(q2_tilde(psi, ref), d, 1e-12);
    EXPECT_NEAR(d_max(psi, ref).value, std::log2(d), 1e-12);
    EXPECT_NEAR(coherent_information(BipartiteState(psi, {d, d})), std::log2(d), 1e-12);
  }
}

TEST(entropic, q2_and_sandwiched_renyi) {
  const DensityOperator s = random_density(3, 2, 3);
  const DensityOperator r = random_density(3, 3, 4);
  EXPECT_NEAR(renyi_divergence(s, r, 2.0, RenyiVariant::kSandwiched).value, std::log2(q2_tilde(s, r)), 1e-12);
  EXPECT_NEAR(q2_tilde(r, r), 1.0, 1e-12);
  // Sandwiched ≤ Petz at α = 2, both above D.
  const double d = relative_entropy(s, r).value;
  const double sw = renyi_divergence(s, r, 2.0, RenyiVariant::kSandwiched).value;
  const double pz = renyi_divergence(s, r, 2.0, RenyiVariant::kPetz).value;
  EXPECT_LE(d, sw + 1e-12);
  EXPECT_LE(sw, pz + 1e-12);
  EXPECT_NEAR(renyi_divergence(s, r, 1.0 + 1e-6, RenyiVariant::kPetz).value, d, 1e-4);
  EXPECT_THROW(renyi_divergence(s, r, 1.0, RenyiVariant::kPetz), PreconditionError);
}

TEST(entropic, classical_renyi) {
  const DensityOperator p = diag2(0.8, 0.2);
  const DensityOperator q = diag2(0.4, 0.6);
  const double expected = std::log2(0.8 * 0.8 / 0.4 + 0.2 * 0.2 / 0.6);
  EXPECT_NEAR(renyi_divergence(p, q, 2.0, RenyiVariant::kClassical).value, expected, 1e-14);
  EXPECT_NEAR(renyi_divergence(p, q, 2.0, RenyiVariant::kPetz).value, expected, 1e-13);
  EXPECT_THROW(renyi_divergence(random_density(2, 2, 1), q, 2.0, RenyiVariant::kClassical), PreconditionError);
}

TEST(entropic, renyi_order_two_anchor) {
  const DensityOperator s = diag2(0.75, 0.25);
  const DensityOperator r = diag2(0.5, 0.5);
  for (RenyiVariant v : {RenyiVariant::kPetz, RenyiVariant::kSandwiched}) {
    EXPECT_NEAR(renyi_divergence(s, r, 2.0, v).value, std::log2(1.25), 1e-14);
  }
  EXPECT_NEAR(renyi_divergence(r, r, 2.0, RenyiVariant::kSandwiched).value, 0.0, 1e-14);
}

TEST(entropic, d_max_is_large_order_limit) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DensityOperator s = random_density(3, 3, seed);
    const DensityOperator r = random_density(3, 3, seed + 30);
    EXPECT_NEAR(d_max(s, r).value, renyi_divergence(s, r, 100.0, RenyiVariant::kSandwiched).value, 0.02);
  }
}

TEST(entropic, d_max_commuting) {
  EXPECT_NEAR(d_max(diag2(0.9, 0.1), diag2(0.3, 0.7)).value, std::log2(3.0), 1e-14);
}

TEST(entropic, fidelity_and_purified_distance) {
  const DensityOperator a = DensityOperator::basis_state(2, 0);
  const DensityOperator b = DensityOperator::basis_state(2, 1);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-14);
  EXPECT_NEAR(purified_distance(a, b), 1.0, 1e-14);
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(fidelity(a, DensityOperator::pure(plus)), 0.5, 1e-14);
  // Sub-normalized: F* = (√(pq) + √((1-p)(1-q)))² for scalars.
  const DensityOperator half(Matrix(0.5 * a.matrix()));
  EXPECT_NEAR(fidelity(half, a), 0.5, 1e-14);
}

TEST(entropic, entropies) {
  EXPECT_NEAR(von_neumann_entropy(DensityOperator::maximally_mixed(4)), 2.0, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(DensityOperator::basis_state(3, 1)), 0.0, 1e-14);
  RealVector p(3);
  p << 0.5, 0.25, 0.25;
  EXPECT_NEAR(shannon_entropy(p), 1.5, 1e-15);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_EQ(entropy_f(0.0), 0.0);
  EXPECT_NEAR(entropy_f(0.5), 0.5, 1e-15);
  EXPECT_NEAR(entropy_f(1.0 / std::numbers::e), std::numbers::log2e / std::numbers::e, 1e-15);
}

TEST(entropic, coherent_information_of_product) {
  const DensityOperator b = random_density(2, 2, 1);
  const DensityOperator r = random_density(3, 3, 2);
  const BipartiteState br(DensityOperator(kron(b.matrix(), r.matrix())), {2, 3});
  EXPECT_NEAR(coherent_information(br), -von_neumann_entropy(r), 1e-12);
}

TEST(entropic, holevo) {
  const CQEnsemble orth({"0", "1"}, {0.5, 0.5}, {DensityOperator::basis_state(2, 0), DensityOperator::basis_state(2, 1)});
  EXPECT_NEAR(holevo_information(orth), 1.0, 1e-14);
  const CQEnsemble same({"0", "1"}, {0.3, 0.7}, {DensityOperator::maximally_mixed(2), DensityOperator::maximally_mixed(2)});
  EXPECT_NEAR(holevo_information(same), 0.0, 1e-14);
}

TEST(entropic, information_spectrum_matches_sampler) {
  const std::vector<double> p{0.6, 0.3, 0.1};
  const std::vector<double> q{0.2, 0.5, 0.3};
  Matrix sp = Matrix::Zero(3, 3), sq = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    sp(i, i) = p[i];
    sq(i, i) = q[i];
  }
  const DensityOperator ps(sp), qs(sq);
  const oracle::SpectrumSample s = oracle::sample_log_ratio(p, q, 200000, 17);
  const double d = relative_entropy(ps, qs).value;
  const double v = info_variance(ps, qs);
  EXPECT_NEAR(s.mean, d, 4.0 * std::sqrt(v / 200000));
  EXPECT_NEAR(s.variance, v, 0.02 * v);
}

TEST(entropic, aep_rate) {
  const DensityOperator s = random_density(3, 3, 8);
  const DensityOperator r = random_density(3, 3, 9);
  const double d = relative_entropy(s, r).value;
  EXPECT_EQ(aep_rate_eps2(s, r, 5, 0.5), d);
  const double v = info_variance(s, r);
  EXPECT_NEAR(aep_rate(s, r, 10, 0.1), d - std::sqrt(v / 10) * inverse_normal_cdf(0.01), 1e-12);
}

TEST(entropic, inverse_normal_cdf) {
  EXPECT_EQ(inverse_normal_cdf(0.5), 0.0);
  EXPECT_NEAR(inverse_normal_cdf(0.975), 1.959963984540054, 1e-14);
  EXPECT_NEAR(inverse_normal_cdf(1e-10), -6.361340902404056, 1e-12);
  EXPECT_NEAR(inverse_normal_cdf(0.3), -inverse_normal_cdf(0.7), 1e-15);
}
