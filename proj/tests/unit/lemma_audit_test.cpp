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

#include "relcover/lemma_audit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"

using namespace relcover;

TEST(lemma_audit, names_round_trip) {
  for (LemmaId id : all_lemmas()) EXPECT_EQ(lemma_from_name(lemma_name(id)), id);
  EXPECT_EQ(all_lemmas().size(), 13u);
  EXPECT_THROW(lemma_from_name("no_such_lemma"), LookupError);
}

TEST(lemma_audit, every_lemma_holds_on_random_instances) {
  for (LemmaId id : all_lemmas()) {
    for (std::uint64_t i = 0; i < 40; ++i) {
      const LemmaAuditRecord r = lemma_audit(id, derive_seed(2024, i));
      EXPECT_GE(r.slack, -1e-8) << lemma_name(id) << " seed " << r.instance_seed;
      EXPECT_NEAR(r.slack, r.rhs - r.lhs, 1e-12);
      EXPECT_LE(r.dim, 6);
    }
  }
}

TEST(lemma_audit, deterministic) {
  const LemmaAuditRecord a = lemma_audit("quad_upper_bound", 99);
  const LemmaAuditRecord b = lemma_audit(LemmaId::kQuadUpperBound, 99);
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.rhs, b.rhs);
}

TEST(lemma_audit, audit_all_summarizes) {
  const auto summary = audit_all(5, 3);
  ASSERT_EQ(summary.size(), all_lemmas().size());
  for (const LemmaSummary& s : summary) {
    EXPECT_EQ(s.instances, 5);
    EXPECT_GE(s.worst_slack, -1e-8);
  }
}

TEST(lemma_audit, pinsker_commuting_example) {
  Matrix s = Matrix::Zero(2, 2), r = Matrix::Zero(2, 2);
  s(0, 0) = 1.0;
  r(0, 0) = r(1, 1) = 0.5;
  const InequalitySides sides = pinsker_sides(DensityOperator(s), HermitianOperator(r));
  EXPECT_NEAR(sides.lhs, 1.0 / (2.0 * std::numbers::ln2), 1e-14);
  EXPECT_NEAR(sides.rhs, 1.0, 1e-14);
}

TEST(lemma_audit, quad_bound_equal_states) {
  const DensityOperator r = random_density(3, 3, 1);
  const InequalitySides sides = quad_bound_sides(r, r);
  EXPECT_NEAR(sides.lhs, 0.0, 1e-12);
  EXPECT_NEAR(sides.rhs, 0.0, 1e-12);
}

TEST(lemma_audit, gauss_legendre_exact_for_polynomials) {
  std::vector<double> x, w;
  gauss_legendre(6, x, w);
  double s0 = 0.0, s10 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s0 += w[i];
    s10 += w[i] * std::pow(x[i], 10);
  }
  EXPECT_NEAR(s0, 2.0, 1e-14);
  EXPECT_NEAR(s10, 2.0 / 11.0, 1e-14);
}

TEST(lemma_audit, log_derivative_integral_commuting) {
  // For commuting ρ, δ the integral is δ/ρ · log e.
  Matrix rho = Matrix::Zero(2, 2), delta = Matrix::Zero(2, 2);
  rho(0, 0) = 0.25;
  rho(1, 1) = 0.75;
  delta(0, 0) = 0.1;
  delta(1, 1) = -0.1;
  const Matrix got = log_derivative_integral(HermitianOperator(rho), HermitianOperator(delta));
  EXPECT_NEAR(got(0, 0).real(), std::numbers::log2e * 0.1 / 0.25, 1e-10);
  EXPECT_NEAR(got(1, 1).real(), -std::numbers::log2e * 0.1 / 0.75, 1e-10);
  EXPECT_NEAR(quad_integral(HermitianOperator(rho), HermitianOperator(delta)), 0.01 / 0.25 + 0.01 / 0.75, 1e-10);
}
