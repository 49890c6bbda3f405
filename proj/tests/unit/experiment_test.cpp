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

#include "relcover/experiment.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <string>

#include "relcover/errors.hpp"
#include "relcover/serialization.hpp"

using namespace relcover;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const MalformedInput& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig binary_orthogonal_config() {
  ExperimentConfig c;
  c.mode = Mode::kCoverCq;
  c.theta = 2;
  c.instance = R"({"id": "bo", "ensemble": {"preset": "binary_orthogonal"}, "method": "exact"})";
  return c;
}

}  // namespace

TEST(config, parses_all_fields) {
  const ExperimentConfig c = parse_config(R"({
    "mode": "cover-quantum", "instance": {"rho_A": {"maximally_mixed": 2}, "channel": {"kind": "identity", "dim": 2}},
    "theta": 1, "trials": 7, "epsilon": 0.01, "eta": 0.02, "seed": 5, "out": "x.csv", "format": "json",
    "tolerance": -1e-6})");
  EXPECT_EQ(c.mode, Mode::kCoverQuantum);
  EXPECT_EQ(c.theta, 1);
  EXPECT_EQ(c.trials, 7);
  EXPECT_EQ(c.master_seed, 5u);
  EXPECT_EQ(c.format, OutputFormat::kJson);
  EXPECT_EQ(c.out_path, "x.csv");
  EXPECT_DOUBLE_EQ(c.tolerance, -1e-6);
}

TEST(config, diagnostics_name_the_problem) {
  EXPECT_NE(error_of("{\"mode\": \"decouple\",\n  \"theta\": }").find("line 2"), std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "decouple", "thetta": 2})").find("thetta"), std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "decouple", "trials": "many"})").find("trials"), std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "teleport"})").find("teleport"), std::string::npos);
  EXPECT_NE(error_of(R"({"theta": 2})").find("mode"), std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "decouple", "format": "xml"})").find("format"), std::string::npos);
}

TEST(config, validate_ranges_per_mode) {
  ExperimentConfig c = binary_orthogonal_config();
  c.eta = 0.05;  // above 1/24
  EXPECT_THROW(validate(c), PreconditionError);
  c.mode = Mode::kCoverQuantum;
  EXPECT_NO_THROW(validate(c));
  c.epsilon = 0.2;
  EXPECT_THROW(validate(c), PreconditionError);
  c = binary_orthogonal_config();
  c.trials = 1;
  EXPECT_THROW(validate(c), PreconditionError);
  c = binary_orthogonal_config();
  c.instance = "{bad";
  EXPECT_THROW(validate(c), MalformedInput);
}

TEST(run, binary_orthogonal_exact_row) {
  const RunResult r = run(binary_orthogonal_config());
  ASSERT_EQ(r.table.rows.size(), 1u);
  const auto& row = r.table.rows[0];
  EXPECT_EQ(std::get<double>(row[3]), 0.5);
  EXPECT_NEAR(std::get<double>(row[5]), 1.4427, 1e-4);
  EXPECT_GT(std::get<double>(row[6]), 0.0);
  EXPECT_EQ(r.violations, 0);
}

TEST(run, decouple_depolarizing_rows_are_zero) {
  ExperimentConfig c;
  c.mode = Mode::kDecouple;
  c.trials = 10;
  c.instance = R"({"rho_AE": {"random": {"dim": 6, "rank": 3, "seed": 2}}, "dims": [3, 2],
                   "channel": {"kind": "depolarizing", "dim": 3}})";
  const RunResult r = run(c);
  EXPECT_EQ(r.table.rows.size(), 11u);
  for (const auto& row : r.table.rows) EXPECT_EQ(std::get<double>(row[5]), 0.0);
}

TEST(run, deterministic_output) {
  ExperimentConfig c;
  c.mode = Mode::kAuditLemmas;
  c.trials = 3;
  c.master_seed = 42;
  const std::string a = run(c).render(OutputFormat::kCsv);
  EXPECT_EQ(a, run(c).render(OutputFormat::kCsv));
  EXPECT_EQ(a.rfind("# relcover results v1\nlemma_id,instance,dim,lhs,rhs,slack,seed\n", 0), 0u);
  c.master_seed = 43;
  EXPECT_NE(a, run(c).render(OutputFormat::kCsv));
}

TEST(run, every_row_carries_bound_and_slack) {
  ExperimentConfig c;
  c.mode = Mode::kCoverQuantum;
  c.trials = 5;
  c.instance = R"({"rho_A": {"random": {"dim": 4, "seed": 1}}, "channel": {"kind": "random", "d_in": 4, "n_kraus": 2}})";
  const RunResult r = run(c);
  EXPECT_EQ(r.table.rows.size(), 3u * 6u);  // Θ ∈ {1, 2, 4}, five trials and a mean row each
  const std::string json = r.render(OutputFormat::kJson);
  EXPECT_NE(json.find("\"format_version\": 1"), std::string::npos);
  EXPECT_NE(json.find("\"bound\""), std::string::npos);
  EXPECT_EQ(r.violations, 0);
}

TEST(run, tolerance_controls_violations) {
  ExperimentConfig c = binary_orthogonal_config();
  c.tolerance = 10.0;
  EXPECT_EQ(run(c).violations, 1);
  const std::string path = ::testing::TempDir() + "relcover_run.csv";
  c.out_path = path;
  EXPECT_EQ(run_and_write(c), 1);
  c.tolerance = kDefaultTolerance;
  EXPECT_EQ(run_and_write(c), 0);
  EXPECT_NE(read_text_file(path).find("bo,2,exact,0.5,"), std::string::npos);
  std::remove(path.c_str());
}

TEST(run, classical_and_audit_subsets) {
  ExperimentConfig c;
  c.mode = Mode::kCoverClassical;
  c.theta = 2;
  c.instance = R"({"W": [[0.9, 0.1], [0.2, 0.8]], "Q": [0.5, 0.5], "method": "mc"})";
  c.trials = 50;
  EXPECT_EQ(std::get<std::string>(run(c).table.rows[0][2]), "mc");
  c.mode = Mode::kAuditLemmas;
  c.trials = 2;
  c.instance = R"({"lemmas": ["pinsker", "integral_B2"]})";
  EXPECT_EQ(run(c).table.rows.size(), 4u);
  c.instance = R"({"lemmas": ["pinskr"]})";
  EXPECT_THROW(run(c), MalformedInput);
}

TEST(suite, smoke_passes_and_corruption_fails) {
  const SuiteReport ok = suite(Preset::kSmoke);
  EXPECT_TRUE(ok.passed) << ok.to_text();
  const SuiteReport bad = suite(Preset::kSmoke, 0.05);
  EXPECT_FALSE(bad.passed);
  const std::string text = bad.to_text();
  EXPECT_NE(text.find("FAIL quad_upper_bound"), std::string::npos) << text;
  EXPECT_NE(text.find("seed="), std::string::npos);
}

TEST(serialization, round_trips) {
  const Matrix m = random_density(3, 2, 4).matrix();
  EXPECT_EQ(max_abs_diff(matrix_from_json(matrix_to_json(m)), m), 0.0);
  const QuantumChannel ch = QuantumChannel::random(2, 3, 2, 1);
  const QuantumChannel back = channel_from_json(channel_to_json(ch));
  ASSERT_EQ(back.env_dim(), ch.env_dim());
  for (int k = 0; k < ch.env_dim(); ++k) EXPECT_EQ(max_abs_diff(back.kraus()[k], ch.kraus()[k]), 0.0);
  const CQEnsemble ens({"u", "v"}, {0.25, 0.75}, {random_density(2, 1, 1), random_density(2, 2, 2)});
  const CQEnsemble e2 = ensemble_from_json(ensemble_to_json(ens));
  EXPECT_EQ(e2.alphabet(), ens.alphabet());
  EXPECT_EQ(e2.pmf(), ens.pmf());
  EXPECT_THROW(matrix_from_json("[[1, \"x\"]]"), MalformedInput);
  EXPECT_THROW(channel_from_json(R"({"kraus": [[[0.5]]]})"), MalformedInput);
}

TEST(serialization, tables) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0 / 0.0), "inf");
  Table t;
  t.columns = {"a", "b", "c"};
  t.add_row({std::string("x"), 1.5, 2LL});
  EXPECT_EQ(t.to_csv(), "a,b,c\nx,1.5,2\n");
  EXPECT_THROW(t.add_row({1.0}), MalformedInput);
  t.add_row({std::string("y"), 1.0 / 0.0, 3LL});
  EXPECT_NE(t.to_json().find("\"b\": \"inf\""), std::string::npos);
}
