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

// Experiment runner. A config selects a mode and an instance; run() produces
// a table in which every measured quantity sits next to its bound and slack.
//
// Instance specs (JSON):
//   state    matrix | {"maximally_mixed": d} | {"basis": [d, i]}
//            | {"maximally_entangled": d} | {"random": {"dim", "rank", "seed"}}
//            | {"product": [state, state]}
//   channel  {"kraus": [...]} | {"kind": "identity" | "depolarizing", "dim"}
//            | {"kind": "random", "d_in", "d_out", "n_kraus", "seed"}
//   audit-lemmas     {"lemmas": [name, ...]}                (default: all)
//   cover-quantum    {"id", "rho_A": state, "channel": channel}
//   cover-cq         {"id", "ensemble": ensemble | {"preset": "binary_orthogonal"},
//                     "method": "exact" | "mc" | "auto"}
//   cover-classical  {"id", "W": [[...]], "Q": [...], "method"}
//   decouple         {"id", "rho_AE": state, "dims": [d_A, d_E], "channel": channel}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relcover/serialization.hpp"

namespace relcover {

enum class Mode { kAuditLemmas, kCoverQuantum, kCoverCq, kCoverClassical, kDecouple };
enum class OutputFormat { kCsv, kJson };

std::string mode_name(Mode mode);
/// Throws MalformedInput for unknown names.
Mode mode_from_name(const std::string& name);

inline constexpr double kDefaultTolerance = -1e-8;
/// Bumped whenever a column is added, removed or renamed.
inline constexpr int kResultFormatVersion = 1;

struct ExperimentConfig {
  Mode mode = Mode::kAuditLemmas;
  std::string instance = "{}";  // JSON text
  int theta = 0;                // 0: every admissible Θ
  int trials = 500;
  double epsilon = 0.0;
  double eta = 0.01;
  std::uint64_t master_seed = 0;
  std::string out_path;  // empty: no file
  OutputFormat format = OutputFormat::kCsv;
  double tolerance = kDefaultTolerance;  // slack below this is a violation
};

/// Parses a config document. Unknown fields and type mismatches raise
/// MalformedInput naming the field; syntax errors carry line and column.
/// A string "instance" is read as a file path.
ExperimentConfig parse_config(const std::string& text);

/// Range checks against the preconditions of the selected mode.
void validate(const ExperimentConfig& config);

struct Check {
  std::string name;
  double slack = 0.0;
  std::uint64_t seed = 0;
};

struct RunResult {
  Table table;
  std::vector<Check> checks;
  int violations = 0;

  /// CSV starts with a "# relcover results v<N>" line; JSON carries
  /// "format_version".
  std::string render(OutputFormat format) const;
};

RunResult run(const ExperimentConfig& config);

/// Runs, writes config.out_path when set, and returns 0 or 1 (violations).
int run_and_write(const ExperimentConfig& config);

enum class Preset { kSmoke, kFull };

struct SuiteEntry {
  std::string name;
  double worst_slack = 0.0;
  std::uint64_t worst_seed = 0;
  int checks = 0;
  bool passed = true;
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  bool passed = true;

  std::string to_text() const;
};

SuiteReport suite(Preset preset, double tolerance = kDefaultTolerance);

}  // namespace relcover
