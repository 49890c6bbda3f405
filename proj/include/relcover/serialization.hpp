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

// JSON and CSV encodings. Complex matrices are arrays of rows of [re, im]
// pairs; real entries may also be written as plain numbers. Doubles are
// written with 17 significant digits.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "relcover/channels.hpp"
#include "relcover/linalg.hpp"

namespace relcover {

std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

/// {"d_in", "d_out", "kraus": [matrix, ...]}
std::string channel_to_json(const QuantumChannel& channel);
QuantumChannel channel_from_json(const std::string& text);

/// {"alphabet": [...], "pmf": [...], "states": [matrix, ...]}
std::string ensemble_to_json(const CQEnsemble& ensemble);
CQEnsemble ensemble_from_json(const std::string& text);

/// "%.17g".
std::string format_double(double x);

using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
  /// {"columns": [...], "rows": [{column: value}, ...]}
  std::string to_json() const;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace relcover
