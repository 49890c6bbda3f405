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

// Library-internal JSON helpers shared by serialization and the experiment
// runner. Error messages carry the offending field path.

#pragma once

#include <string>

#include "json.hpp"
#include "relcover/channels.hpp"
#include "relcover/linalg.hpp"

namespace relcover::json_io {

using json = nlohmann::ordered_json;

json from_matrix(const Matrix& m);
Matrix to_matrix(const json& j, const std::string& field);

/// Parse errors become MalformedInput with the parser's line and column.
json parse(const std::string& text, const std::string& what);
const json& require(const json& obj, const std::string& key, const std::string& context);

json from_channel(const QuantumChannel& channel);
QuantumChannel to_channel(const json& j, const std::string& context);

json from_ensemble(const CQEnsemble& ens);
CQEnsemble to_ensemble(const json& j, const std::string& context);

}  // namespace relcover::json_io
