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

#include "relcover/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "relcover/errors.hpp"

namespace relcover {

using json_io::json;

namespace json_io {

json from_matrix(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix to_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw MalformedInput("field '" + field + "': expected a non-empty array of rows");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.front().size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw MalformedInput("field '" + field + "': row " + std::to_string(r) + " has the wrong length");
    }
    for (int c = 0; c < cols; ++c) {
      const json& e = row[c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw MalformedInput("field '" + field + "': entry (" + std::to_string(r) + "," + std::to_string(c) +
                             ") must be a number or [re, im]");
      }
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        throw MalformedInput("field '" + field + "': non-finite entry");
      }
    }
  }
  return m;
}

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(what + ": " + e.what());
  }
}

const json& require(const json& obj, const std::string& key, const std::string& context) {
  if (!obj.is_object() || !obj.contains(key)) throw MalformedInput(context + ": missing field '" + key + "'");
  return obj.at(key);
}

json from_channel(const QuantumChannel& channel) {
  json out;
  out["d_in"] = channel.d_in();
  out["d_out"] = channel.d_out();
  json kraus = json::array();
  for (const Matrix& k : channel.kraus()) kraus.push_back(from_matrix(k));
  out["kraus"] = std::move(kraus);
  return out;
}

QuantumChannel to_channel(const json& j, const std::string& context) {
  const json& kraus = require(j, "kraus", context);
  if (!kraus.is_array() || kraus.empty()) throw MalformedInput(context + ": 'kraus' must be a non-empty array");
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    ops.push_back(to_matrix(kraus[k], context + ".kraus[" + std::to_string(k) + "]"));
  }
  QuantumChannel ch(std::move(ops));
  if (j.contains("d_in") && j["d_in"].get<int>() != ch.d_in()) {
    throw MalformedInput(context + ": d_in does not match kraus");
  }
  if (j.contains("d_out") && j["d_out"].get<int>() != ch.d_out()) {
    throw MalformedInput(context + ": d_out does not match kraus");
  }
  return ch;
}

json from_ensemble(const CQEnsemble& ens) {
  json out;
  out["alphabet"] = ens.alphabet();
  out["pmf"] = ens.pmf();
  json states = json::array();
  for (const DensityOperator& s : ens.states()) states.push_back(from_matrix(s.matrix()));
  out["states"] = std::move(states);
  return out;
}

CQEnsemble to_ensemble(const json& j, const std::string& context) {
  const json& pmf = require(j, "pmf", context);
  const json& states = require(j, "states", context);
  if (!pmf.is_array() || !states.is_array()) throw MalformedInput(context + ": 'pmf' and 'states' must be arrays");
  std::vector<double> q;
  for (const json& v : pmf) {
    if (!v.is_number()) throw MalformedInput(context + ": 'pmf' entries must be numbers");
    q.push_back(v.get<double>());
  }
  std::vector<DensityOperator> rho;
  for (std::size_t k = 0; k < states.size(); ++k) {
    rho.emplace_back(to_matrix(states[k], context + ".states[" + std::to_string(k) + "]"));
  }
  if (!j.contains("alphabet")) return CQEnsemble::from_states(std::move(q), std::move(rho));
  std::vector<std::string> alphabet;
  for (const json& s : j["alphabet"]) alphabet.push_back(s.is_string() ? s.get<std::string>() : s.dump());
  return CQEnsemble(std::move(alphabet), std::move(q), std::move(rho));
}

}  // namespace json_io

std::string matrix_to_json(const Matrix& m) { return json_io::from_matrix(m).dump(); }

Matrix matrix_from_json(const std::string& text) { return json_io::to_matrix(json_io::parse(text, "matrix"), "matrix"); }

std::string channel_to_json(const QuantumChannel& channel) { return json_io::from_channel(channel).dump(); }

QuantumChannel channel_from_json(const std::string& text) {
  return json_io::to_channel(json_io::parse(text, "channel"), "channel");
}

std::string ensemble_to_json(const CQEnsemble& ensemble) { return json_io::from_ensemble(ensemble).dump(); }

CQEnsemble ensemble_from_json(const std::string& text) {
  return json_io::to_ensemble(json_io::parse(text, "ensemble"), "ensemble");
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw MalformedInput("Table::add_row: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_double(v);
            } else {
              out << v;
            }
          },
          row[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::string Table::to_json() const {
  json out;
  out["columns"] = columns;
  json rows_json = json::array();
  for (const auto& row : rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              // JSON has no infinities; keep them as strings.
              if (std::isfinite(v)) {
                obj[columns[c]] = v;
              } else {
                obj[columns[c]] = format_double(v);
              }
            } else {
              obj[columns[c]] = v;
            }
          },
          row[c]);
    }
    rows_json.push_back(std::move(obj));
  }
  out["rows"] = std::move(rows_json);
  return out.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write file: " + path);
  out << text;
  if (!out) throw ResourceError("write failed: " + path);
}

}  // namespace relcover
