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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "json_io.hpp"
#include "relcover/cqcover.hpp"
#include "relcover/decouple.hpp"
#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"
#include "relcover/lemma_audit.hpp"
#include "relcover/qcover.hpp"

namespace relcover {

using json_io::json;

namespace {

constexpr std::array<std::pair<Mode, const char*>, 5> kModes = {{
    {Mode::kAuditLemmas, "audit-lemmas"},
    {Mode::kCoverQuantum, "cover-quantum"},
    {Mode::kCoverCq, "cover-cq"},
    {Mode::kCoverClassical, "cover-classical"},
    {Mode::kDecouple, "decouple"},
}};

// ---------------------------------------------------------------------------
// Typed field access with field-named diagnostics

template <typename T>
T field(const json& obj, const std::string& key, const std::string& context) {
  const json& v = json_io::require(obj, key, context);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw MalformedInput(context + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const json& obj, const std::string& key, T fallback, const std::string& context) {
  return obj.contains(key) ? field<T>(obj, key, context) : fallback;
}

DensityOperator parse_state(const json& j, const std::string& ctx) {
  if (j.is_array()) return DensityOperator(json_io::to_matrix(j, ctx));
  if (!j.is_object() || j.size() != 1) throw MalformedInput(ctx + ": expected a matrix or a one-key state object");
  const std::string kind = j.begin().key();
  const json& arg = j.begin().value();
  if (kind == "maximally_mixed") return DensityOperator::maximally_mixed(field<int>(j, kind, ctx));
  if (kind == "maximally_entangled") return maximally_entangled(field<int>(j, kind, ctx));
  if (kind == "basis") {
    const auto v = field<std::vector<int>>(j, kind, ctx);
    if (v.size() != 2) throw MalformedInput(ctx + ": 'basis' takes [dim, index]");
    return DensityOperator::basis_state(v[0], v[1]);
  }
  if (kind == "random") {
    const int dim = field<int>(arg, "dim", ctx + ".random");
    return random_density(dim, field_or<int>(arg, "rank", dim, ctx + ".random"),
                          field_or<std::uint64_t>(arg, "seed", 0, ctx + ".random"));
  }
  if (kind == "product") {
    if (!arg.is_array() || arg.size() != 2) throw MalformedInput(ctx + ": 'product' takes two states");
    return DensityOperator(kron(parse_state(arg[0], ctx + ".product[0]").matrix(),
                                parse_state(arg[1], ctx + ".product[1]").matrix()));
  }
  throw MalformedInput(ctx + ": unknown state kind '" + kind + "'");
}

QuantumChannel parse_channel(const json& j, const std::string& ctx) {
  if (j.is_object() && j.contains("kraus")) return json_io::to_channel(j, ctx);
  const std::string kind = field<std::string>(j, "kind", ctx);
  if (kind == "identity") return QuantumChannel::identity(field<int>(j, "dim", ctx));
  if (kind == "depolarizing") return QuantumChannel::depolarizing(field<int>(j, "dim", ctx));
  if (kind == "random") {
    const int d_in = field<int>(j, "d_in", ctx);
    return QuantumChannel::random(d_in, field_or<int>(j, "d_out", d_in, ctx), field_or<int>(j, "n_kraus", 2, ctx),
                                  field_or<std::uint64_t>(j, "seed", 0, ctx));
  }
  throw MalformedInput(ctx + ": unknown channel kind '" + kind + "'");
}

CQEnsemble parse_ensemble(const json& j, const std::string& ctx) {
  if (j.is_object() && j.contains("preset")) {
    const std::string name = field<std::string>(j, "preset", ctx);
    if (name == "binary_orthogonal") {
      return CQEnsemble({"0", "1"}, {0.5, 0.5}, {DensityOperator::basis_state(2, 0), DensityOperator::basis_state(2, 1)});
    }
    throw MalformedInput(ctx + ": unknown ensemble preset '" + name + "'");
  }
  return json_io::to_ensemble(j, ctx);
}

std::vector<int> theta_values(const ExperimentConfig& cfg, int dim) {
  if (cfg.theta > 0) return {cfg.theta};
  std::vector<int> out;
  for (int t = 1; t <= dim; ++t) {
    if (dim % t == 0) out.push_back(t);
  }
  return out;
}

std::vector<int> cq_theta_values(const ExperimentConfig& cfg) {
  if (cfg.theta > 0) return {cfg.theta};
  return {1, 2, 3, 4, 5};
}

enum class Method { kExact, kMc, kAuto };

Method parse_method(const json& inst) {
  const std::string m = field_or<std::string>(inst, "method", "auto", "instance");
  if (m == "exact") return Method::kExact;
  if (m == "mc") return Method::kMc;
  if (m == "auto") return Method::kAuto;
  throw MalformedInput("instance: field 'method' must be exact, mc or auto");
}

bool enumerable(std::size_t alphabet, int theta) {
  return std::pow(static_cast<double>(alphabet), theta) <= kEnumerationLimit;
}

// ---------------------------------------------------------------------------
// Mode runners

void add_check(RunResult& r, const ExperimentConfig& cfg, std::string name, double slack, std::uint64_t seed) {
  if (slack < cfg.tolerance || std::isnan(slack)) ++r.violations;
  r.checks.push_back(Check{std::move(name), slack, seed});
}

RunResult run_audit(const ExperimentConfig& cfg, const json& inst) {
  RunResult r;
  r.table.columns = {"lemma_id", "instance", "dim", "lhs", "rhs", "slack", "seed"};
  std::vector<LemmaId> ids(all_lemmas().begin(), all_lemmas().end());
  if (inst.contains("lemmas")) {
    ids.clear();
    for (const auto& name : field<std::vector<std::string>>(inst, "lemmas", "instance")) {
      try {
        ids.push_back(lemma_from_name(name));
      } catch (const LookupError&) {
        throw MalformedInput("instance: field 'lemmas': unknown lemma '" + name + "'");
      }
    }
  }
  for (LemmaId id : ids) {
    const std::uint64_t lemma_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(id));
    for (int i = 0; i < cfg.trials; ++i) {
      const std::uint64_t seed = derive_seed(lemma_seed, static_cast<std::uint64_t>(i));
      const LemmaAuditRecord rec = lemma_audit(id, seed);
      r.table.add_row({lemma_name(id), static_cast<long long>(i), static_cast<long long>(rec.dim), rec.lhs, rec.rhs,
                       rec.slack, std::to_string(seed)});
      add_check(r, cfg, lemma_name(id), rec.slack, seed);
    }
  }
  return r;
}

RunResult run_cover_quantum(const ExperimentConfig& cfg, const json& inst) {
  RunResult r;
  r.table.columns = {"instance_id", "D",     "theta", "M",     "trial",           "d_value",    "stderr",
                     "q2_target",   "bound", "slack", "seed", "log_theta_bound", "delta_bound"};
  const std::string id = field_or<std::string>(inst, "id", "instance", "instance");
  const QCoverInstance q = build_instance(parse_state(json_io::require(inst, "rho_A", "instance"), "instance.rho_A"),
                                          parse_channel(json_io::require(inst, "channel", "instance"), "instance.channel"));
  const int d = q.input_dim();
  const double q2 = q2_target(q);
  const Theorem1Terms terms = theorem1_terms(q, cfg.epsilon, cfg.eta);
  for (int theta : theta_values(cfg, d)) {
    if (d % theta != 0) throw PreconditionError("cover-quantum: theta must divide D");
    const double bound = kLog2E / theta * q2;
    const std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(theta));
    const McEstimate est = mc_expectation(q, theta, cfg.trials, seed);
    const long long m = d / theta;
    for (std::size_t t = 0; t < est.samples.size(); ++t) {
      r.table.add_row({id, static_cast<long long>(d), static_cast<long long>(theta), m, std::to_string(t),
                       est.samples[t], 0.0, q2, bound, bound - est.samples[t], std::to_string(est.seeds[t]),
                       std::string(""), std::string("")});
    }
    const double slack = bound + 3.0 * est.stderr_ - est.mean;
    r.table.add_row({id, static_cast<long long>(d), static_cast<long long>(theta), m, std::string("mean"), est.mean,
                     est.stderr_, q2, bound, slack, std::to_string(seed), terms.log_theta_bound, terms.delta_bound});
    add_check(r, cfg, "quantum_cover_bound", slack, seed);
  }
  return r;
}

RunResult run_cover_cq(const ExperimentConfig& cfg, const json& inst) {
  RunResult r;
  r.table.columns = {"ensemble_id", "theta", "mode",           "E_D",        "stderr",
                     "bound",       "slack", "seed",           "log_theta_bound", "delta_bound"};
  const std::string id = field_or<std::string>(inst, "id", "ensemble", "instance");
  const CQEnsemble ens = parse_ensemble(json_io::require(inst, "ensemble", "instance"), "instance.ensemble");
  const Theorem3Terms terms = theorem3_terms(ens, cfg.epsilon, cfg.eta);
  const Method method = parse_method(inst);
  for (int theta : cq_theta_values(cfg)) {
    const double bound = cq_expected_bound(ens, theta);
    const bool exact = method == Method::kExact || (method == Method::kAuto && enumerable(ens.size(), theta));
    if (exact) {
      const double e = exact_expectation(ens, theta);
      r.table.add_row({id, static_cast<long long>(theta), std::string("exact"), e, 0.0, bound, bound - e,
                       std::string(""), terms.log_theta_bound, terms.delta_bound});
      add_check(r, cfg, "cq_cover_bound", bound - e, 0);
    } else {
      const std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(theta));
      const McEstimate est = mc_expectation(ens, theta, cfg.trials, seed);
      const double slack = bound + 3.0 * est.stderr_ - est.mean;
      r.table.add_row({id, static_cast<long long>(theta), std::string("mc"), est.mean, est.stderr_, bound, slack,
                       std::to_string(seed), terms.log_theta_bound, terms.delta_bound});
      add_check(r, cfg, "cq_cover_bound", slack, seed);
    }
  }
  return r;
}

RunResult run_cover_classical(const ExperimentConfig& cfg, const json& inst) {
  RunResult r;
  r.table.columns = {"channel_id", "theta", "mode", "E_D", "stderr", "bound", "slack", "seed"};
  const std::string id = field_or<std::string>(inst, "id", "channel", "instance");
  const auto w_rows = field<std::vector<std::vector<double>>>(inst, "W", "instance");
  const auto q_vec = field<std::vector<double>>(inst, "Q", "instance");
  if (w_rows.empty()) throw MalformedInput("instance: field 'W' is empty");
  RealMatrix w(static_cast<int>(w_rows.size()), static_cast<int>(w_rows.front().size()));
  for (std::size_t x = 0; x < w_rows.size(); ++x) {
    if (w_rows[x].size() != static_cast<std::size_t>(w.cols())) throw MalformedInput("instance: field 'W' is ragged");
    for (int y = 0; y < w.cols(); ++y) w(static_cast<int>(x), y) = w_rows[x][y];
  }
  const RealVector q = Eigen::Map<const RealVector>(q_vec.data(), static_cast<int>(q_vec.size()));
  const Method method = parse_method(inst);
  for (int theta : cq_theta_values(cfg)) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(theta));
    const bool sample = method == Method::kMc || (method == Method::kAuto && !enumerable(q_vec.size(), theta));
    const ClassicalCover c = classical_bound(w, q, theta, cfg.trials, seed, sample);
    const double slack = c.d2_bound + 3.0 * c.stderr_ - c.expected_divergence;
    r.table.add_row({id, static_cast<long long>(theta), std::string(c.exact ? "exact" : "mc"), c.expected_divergence,
                     c.stderr_, c.d2_bound, slack, c.exact ? std::string("") : std::to_string(seed)});
    add_check(r, cfg, "classical_cover_bound", slack, seed);
  }
  return r;
}

RunResult run_decouple(const ExperimentConfig& cfg, const json& inst) {
  RunResult r;
  r.table.columns = {"instance_id", "d_A",   "d_B",           "d_E",  "trial",      "d_value",
                     "stderr",      "bound", "slack",         "excluded_flag", "seed", "theorem_rhs"};
  const std::string id = field_or<std::string>(inst, "id", "instance", "instance");
  const auto dims = field<std::vector<int>>(inst, "dims", "instance");
  if (dims.size() != 2) throw MalformedInput("instance: field 'dims' must be [d_A, d_E]");
  const DecoupleInstance d(BipartiteState(parse_state(json_io::require(inst, "rho_AE", "instance"), "instance.rho_AE"),
                                          dims),
                           parse_channel(json_io::require(inst, "channel", "instance"), "instance.channel"));
  const DecoupleEstimate est = mc_expectation(d, cfg.trials, cfg.master_seed);
  const Theorem5Terms terms = theorem5_terms(d, cfg.epsilon);
  const auto dim_cells = [&]() -> std::vector<Cell> {
    return {id, static_cast<long long>(d.d_A()), static_cast<long long>(d.d_B()), static_cast<long long>(d.d_E())};
  };
  for (std::size_t t = 0; t < est.estimate.samples.size(); ++t) {
    std::vector<Cell> row = dim_cells();
    row.insert(row.end(), {std::to_string(t), est.estimate.samples[t], 0.0, est.bound,
                           est.bound - est.estimate.samples[t], 0LL, std::to_string(est.estimate.seeds[t]),
                           std::string("")});
    r.table.add_row(std::move(row));
  }
  const double slack = est.bound + 3.0 * est.estimate.stderr_ - est.estimate.mean;
  std::vector<Cell> row = dim_cells();
  row.insert(row.end(), {std::string("mean"), est.estimate.mean, est.estimate.stderr_, est.bound, slack,
                         static_cast<long long>(est.flagged_invalid ? 1 : 0), std::to_string(cfg.master_seed),
                         terms.value});
  r.table.add_row(std::move(row));
  add_check(r, cfg, "decouple_bound", slack, cfg.master_seed);
  add_check(r, cfg, "decouple_pinsker", est.pinsker_ok ? 0.0 : -1.0, cfg.master_seed);
  if (est.flagged_invalid) ++r.violations;
  return r;
}

}  // namespace

std::string mode_name(Mode mode) {
  for (const auto& [m, name] : kModes) {
    if (m == mode) return name;
  }
  throw MalformedInput("unknown mode");
}

Mode mode_from_name(const std::string& name) {
  for (const auto& [m, n] : kModes) {
    if (name == n) return m;
  }
  throw MalformedInput("unknown mode '" + name + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  const json j = json_io::parse(text, "config");
  if (!j.is_object()) throw MalformedInput("config: top level must be an object");
  static const std::array<const char*, 10> kKnown = {"mode", "instance", "theta", "trials", "epsilon",
                                                     "eta",  "seed",     "out",   "format", "tolerance"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(kKnown.begin(), kKnown.end(), [&](const char* k) { return key == k; }) == kKnown.end()) {
      throw MalformedInput("config: unknown field '" + key + "'");
    }
  }
  ExperimentConfig cfg;
  cfg.mode = mode_from_name(field<std::string>(j, "mode", "config"));
  if (j.contains("instance")) {
    const json& inst = j["instance"];
    if (inst.is_string()) {
      cfg.instance = read_text_file(inst.get<std::string>());
      json_io::parse(cfg.instance, "instance file " + inst.get<std::string>());
    } else if (inst.is_object()) {
      cfg.instance = inst.dump();
    } else {
      throw MalformedInput("config: field 'instance' must be an object or a file path");
    }
  }
  cfg.theta = field_or<int>(j, "theta", cfg.theta, "config");
  cfg.trials = field_or<int>(j, "trials", cfg.trials, "config");
  cfg.epsilon = field_or<double>(j, "epsilon", cfg.epsilon, "config");
  cfg.eta = field_or<double>(j, "eta", cfg.eta, "config");
  cfg.master_seed = field_or<std::uint64_t>(j, "seed", cfg.master_seed, "config");
  cfg.out_path = field_or<std::string>(j, "out", cfg.out_path, "config");
  cfg.tolerance = field_or<double>(j, "tolerance", cfg.tolerance, "config");
  const std::string format = field_or<std::string>(j, "format", "csv", "config");
  if (format == "csv") {
    cfg.format = OutputFormat::kCsv;
  } else if (format == "json") {
    cfg.format = OutputFormat::kJson;
  } else {
    throw MalformedInput("config: field 'format' must be csv or json");
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.theta < 0) throw PreconditionError("config: theta must be >= 0 (0 selects every admissible value)");
  const int min_trials = cfg.mode == Mode::kAuditLemmas ? 1 : 2;
  if (cfg.trials < min_trials) throw PreconditionError("config: trials must be >= " + std::to_string(min_trials));
  // Parameter ranges of the theorem evaluated by each mode.
  double eps_limit = 1.0, eta_limit = 1.0;
  switch (cfg.mode) {
    case Mode::kCoverQuantum: eps_limit = eta_limit = 1.0 / 8.0; break;
    case Mode::kCoverCq: eps_limit = eta_limit = 1.0 / 24.0; break;
    case Mode::kDecouple: eps_limit = 1.0 / 16.0; break;
    default: break;
  }
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon < eps_limit)) {
    throw PreconditionError("config: epsilon must lie in [0, " + format_double(eps_limit) + ") for " +
                            mode_name(cfg.mode));
  }
  if (!(cfg.eta > 0.0 && cfg.eta < eta_limit)) {
    throw PreconditionError("config: eta must lie in (0, " + format_double(eta_limit) + ") for " + mode_name(cfg.mode));
  }
  json_io::parse(cfg.instance, "instance");
}

std::string RunResult::render(OutputFormat format) const {
  if (format == OutputFormat::kCsv) return "# relcover results v" + std::to_string(kResultFormatVersion) + "\n" + table.to_csv();
  json out = json_io::parse(table.to_json(), "table");
  out["format_version"] = kResultFormatVersion;
  return out.dump(2) + "\n";
}

RunResult run(const ExperimentConfig& config) {
  validate(config);
  const json inst = json_io::parse(config.instance, "instance");
  switch (config.mode) {
    case Mode::kAuditLemmas: return run_audit(config, inst);
    case Mode::kCoverQuantum: return run_cover_quantum(config, inst);
    case Mode::kCoverCq: return run_cover_cq(config, inst);
    case Mode::kCoverClassical: return run_cover_classical(config, inst);
    case Mode::kDecouple: return run_decouple(config, inst);
  }
  throw MalformedInput("unknown mode");
}

int run_and_write(const ExperimentConfig& config) {
  const RunResult r = run(config);
  if (!config.out_path.empty()) write_text_file(config.out_path, r.render(config.format));
  return r.violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

json state_random(int dim, int rank, std::uint64_t seed) {
  return json{{"random", json{{"dim", dim}, {"rank", rank}, {"seed", seed}}}};
}

json channel_kind(const std::string& kind, int dim, int n_kraus = 0, std::uint64_t seed = 0) {
  if (kind == "random") return json{{"kind", kind}, {"d_in", dim}, {"d_out", dim}, {"n_kraus", n_kraus}, {"seed", seed}};
  return json{{"kind", kind}, {"dim", dim}};
}

json random_ensemble(int nx, int d, std::uint64_t seed) {
  std::vector<double> pmf(nx);
  double total = 0.0;
  for (int x = 0; x < nx; ++x) total += (pmf[x] = 1.0 + static_cast<double>(derive_seed(seed, x) % 1000) / 250.0);
  for (double& p : pmf) p /= total;
  std::vector<DensityOperator> states;
  for (int x = 0; x < nx; ++x) states.push_back(random_density(d, 1 + static_cast<int>(derive_seed(seed, 50 + x) % d),
                                                               derive_seed(seed, 100 + x)));
  return json_io::from_ensemble(CQEnsemble::from_states(std::move(pmf), std::move(states)));
}

json random_stochastic(int nx, int ny, std::uint64_t seed, json& q_out) {
  json w = json::array();
  std::vector<double> q(nx);
  double qt = 0.0;
  for (int x = 0; x < nx; ++x) {
    std::vector<double> row(ny);
    double t = 0.0;
    for (int y = 0; y < ny; ++y) t += (row[y] = static_cast<double>(derive_seed(seed, x * ny + y) % 1000 + 1));
    for (double& v : row) v /= t;
    w.push_back(row);
    qt += (q[x] = static_cast<double>(derive_seed(seed, 1000 + x) % 1000 + 1));
  }
  for (double& v : q) v /= qt;
  q_out = q;
  return w;
}

}  // namespace

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  for (const SuiteEntry& e : entries) {
    out << (e.passed ? "PASS " : "FAIL ") << e.name << " checks=" << e.checks
        << " worst_slack=" << format_double(e.worst_slack) << " seed=" << e.worst_seed << '\n';
  }
  out << (passed ? "suite passed" : "suite FAILED") << '\n';
  return out.str();
}

SuiteReport suite(Preset preset, double tolerance) {
  const bool full = preset == Preset::kFull;
  std::vector<ExperimentConfig> runs;
  auto add = [&](Mode mode, json inst, int trials, std::uint64_t seed, int theta = 0) {
    ExperimentConfig c;
    c.mode = mode;
    c.instance = inst.dump();
    c.trials = trials;
    c.master_seed = seed;
    c.theta = theta;
    c.tolerance = tolerance;
    runs.push_back(std::move(c));
  };

  add(Mode::kAuditLemmas, json::object(), full ? 500 : 20, 42);

  const int q_trials = full ? 500 : 40;
  std::uint64_t seed = 1000;
  for (int d : full ? std::vector<int>{2, 4, 6} : std::vector<int>{2, 4}) {
    add(Mode::kCoverQuantum, json{{"id", "identity-mixed"}, {"rho_A", json{{"maximally_mixed", d}}},
                                  {"channel", channel_kind("identity", d)}}, q_trials, ++seed);
    add(Mode::kCoverQuantum, json{{"id", "depolarizing-mixed"}, {"rho_A", json{{"maximally_mixed", d}}},
                                  {"channel", channel_kind("depolarizing", d)}}, q_trials, ++seed);
    for (int k : {2, 3}) {
      add(Mode::kCoverQuantum, json{{"id", "random"}, {"rho_A", state_random(d, d, ++seed)},
                                    {"channel", channel_kind("random", d, k, ++seed)}}, q_trials, ++seed);
    }
  }

  add(Mode::kCoverCq, json{{"id", "binary-orthogonal"}, {"ensemble", json{{"preset", "binary_orthogonal"}}},
                           {"method", "exact"}}, 2, 7);
  for (int i = 0; i < (full ? 12 : 3); ++i) {
    add(Mode::kCoverCq, json{{"id", "random"}, {"ensemble", random_ensemble(2 + i % 2, 2 + (i / 2) % 2, 500 + i)},
                             {"method", "exact"}}, 2, 7);
  }

  for (int i = 0; i < (full ? 50 : 5); ++i) {
    json q;
    json w = random_stochastic(2 + i % 3, 2 + (i / 3) % 3, 900 + i, q);
    add(Mode::kCoverClassical, json{{"id", "random"}, {"W", w}, {"Q", q}, {"method", "exact"}}, 2, 9);
  }

  const int d_trials = full ? 500 : 40;
  add(Mode::kDecouple, json{{"id", "depolarizing"}, {"rho_AE", state_random(4, 2, 31)}, {"dims", {2, 2}},
                            {"channel", channel_kind("depolarizing", 2)}}, d_trials, 11);
  add(Mode::kDecouple, json{{"id", "identity-pure-product"},
                            {"rho_AE", json{{"product", {json{{"basis", {2, 0}}}, json{{"basis", {2, 1}}}}}}},
                            {"dims", {2, 2}}, {"channel", channel_kind("identity", 2)}}, d_trials, 12);
  for (int i = 0; i < (full ? 8 : 2); ++i) {
    const int d_A = 2 + i % 3;
    add(Mode::kDecouple, json{{"id", "random"}, {"rho_AE", state_random(2 * d_A, 1 + i % 4, 40 + i)},
                              {"dims", {d_A, 2}}, {"channel", channel_kind("random", d_A, 2, 60 + i)}},
        d_trials, 13 + i);
  }

  std::map<std::string, SuiteEntry> by_name;
  std::vector<std::string> order;
  for (const ExperimentConfig& c : runs) {
    const RunResult r = run(c);
    for (const Check& chk : r.checks) {
      auto [it, inserted] = by_name.try_emplace(chk.name, SuiteEntry{chk.name, chk.slack, chk.seed, 0, true});
      if (inserted) order.push_back(chk.name);
      SuiteEntry& e = it->second;
      ++e.checks;
      if (chk.slack < e.worst_slack) {
        e.worst_slack = chk.slack;
        e.worst_seed = chk.seed;
      }
      if (chk.slack < tolerance || std::isnan(chk.slack)) e.passed = false;
    }
  }
  SuiteReport report;
  for (const std::string& name : order) {
    report.entries.push_back(by_name.at(name));
    report.passed = report.passed && by_name.at(name).passed;
  }
  return report;
}

}  // namespace relcover
