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

// Command-line front end. Flags override the fields of --config.
//
// Exit status: 0 clean, 1 a bound was violated beyond tolerance,
// 2 bad input, 3 numerical or resource failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relcover/errors.hpp"
#include "relcover/experiment.hpp"

namespace {

bool looks_like_json(const std::string& s) {
  const auto p = s.find_first_not_of(" \t\r\n");
  return p != std::string::npos && (s[p] == '{' || s[p] == '[');
}

}  // namespace

int main(int argc, char** argv) {
  using namespace relcover;
  CLI::App app{"Soft-covering and decoupling experiments"};

  std::optional<std::string> mode, config_path, instance, out, format, preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, theta;
  std::optional<double> epsilon, eta, tolerance;

  app.add_option("--mode", mode, "audit-lemmas | cover-quantum | cover-cq | cover-classical | decouple");
  app.add_option("--config", config_path, "Config JSON file")->check(CLI::ExistingFile);
  app.add_option("--instance", instance, "Instance spec: inline JSON or a file path");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--trials", trials, "Monte-Carlo trials (instances per lemma for audits)");
  app.add_option("--theta", theta, "Codebook size; 0 sweeps every admissible value");
  app.add_option("--epsilon", epsilon, "Smoothing parameter");
  app.add_option("--eta", eta, "Slack parameter of the one-shot bounds");
  app.add_option("--out", out, "Result file; stdout when absent");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tolerance", tolerance, "Slack below this counts as a violation");
  app.add_option("--preset", preset, "Run a suite instead of a single experiment")
      ->check(CLI::IsMember({"smoke", "full"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset) {
      const SuiteReport report =
          suite(*preset == "full" ? Preset::kFull : Preset::kSmoke, tolerance.value_or(kDefaultTolerance));
      const std::string text = report.to_text();
      if (out) {
        write_text_file(*out, text);
      } else {
        std::cout << text;
      }
      return report.passed ? 0 : 1;
    }

    ExperimentConfig cfg = config_path ? parse_config(read_text_file(*config_path)) : ExperimentConfig{};
    if (mode) cfg.mode = mode_from_name(*mode);
    if (instance) cfg.instance = looks_like_json(*instance) ? *instance : read_text_file(*instance);
    if (seed) cfg.master_seed = *seed;
    if (trials) cfg.trials = *trials;
    if (theta) cfg.theta = *theta;
    if (epsilon) cfg.epsilon = *epsilon;
    if (eta) cfg.eta = *eta;
    if (tolerance) cfg.tolerance = *tolerance;
    if (out) cfg.out_path = *out;
    if (format) cfg.format = *format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;

    const RunResult result = run(cfg);
    const std::string text = result.render(cfg.format);
    if (cfg.out_path.empty()) {
      std::cout << text;
    } else {
      write_text_file(cfg.out_path, text);
    }
    if (result.violations > 0) {
      for (const Check& c : result.checks) {
        if (c.slack < cfg.tolerance || c.slack != c.slack) {
          std::cerr << "violation: " << c.name << " slack=" << format_double(c.slack) << " seed=" << c.seed << '\n';
        }
      }
      return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {  // MalformedInput, PreconditionError
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
