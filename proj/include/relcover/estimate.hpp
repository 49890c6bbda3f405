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

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace relcover {

// Kahan-compensated running sum.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  int trials = 0;
  int resampled = 0;  // draws discarded for a support violation
  std::vector<double> samples;
  std::vector<std::uint64_t> seeds;

  void add(double value, std::uint64_t seed) {
    samples.push_back(value);
    seeds.push_back(seed);
  }

  /// Fills mean and stderr_ from the samples (compensated sums).
  void finish() {
    KahanSum sum, sum_sq;
    for (double v : samples) {
      sum.add(v);
      sum_sq.add(v * v);
    }
    trials = static_cast<int>(samples.size());
    mean = trials ? sum.value() / trials : 0.0;
    const double var = trials > 1 ? (sum_sq.value() - trials * mean * mean) / (trials - 1) : 0.0;
    stderr_ = trials ? std::sqrt(std::max(0.0, var) / trials) : 0.0;
  }
};

}  // namespace relcover
