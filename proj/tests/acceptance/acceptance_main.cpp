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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every instance is seeded; the seeds are printed with any
// failure so it can be replayed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "relcover/cqcover.hpp"
#include "relcover/decouple.hpp"
#include "relcover/entropic.hpp"
#include "relcover/lemma_audit.hpp"
#include "relcover/min_entropy.hpp"
#include "relcover/qcover.hpp"

using namespace relcover;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

std::vector<int> divisors(int d) {
  std::vector<int> out;
  for (int t = 1; t <= d; ++t) {
    if (d % t == 0) out.push_back(t);
  }
  return out;
}

struct CoverCase {
  std::string name;
  DensityOperator rho_A;
  QuantumChannel channel;
};

std::vector<CoverCase> cover_cases() {
  std::vector<CoverCase> cases;
  for (int d : {2, 4, 6}) {
    const std::uint64_t s = 100 * d;
    const DensityOperator mixed = DensityOperator::maximally_mixed(d);
    cases.push_back({"identity/mixed d=" + std::to_string(d), mixed, QuantumChannel::identity(d)});
    cases.push_back({"depolarizing/mixed d=" + std::to_string(d), mixed, QuantumChannel::depolarizing(d)});
    cases.push_back({"identity/random d=" + std::to_string(d), random_density(d, d, s + 1), QuantumChannel::identity(d)});
    cases.push_back({"random2 d=" + std::to_string(d), random_density(d, d, s + 2), QuantumChannel::random(d, d, 2, s + 3)});
    cases.push_back({"random3 d=" + std::to_string(d), random_density(d, d, s + 4), QuantumChannel::random(d, d, 3, s + 5)});
    cases.push_back({"random2/low-rank d=" + std::to_string(d), random_density(d, std::max(1, d / 2), s + 6),
                     QuantumChannel::random(d, d, 2, s + 7)});
  }
  cases.push_back({"random3 d=4 (second)", random_density(4, 4, 901), QuantumChannel::random(4, 4, 3, 902)});
  cases.push_back({"random3 d=6 (second)", random_density(6, 6, 903), QuantumChannel::random(6, 6, 3, 904)});
  return cases;
}

// ---------------------------------------------------------------------------

void lemma_audits(Verdict& v) {
  const auto summary = audit_all(500, 20260101);
  double worst = std::numeric_limits<double>::infinity();
  for (const LemmaSummary& s : summary) {
    worst = std::min(worst, s.worst_slack);
    std::ostringstream what;
    what << lemma_name(s.lemma_id) << " slack " << s.worst_slack << " seed " << s.worst_seed;
    v.require(s.worst_slack >= -1e-8 && s.instances == 500, what.str());
  }
  v.detail << summary.size() << " lemmas x 500, worst slack " << worst;
}

void quantum_cover_bound(Verdict& v) {
  int checks = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const CoverCase& c : cover_cases()) {
    const QCoverInstance inst = build_instance(c.rho_A, c.channel);
    const double q2 = q2_target(inst);
    if (c.name.rfind("identity/mixed", 0) == 0) {
      v.require(std::abs(q2 - inst.input_dim()) < 1e-10, c.name + ": Q2 != D");
    }
    for (int theta : divisors(inst.input_dim())) {
      const std::uint64_t seed = derive_seed(7, checks);
      const McEstimate est = mc_expectation(inst, theta, 500, seed);
      const double bound = expected_divergence_bound(inst, theta);
      const double margin = bound + 3.0 * est.stderr_ - est.mean;
      min_margin = std::min(min_margin, margin);
      std::ostringstream what;
      what << c.name << " theta " << theta << " mean " << est.mean << " bound " << bound << " seed " << seed;
      v.require(margin >= 0.0 && est.trials >= 500, what.str());
      if (c.name.rfind("depolarizing/mixed", 0) == 0) {
        for (double s : est.samples) v.require(s == 0.0, c.name + ": nonzero per-draw divergence");
      }
      ++checks;
    }
  }
  v.detail << cover_cases().size() << " instances, " << checks << " (instance, theta) pairs x 500 draws, min margin "
           << min_margin;
}

void chain_and_extraction(Verdict& v) {
  int draws = 0;
  double worst_chain = 0.0;
  for (const CoverCase& c : cover_cases()) {
    const QCoverInstance inst = build_instance(c.rho_A, c.channel);
    for (int theta : divisors(inst.input_dim())) {
      for (int k = 0; k < 25; ++k) {
        const std::uint64_t seed = derive_seed(derive_seed(11, draws), k);
        const CoverOutcome out = simulate(inst, sample_block_code(inst.input_dim(), theta, seed));
        ++draws;
        double chain = 0.0;
        const double m_count = static_cast<double>(out.block_weights.size());
        bool finite = true;
        for (std::size_t m = 0; m < out.block_weights.size(); ++m) {
          const double w = out.block_weights[m];
          if (w <= 0.0) continue;
          const DivergenceResult d = relative_entropy(out.block_states[m], inst.rho_B());
          finite = finite && d.support_ok;
          chain += w * d.value + w * std::log2(w * m_count);
        }
        if (!finite) continue;  // the draw left the support; d_value is +inf on both sides
        worst_chain = std::max(worst_chain, std::abs(chain - out.d_value));
        std::ostringstream what;
        what << c.name << " theta " << theta << " seed " << seed;
        v.require(std::abs(chain - out.d_value) <= 1e-8, what.str() + ": chain identity");
        try {
          const ExtractedBlock b = extract_block(out, inst.rho_B());
          v.require(out.input_ranks[b.m] <= theta, what.str() + ": rank");
          v.require(b.divergence <= out.d_value + 1e-12, what.str() + ": extracted divergence");
        } catch (const std::exception& e) {
          v.require(false, what.str() + ": " + e.what());
        }
      }
    }
  }
  v.detail << draws << " draws, worst chain residual " << worst_chain;
}

std::vector<CQEnsemble> cq_fixtures() {
  std::vector<CQEnsemble> out;
  out.emplace_back(std::vector<std::string>{"0", "1"}, std::vector<double>{0.5, 0.5},
                   std::vector<DensityOperator>{DensityOperator::basis_state(2, 0), DensityOperator::basis_state(2, 1)});
  for (int nx = 2; nx <= 3; ++nx) {
    for (int d = 2; d <= 3; ++d) {
      for (std::uint64_t k = 0; k < 3; ++k) {
        const std::uint64_t s = 1000 * nx + 100 * d + k;
        std::vector<double> pmf;
        std::vector<DensityOperator> states;
        double total = 0.0;
        for (int x = 0; x < nx; ++x) {
          pmf.push_back(0.2 + static_cast<double>(derive_seed(s, x) % 1000) / 1000.0);
          total += pmf.back();
          states.push_back(random_density(d, 1 + static_cast<int>(derive_seed(s, 10 + x) % d), derive_seed(s, 20 + x)));
        }
        for (double& p : pmf) p /= total;
        out.push_back(CQEnsemble::from_states(pmf, states));
      }
    }
  }
  return out;
}

void cq_exact_bound(Verdict& v) {
  const auto fixtures = cq_fixtures();
  v.require(std::abs(exact_expectation(fixtures[0], 1) - 1.0) < 1e-14, "binary orthogonal theta=1");
  v.require(std::abs(exact_expectation(fixtures[0], 2) - 0.5) < 1e-14, "binary orthogonal theta=2");
  double min_slack = std::numeric_limits<double>::infinity(), worst_oracle = 0.0;
  for (std::size_t e = 0; e < fixtures.size(); ++e) {
    std::vector<oracle::Mat> states;
    for (const DensityOperator& s : fixtures[e].states()) states.push_back(s.matrix());
    for (int theta = 1; theta <= 5; ++theta) {
      const double exact = exact_expectation(fixtures[e], theta);
      const double bound = cq_expected_bound(fixtures[e], theta);
      worst_oracle = std::max(worst_oracle,
                              std::abs(exact - oracle::codebook_expectation(fixtures[e].pmf(), states, theta)));
      min_slack = std::min(min_slack, bound - exact);
      v.require(exact <= bound, "ensemble " + std::to_string(e) + " theta " + std::to_string(theta));
    }
  }
  v.require(worst_oracle < 1e-10, "enumeration disagrees with brute force");
  v.detail << fixtures.size() << " ensembles x theta 1..5, min slack " << min_slack << ", brute-force residual "
           << worst_oracle;
}

void classical_specialization(Verdict& v) {
  double worst_embed = 0.0, min_slack = std::numeric_limits<double>::infinity();
  for (int c = 0; c < 50; ++c) {
    const std::uint64_t s = 5000 + c;
    const int nx = 2 + c % 3, ny = 2 + (c / 3) % 3;
    RealMatrix w(nx, ny);
    RealVector q(nx);
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) w(x, y) = 0.05 + static_cast<double>(derive_seed(s, x * ny + y) % 1000) / 1000.0;
      w.row(x) /= w.row(x).sum();
      q(x) = 0.1 + static_cast<double>(derive_seed(s, 100 + x) % 1000) / 1000.0;
    }
    q /= q.sum();
    const RealVector qy = w.transpose() * q;
    double d2 = 0.0;  // 2^{D₂(W‖Q_Y|Q)} summed directly
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) d2 += q(x) * w(x, y) * w(x, y) / qy(y);
    }
    for (int theta = 1; theta <= 5; ++theta) {
      const double classical = kLog2E / theta * d2;
      const double embedded = cq_expected_bound(diagonal_ensemble(w, q), theta);
      worst_embed = std::max(worst_embed, std::abs(classical - embedded));
      const ClassicalCover cc = classical_bound(w, q, theta);
      min_slack = std::min(min_slack, classical - cc.expected_divergence);
      v.require(cc.exact && cc.expected_divergence <= classical,
                "channel " + std::to_string(c) + " theta " + std::to_string(theta));
    }
  }
  v.require(worst_embed <= 1e-9, "embedding residual");
  v.detail << "50 channels x theta 1..5, embedding residual " << worst_embed << ", min slack " << min_slack;
}

void decoupling(Verdict& v) {
  std::vector<std::pair<std::string, DecoupleInstance>> cases;
  const Matrix pp = kron(DensityOperator::basis_state(2, 0).matrix(), DensityOperator::basis_state(2, 1).matrix());
  cases.emplace_back("identity/pure product",
                     DecoupleInstance(BipartiteState(DensityOperator(pp), {2, 2}), QuantumChannel::identity(2)));
  cases.emplace_back("depolarizing d_A=3", DecoupleInstance(BipartiteState(random_density(6, 3, 1), {3, 2}),
                                                            QuantumChannel::depolarizing(3)));
  const int dims[][3] = {{2, 2, 2}, {3, 2, 2}, {4, 2, 3}, {4, 3, 2}, {5, 2, 2}, {6, 2, 3}, {6, 3, 2}, {3, 3, 3}};
  for (int i = 0; i < 8; ++i) {
    const int d_A = dims[i][0], d_E = dims[i][1], d_B = dims[i][2];
    cases.emplace_back("random d_A=" + std::to_string(d_A),
                       DecoupleInstance(BipartiteState(random_density(d_A * d_E, 1 + i % (d_A * d_E), 70 + i), {d_A, d_E}),
                                        QuantumChannel::random(d_A, d_B, (d_A + d_B - 1) / d_B + i % 2, 80 + i)));
  }
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& [name, inst] = cases[k];
    const DecoupleEstimate est = mc_expectation(inst, 500, 300 + k);
    min_margin = std::min(min_margin, est.bound + 3.0 * est.estimate.stderr_ - est.estimate.mean);
    v.require(est.bound_holds, name + " bound");
    v.require(est.pinsker_ok, name + " Pinsker");
    v.require(!est.flagged_invalid, name + " exclusion rate");
    if (k == 0) {
      for (double s : est.estimate.samples) v.require(std::abs(s - 1.0) < 1e-10, name + ": per-trial D != 1");
      v.require(std::abs(est.bound - 2.0 * kLog2E) < 1e-10, name + ": bound != 2 log e");
    }
  }
  v.detail << cases.size() << " instances x 500 trials, min margin " << min_margin;
}

// Entrywise mean and standard error over draws of a matrix-valued sample.
struct MatrixMoments {
  Matrix sum, sum_sq_re, sum_sq_im;
  int n = 0;

  void add(const Matrix& m) {
    if (n == 0) {
      sum = Matrix::Zero(m.rows(), m.cols());
      sum_sq_re = sum_sq_im = Matrix::Zero(m.rows(), m.cols());
    }
    sum += m;
    sum_sq_re += m.real().array().square().matrix().cast<Complex>();
    sum_sq_im += m.imag().array().square().matrix().cast<Complex>();
    ++n;
  }

  // Largest |mean − target| / (3 SE + 1e-12) over real and imaginary parts.
  double worst_ratio(const Matrix& target) const {
    double worst = 0.0;
    for (int i = 0; i < sum.rows(); ++i) {
      for (int j = 0; j < sum.cols(); ++j) {
        const Complex mean = sum(i, j) / static_cast<double>(n);
        const double var_re = std::max(0.0, sum_sq_re(i, j).real() / n - mean.real() * mean.real());
        const double var_im = std::max(0.0, sum_sq_im(i, j).real() / n - mean.imag() * mean.imag());
        const double se_re = std::sqrt(var_re * n / (n - 1.0) / n), se_im = std::sqrt(var_im * n / (n - 1.0) / n);
        worst = std::max(worst, std::abs(mean.real() - target(i, j).real()) / (3.0 * se_re + 1e-12));
        worst = std::max(worst, std::abs(mean.imag() - target(i, j).imag()) / (3.0 * se_im + 1e-12));
      }
    }
    return worst;
  }
};

void haar_moments_check(Verdict& v) {
  constexpr int kDraws = 10000;
  constexpr int d = 4, theta = 2;
  const QCoverInstance inst = build_instance(random_density(d, d, 41), QuantumChannel::random(d, d, 2, 42));
  const DecoupleInstance dec(BipartiteState(random_density(d * 2, 4, 43), {d, 2}), QuantumChannel::random(d, 2, 2, 44));
  MatrixMoments bm, be;
  double a_sum = 0, a_sq = 0, b_sum = 0, b_sq = 0;
  for (int k = 0; k < kDraws; ++k) {
    const std::uint64_t seed = derive_seed(2718, k);
    const BlockCode code = sample_block_code(d, theta, seed);
    bm.add(simulate(inst, code).sigma_BM.state().matrix());
    be.add(decouple_trial(dec, haar_unitary(d, derive_seed(seed, 1))).sigma_BE.state().matrix());
    const Matrix x = code.unitary.adjoint() * code.projector(0) * code.unitary;
    const double a = std::norm(x(0, 1)), b = (x(0, 0) * x(1, 1)).real();
    a_sum += a, a_sq += a * a, b_sum += b, b_sq += b * b;
  }
  const Matrix rho_BM = kron(inst.rho_B().matrix(), Matrix::Identity(d / theta, d / theta) / double(d / theta));
  const double r_bm = bm.worst_ratio(rho_BM);
  const double r_be = be.worst_ratio(dec.target().state().matrix());
  v.require(r_bm <= 1.0, "E[sigma_BM] outside 3 SE");
  v.require(r_be <= 1.0, "E[sigma_BE] outside 3 SE");
  const HaarMoments exact = haar_moments(d, theta);
  const double a_mean = a_sum / kDraws, b_mean = b_sum / kDraws;
  const double a_se = std::sqrt((a_sq / kDraws - a_mean * a_mean) / (kDraws - 1));
  const double b_se = std::sqrt((b_sq / kDraws - b_mean * b_mean) / (kDraws - 1));
  v.require(std::abs(a_mean - exact.alpha) <= 3 * a_se, "alpha outside 3 SE");
  v.require(std::abs(b_mean - exact.beta) <= 3 * b_se, "beta outside 3 SE");
  v.detail << "10^4 draws; worst entry |dev|/3SE: sigma_BM " << r_bm << ", sigma_BE " << r_be << "; alpha "
           << a_mean << " vs " << exact.alpha << " (se " << a_se << "), beta " << b_mean << " vs " << exact.beta
           << " (se " << b_se << ")";
}

void hmin_cross_validation(Verdict& v) {
  double worst_grid = 0.0, worst_closed = 0.0;
  for (int s = 0; s < 50; ++s) {
    const int d_A = 2 + s % 2;
    const DensityOperator rho = random_density(2 * d_A, 1 + s % (2 * d_A), 4000 + s);
    const double diff = std::abs(h_min(BipartiteState(rho, {d_A, 2})) - oracle::hmin_bloch_grid(rho.matrix(), d_A));
    worst_grid = std::max(worst_grid, diff);
    v.require(diff <= 1e-4, "Bloch grid state " + std::to_string(s));
  }
  for (int d = 2; d <= 4; ++d) {
    const double diff = std::abs(h_min(BipartiteState(maximally_entangled(d), {d, d})) + std::log2(d));
    worst_closed = std::max(worst_closed, diff);
    v.require(diff <= 1e-6, "maximally entangled d=" + std::to_string(d));
  }
  for (int s = 0; s < 5; ++s) {
    const DensityOperator a = random_density(3, 3, 60 + s);
    const DensityOperator b = random_density(2, 2, 70 + s);
    const BipartiteState ab(DensityOperator(kron(a.matrix(), b.matrix())), {3, 2});
    const double diff = std::abs(h_min(ab) + std::log2(a.spectrum().max()));
    worst_closed = std::max(worst_closed, diff);
    v.require(diff <= 1e-6, "product state " + std::to_string(s));
  }
  v.detail << "50 grid states, worst " << worst_grid << "; closed forms worst " << worst_closed;
}

QuantumChannel tensor_power(const QuantumChannel& ch, int n) {
  std::vector<Matrix> kraus = ch.kraus();
  for (int k = 1; k < n; ++k) {
    std::vector<Matrix> next;
    for (const Matrix& a : kraus) {
      for (const Matrix& b : ch.kraus()) next.push_back(kron(a, b));
    }
    kraus = std::move(next);
  }
  return QuantumChannel(std::move(kraus));
}

void asymptotic_trend(Verdict& v) {
  const DensityOperator rho_A = random_density(2, 2, 5150);
  const QuantumChannel ch = QuantumChannel::random(2, 2, 2, 5151);
  const QCoverInstance one = build_instance(rho_A, ch);
  const double q2 = q2_target(one);
  const double rate = coherent_information(one.rho_BR()) + 0.5;
  std::vector<double> per_copy;
  Matrix rho_n = rho_A.matrix();
  for (int n = 1; n <= 3; ++n) {
    if (n > 1) rho_n = kron(rho_n, rho_A.matrix());
    const QCoverInstance inst = build_instance(DensityOperator(rho_n), tensor_power(ch, n));
    const double q2_n = q2_target(inst);
    v.require(std::abs(q2_n - std::pow(q2, n)) <= 1e-9 * q2_n, "Q2 not multiplicative at n=" + std::to_string(n));
    const double theta_n = std::ceil(std::exp2(n * rate));
    per_copy.push_back(kLog2E / theta_n * q2_n / n);
  }
  for (std::size_t k = 1; k < per_copy.size(); ++k) {
    v.require(per_copy[k] <= per_copy[k - 1], "per-copy bound increased at n=" + std::to_string(k + 1));
  }
  const DensityOperator sigma = one.rho_BR().state();
  const DensityOperator ref(kron(one.rho_B().matrix(), Matrix::Identity(2, 2) / 2.0));
  const double d = relative_entropy(sigma, ref).value;
  for (int n : {1, 10, 1000}) v.require(aep_rate_eps2(sigma, ref, n, 0.5) == d, "aep_rate at eps^2 = 1/2");
  v.detail << "r = " << rate << ", per-copy bounds " << per_copy[0] << ", " << per_copy[1] << ", " << per_copy[2];
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<void(Verdict&)> run;
    double time_limit;  // seconds; 0 for none
  };
  const std::vector<Criterion> criteria = {
      {"lemma audits", lemma_audits, 300},
      {"quantum cover bound", quantum_cover_bound, 600},
      {"chain identity and block extraction", chain_and_extraction, 0},
      {"cq exact-enumeration bound", cq_exact_bound, 120},
      {"classical specialization", classical_specialization, 0},
      {"decoupling bound", decoupling, 0},
      {"Haar moment checks", haar_moments_check, 0},
      {"min-entropy SDP cross-validation", hmin_cross_validation, 0},
      {"asymptotic trend", asymptotic_trend, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].time_limit > 0) v.require(secs < criteria[i].time_limit, "runtime limit");
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(),
                v.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
