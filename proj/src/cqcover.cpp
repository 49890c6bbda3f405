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

#include "relcover/cqcover.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"
#include "relcover/smoothing.hpp"

namespace relcover {

namespace {

HermitianOperator herm(Matrix m) { return HermitianOperator(std::move(m), std::numeric_limits<double>::infinity()); }

void require_theta(int theta, const char* what) {
  if (theta < 1) throw PreconditionError(std::string(what) + ": Theta must be >= 1");
}

void require_enumerable(std::size_t alphabet, int theta, const char* what) {
  const double count = std::pow(static_cast<double>(alphabet), theta);
  if (count > kEnumerationLimit) {
    std::ostringstream msg;
    msg << what << ": " << count << " codebooks exceed the enumeration limit " << kEnumerationLimit;
    throw ResourceError(msg.str());
  }
}

// Visits every count vector n with Σ n = Θ together with its probability
// Θ!/Π n_x! Π Q(x)^{n_x} under i.i.d. sampling.
void for_each_composition(const std::vector<double>& pmf, int theta,
                          const std::function<void(const std::vector<int>&, double)>& visit) {
  const int k = static_cast<int>(pmf.size());
  std::vector<int> counts(k, 0);
  std::function<void(int, int, double)> rec = [&](int x, int left, double log_w) {
    if (x == k - 1) {
      counts[x] = left;
      if (left > 0 && pmf[x] == 0.0) return;
      const double lw = log_w - std::lgamma(left + 1.0) + (left > 0 ? left * std::log(pmf[x]) : 0.0);
      visit(counts, std::exp(lw));
      return;
    }
    for (int n = 0; n <= left; ++n) {
      if (n > 0 && pmf[x] == 0.0) break;
      counts[x] = n;
      rec(x + 1, left - n, log_w - std::lgamma(n + 1.0) + (n > 0 ? n * std::log(pmf[x]) : 0.0));
    }
    counts[x] = 0;
  };
  rec(0, theta, std::lgamma(theta + 1.0));
}

std::vector<int> draw_indices(const std::vector<double>& pmf, int theta, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::discrete_distribution<int> dist(pmf.begin(), pmf.end());
  std::vector<int> out(theta);
  for (int& i : out) i = dist(gen);
  return out;
}

double classical_kl(const RealVector& p, const RealVector& q) {
  double d = 0.0;
  for (int y = 0; y < p.size(); ++y) {
    if (p(y) > 0.0) d += p(y) * std::log2(p(y) / q(y));
  }
  return d;
}

}  // namespace

CQJoint cq_joint(const CQEnsemble& ens) {
  const int nx = static_cast<int>(ens.size());
  const int d = ens.output_dim();
  Matrix phi = Matrix::Zero(nx * d, nx * d);
  RealVector q(nx);
  for (int x = 0; x < nx; ++x) {
    q(x) = ens.pmf()[x];
    phi.block(x * d, x * d, d, d) = q(x) * ens.state(x).matrix();
  }
  return CQJoint{BipartiteState(DensityOperator(phi), {nx, d}), q, ens.average_state()};
}

Codebook sample_codebook(const CQEnsemble& ens, int theta, std::uint64_t seed) {
  require_theta(theta, "sample_codebook");
  Codebook code;
  for (int i : draw_indices(ens.pmf(), theta, seed)) code.symbols.push_back(ens.alphabet()[i]);
  return code;
}

DensityOperator mix_codebook(const CQEnsemble& ens, const Codebook& code) {
  require_theta(code.theta(), "mix_codebook");
  const int d = ens.output_dim();
  Matrix mix = Matrix::Zero(d, d);
  for (const std::string& s : code.symbols) mix += ens.state(ens.index_of(s)).matrix();
  return DensityOperator(Matrix(mix / code.theta()));
}

double q2_cq(const CQEnsemble& ens) {
  const DensityOperator rho = ens.average_state();
  for (std::size_t x = 0; x < ens.size(); ++x) {
    if (ens.pmf()[x] > 0.0 && !support_contained(ens.state(x), rho)) {
      throw SupportError("q2_cq: supp of the state for symbol " + ens.alphabet()[x] + " is not inside supp(rho)");
    }
  }
  const Matrix inv_sqrt = matrix_power(rho, -0.5);
  double per_symbol = 0.0;
  for (std::size_t x = 0; x < ens.size(); ++x) {
    const Matrix y = ens.state(x).matrix() * inv_sqrt;
    per_symbol += ens.pmf()[x] * (y * y).trace().real();
  }
  const CQJoint joint = cq_joint(ens);
  const HermitianOperator reference(kron(joint.q_x.cast<Complex>().asDiagonal().toDenseMatrix(), rho.matrix()));
  const double direct = q2_tilde(joint.phi_XB.state(), reference);
  if (std::abs(direct - per_symbol) > 1e-9 * std::max(1.0, direct)) {
    std::ostringstream msg;
    msg << "q2_cq: joint route " << direct << " disagrees with per-symbol route " << per_symbol;
    throw NumericalError(msg.str());
  }
  return direct;
}

double cq_expected_bound(const CQEnsemble& ens, int theta) {
  require_theta(theta, "cq_expected_bound");
  return kLog2E / theta * q2_cq(ens);
}

double jensen_intermediate(const CQEnsemble& ens, int theta) {
  require_theta(theta, "jensen_intermediate");
  const DensityOperator rho = ens.average_state();
  const Matrix log_rho = operator_function(rho, Log2{}).matrix();
  double total = 0.0;
  for (std::size_t x = 0; x < ens.size(); ++x) {
    if (ens.pmf()[x] == 0.0) continue;
    const Matrix& rx = ens.state(x).matrix();
    const Matrix shifted = operator_function(herm(rx / theta + rho.matrix()), Log2{}).matrix();
    total += ens.pmf()[x] * (rx * (shifted - log_rho)).trace().real();
  }
  return total;
}

double exact_expectation(const CQEnsemble& ens, int theta) {
  require_theta(theta, "exact_expectation");
  require_enumerable(ens.size(), theta, "exact_expectation");
  const DensityOperator rho = ens.average_state();
  const int d = ens.output_dim();
  KahanSum sum;
  for_each_composition(ens.pmf(), theta, [&](const std::vector<int>& counts, double weight) {
    Matrix mix = Matrix::Zero(d, d);
    for (std::size_t x = 0; x < counts.size(); ++x) {
      if (counts[x]) mix += (static_cast<double>(counts[x]) / theta) * ens.state(x).matrix();
    }
    sum.add(weight * relative_entropy(herm(mix), rho).finite_value());
  });
  return sum.value();
}

McEstimate mc_expectation(const CQEnsemble& ens, int theta, int trials, std::uint64_t master_seed) {
  require_theta(theta, "mc_expectation");
  if (trials < 2) throw PreconditionError("mc_expectation: trials must be >= 2");
  const DensityOperator rho = ens.average_state();
  const int d = ens.output_dim();
  McEstimate est;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
    Matrix mix = Matrix::Zero(d, d);
    for (int i : draw_indices(ens.pmf(), theta, seed)) mix += ens.state(i).matrix();
    est.add(relative_entropy(herm(mix / theta), rho).finite_value(), seed);
  }
  est.finish();
  return est;
}

Theorem3Terms theorem3_terms(const CQEnsemble& ens, double epsilon, double eta) {
  constexpr double kLimit = 1.0 / 24.0;
  if (!(epsilon >= 0.0 && epsilon < kLimit)) throw PreconditionError("theorem3_terms: epsilon must lie in [0, 1/24)");
  if (!(eta > 0.0 && eta < kLimit)) throw PreconditionError("theorem3_terms: eta must lie in (0, 1/24)");
  const CQJoint joint = cq_joint(ens);
  const HermitianOperator reference(
      kron(joint.q_x.cast<Complex>().asDiagonal().toDenseMatrix(), joint.rho_avg.matrix()));
  Theorem3Terms terms;
  terms.epsilon = epsilon;
  terms.eta = eta;
  terms.dmax = d_max(joint.phi_XB.state(), reference).finite_value();
  terms.dmax_smooth = smooth_dmax(joint.phi_XB.state(), reference, epsilon).bound_value;
  terms.log_theta_bound = std::max(0.0, terms.dmax_smooth - std::log2(eta));
  if (epsilon > 0.0) {
    terms.delta_bound = 3.0 * kLog2E * eta / (epsilon * epsilon) + 16.0 * epsilon * std::log2(ens.output_dim()) +
                        entropy_f(12.0 * epsilon) + entropy_f(4.0 * epsilon);
  } else {
    terms.delta_bound = std::numeric_limits<double>::infinity();
  }
  return terms;
}

ConverseCertificate converse_certificate(const CQEnsemble& ens, const Codebook& code) {
  const int theta = code.theta();
  require_theta(theta, "converse_certificate");
  const int d = ens.output_dim();
  Matrix omega_IA = Matrix::Zero(theta * theta, theta * theta);
  Matrix omega_IB = Matrix::Zero(theta * d, theta * d);
  for (int i = 0; i < theta; ++i) {
    omega_IA(i * theta + i, i * theta + i) = 1.0 / theta;
    omega_IB.block(i * d, i * d, d, d) = ens.state(ens.index_of(code.symbols[i])).matrix() / theta;
  }
  const Matrix flat = Matrix::Identity(theta * theta, theta * theta) / (theta * theta);
  ConverseCertificate cert;
  cert.log_theta = std::log2(theta);
  cert.input_dmax = d_max(herm(omega_IA), herm(flat)).finite_value();
  if (std::abs(cert.input_dmax - cert.log_theta) > 1e-12) {
    throw NumericalError("converse_certificate: input-side D_max differs from log Theta");
  }
  const Matrix omega_B = mix_codebook(ens, code).matrix();
  const Matrix product = kron(Matrix::Identity(theta, theta) / theta, omega_B);
  cert.output_dmax = d_max(herm(omega_IB), herm(product)).finite_value();
  return cert;
}

CQEnsemble diagonal_ensemble(const RealMatrix& w, const RealVector& q) {
  if (w.rows() != q.size()) throw MalformedInput("diagonal_ensemble: W rows must match the length of Q");
  for (int x = 0; x < w.rows(); ++x) {
    if ((w.row(x).array() < 0.0).any() || std::abs(w.row(x).sum() - 1.0) > 1e-12) {
      throw MalformedInput("diagonal_ensemble: row " + std::to_string(x) + " of W is not a PMF");
    }
  }
  std::vector<double> pmf(q.data(), q.data() + q.size());
  std::vector<DensityOperator> states;
  for (int x = 0; x < w.rows(); ++x) {
    states.emplace_back(Matrix(w.row(x).transpose().cast<Complex>().asDiagonal().toDenseMatrix()));
  }
  return CQEnsemble::from_states(std::move(pmf), std::move(states));
}

ClassicalCover classical_bound(const RealMatrix& w, const RealVector& q, int theta, int trials,
                               std::uint64_t master_seed, bool sample) {
  require_theta(theta, "classical_bound");
  const CQEnsemble embedded = diagonal_ensemble(w, q);
  const RealVector q_y = w.transpose() * q;
  ClassicalCover out;
  double d2 = 0.0;
  for (int x = 0; x < w.rows(); ++x) {
    for (int y = 0; y < w.cols(); ++y) {
      if (q(x) > 0.0 && w(x, y) > 0.0) d2 += q(x) * w(x, y) * w(x, y) / q_y(y);
    }
  }
  out.d2_bound = kLog2E / theta * d2;
  const double embedded_bound = cq_expected_bound(embedded, theta);
  if (std::abs(embedded_bound - out.d2_bound) > 1e-9 * std::max(1.0, out.d2_bound)) {
    throw NumericalError("classical_bound: classical and embedded bounds disagree");
  }
  const std::vector<double>& pmf = embedded.pmf();
  auto mixture = [&](const std::vector<int>& counts) {
    RealVector p = RealVector::Zero(w.cols());
    for (std::size_t x = 0; x < counts.size(); ++x) p += (static_cast<double>(counts[x]) / theta) * w.row(x).transpose();
    return p;
  };
  if (!sample && std::pow(static_cast<double>(w.rows()), theta) <= kEnumerationLimit) {
    KahanSum sum;
    for_each_composition(pmf, theta, [&](const std::vector<int>& counts, double weight) {
      sum.add(weight * classical_kl(mixture(counts), q_y));
    });
    out.expected_divergence = sum.value();
    out.exact = true;
    return out;
  }
  if (trials < 2) throw PreconditionError("classical_bound: trials must be >= 2");
  McEstimate est;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
    std::vector<int> counts(w.rows(), 0);
    for (int i : draw_indices(pmf, theta, seed)) ++counts[i];
    est.add(classical_kl(mixture(counts), q_y), seed);
  }
  est.finish();
  out.expected_divergence = est.mean;
  out.stderr_ = est.stderr_;
  out.exact = false;
  return out;
}

}  // namespace relcover
