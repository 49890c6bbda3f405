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

#include "relcover/decouple.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"
#include "relcover/min_entropy.hpp"
#include "relcover/smoothing.hpp"

namespace relcover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

HermitianOperator herm(Matrix m) { return HermitianOperator(std::move(m), kInf); }

struct TildeFactor {
  double q2 = 0.0;
  double identity_error = 0.0;
};

// X̃ = (I ⊗ X_2^{-1/4}) X (I ⊗ X_2^{-1/4}); Q̃₂(X ‖ I ⊗ X_2) = Tr X̃² and Tr_1 X̃ = √X_2.
TildeFactor tilde_factor(const BipartiteState& x, const char* name) {
  const int d1 = x.subsystem_dim(0);
  const DensityOperator x2 = x.marginal({1});
  const Matrix reference = kron(Matrix::Identity(d1, d1), x2.matrix());
  double direct = 0.0;
  try {
    direct = q2_tilde(x.state(), herm(reference));
  } catch (const SupportError& e) {
    throw SupportError(std::string("q2_product_bound: factor ") + name + ": " + e.what());
  }
  const Matrix quarter = kron(Matrix::Identity(d1, d1), matrix_power(x2, -0.25));
  const Matrix tilde = quarter * x.state().matrix() * quarter;
  TildeFactor out;
  out.q2 = (tilde * tilde).trace().real();
  out.identity_error = max_abs_diff(partial_trace(tilde, x.dims(), {1}), matrix_power(x2, 0.5));
  if (std::abs(out.q2 - direct) > 1e-9 * std::max(1.0, direct)) {
    std::ostringstream msg;
    msg << "q2_product_bound: factor " << name << " tilde route " << out.q2 << " disagrees with direct " << direct;
    throw NumericalError(msg.str());
  }
  return out;
}

}  // namespace

DecoupleInstance::DecoupleInstance(BipartiteState rho_AE, QuantumChannel channel)
    : rho_AE_(std::move(rho_AE)), channel_(std::move(channel)) {
  if (rho_AE_.dims().size() != 2) throw MalformedInput("DecoupleInstance: rho_AE must be bipartite");
  if (!rho_AE_.state().normalized()) throw PreconditionError("DecoupleInstance: rho_AE must be normalized");
  if (channel_.d_in() != d_A()) {
    throw MalformedInput("DecoupleInstance: channel input dimension " + std::to_string(channel_.d_in()) +
                         " does not match d_A = " + std::to_string(d_A()));
  }
  tau_AB_ = choi(channel_);
  const DensityOperator tau_B = tau_AB_.marginal({1});
  const DensityOperator rho_E = rho_AE_.marginal({1});
  target_ = BipartiteState(DensityOperator(kron(tau_B.matrix(), rho_E.matrix())), {d_B(), d_E()});
}

DecoupleTrial decouple_trial(const DecoupleInstance& inst, const Matrix& unitary) {
  if (unitary.rows() != inst.d_A() || unitary.cols() != inst.d_A()) {
    throw MalformedInput("decouple_trial: unitary must be d_A x d_A");
  }
  const int d_E = inst.d_E();
  const Matrix u = kron(unitary, Matrix::Identity(d_E, d_E));
  const Matrix rotated = u * inst.rho_AE().state().matrix() * u.adjoint();
  const Matrix out = apply_partial(inst.channel(), Matrix(0.5 * (rotated + rotated.adjoint())),
                                   inst.rho_AE().dims(), 0);
  DecoupleTrial trial;
  trial.sigma_BE = BipartiteState(DensityOperator(Matrix(0.5 * (out + out.adjoint()))), {inst.d_B(), d_E});
  const DivergenceResult d = relative_entropy(trial.sigma_BE.state(), inst.target().state());
  trial.support_ok = d.support_ok;
  trial.d_value = d.support_ok ? d.value : kInf;
  // An output equal to the target up to rounding has divergence exactly zero.
  const Matrix diff = trial.sigma_BE.state().matrix() - inst.target().state().matrix();
  if (d.support_ok && diff.cwiseAbs().maxCoeff() <= 1e-13) trial.d_value = 0.0;
  return trial;
}

ProductBound q2_product_bound(const DecoupleInstance& inst) {
  const TildeFactor tau = tilde_factor(inst.tau_AB(), "tau_AB");
  const TildeFactor rho = tilde_factor(inst.rho_AE(), "rho_AE");
  ProductBound out;
  out.q2_tau = tau.q2;
  out.q2_rho = rho.q2;
  out.bound = kLog2E * tau.q2 * rho.q2;
  out.tilde_tau_error = tau.identity_error;
  out.tilde_rho_error = rho.identity_error;
  if (out.tilde_tau_error > 1e-9 || out.tilde_rho_error > 1e-9) {
    std::ostringstream msg;
    msg << "q2_product_bound: tilde marginal identity off by " << std::max(out.tilde_tau_error, out.tilde_rho_error);
    throw NumericalError(msg.str());
  }
  return out;
}

Theorem5Terms theorem5_terms(const DecoupleInstance& inst, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0 / 16.0)) {
    throw PreconditionError("theorem5_terms: epsilon must lie in [0, 1/16)");
  }
  Theorem5Terms terms;
  terms.epsilon = epsilon;
  if (epsilon == 0.0) {
    terms.hmin_tau = h_min(inst.tau_AB());
    terms.hmin_rho = h_min(inst.rho_AE());
  } else {
    terms.hmin_tau = smooth_hmin(inst.tau_AB(), epsilon).bound_value;
    terms.hmin_rho = smooth_hmin(inst.rho_AE(), epsilon).bound_value;
    terms.additive = 12.0 * epsilon * std::log2(static_cast<double>(inst.d_B()) * inst.d_E()) +
                     entropy_f(8.0 * epsilon) + entropy_f(4.0 * epsilon);
  }
  terms.value = kLog2E * std::exp2(-terms.hmin_tau - terms.hmin_rho) + terms.additive;
  return terms;
}

DecoupleEstimate mc_expectation(const DecoupleInstance& inst, int trials, std::uint64_t master_seed) {
  if (trials < 2) throw PreconditionError("mc_expectation: trials must be >= 2");
  DecoupleEstimate out;
  const Matrix& target = inst.target().state().matrix();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
    const DecoupleTrial trial = decouple_trial(inst, haar_unitary(inst.d_A(), seed));
    if (!trial.support_ok) {
      ++out.excluded;
      continue;
    }
    const double dist = trace_norm(herm(trial.sigma_BE.state().matrix() - target));
    if (dist * dist / (2.0 * std::numbers::ln2) > trial.d_value + 1e-10) out.pinsker_ok = false;
    out.estimate.add(trial.d_value, seed);
  }
  if (out.estimate.samples.empty()) throw NumericalError("decouple mc_expectation: every trial left the support");
  out.estimate.finish();
  out.exclusion_rate = static_cast<double>(out.excluded) / trials;
  out.flagged_invalid = out.exclusion_rate > 0.01;
  out.bound = q2_product_bound(inst).bound;
  out.bound_holds = out.estimate.mean <= out.bound + 3.0 * out.estimate.stderr_;
  return out;
}

}  // namespace relcover
