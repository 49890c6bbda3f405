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

#include "relcover/qcover.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"
#include "relcover/min_entropy.hpp"
#include "relcover/smoothing.hpp"

namespace relcover {

namespace {

constexpr double kRankCutoff = 1e-9;
constexpr int kMaxResamples = 100;

HermitianOperator herm(Matrix m) { return HermitianOperator(std::move(m), std::numeric_limits<double>::infinity()); }

void require_code(const QCoverInstance& inst, const BlockCode& code) {
  if (code.unitary.rows() != inst.input_dim()) {
    throw MalformedInput("qcover: code dimension " + std::to_string(code.unitary.rows()) +
                         " does not match input dimension " + std::to_string(inst.input_dim()));
  }
}

}  // namespace

QCoverInstance::QCoverInstance(DensityOperator rho_A, QuantumChannel channel)
    : rho_A_(std::move(rho_A)), channel_(std::move(channel)) {
  if (channel_.d_in() != rho_A_.dim()) {
    throw MalformedInput("build_instance: channel input dimension " + std::to_string(channel_.d_in()) +
                         " does not match rho_A dimension " + std::to_string(rho_A_.dim()));
  }
  if (!rho_A_.normalized()) throw PreconditionError("build_instance: rho_A must be normalized");
  const int d = rho_A_.dim();
  const int d_B = channel_.d_out();
  const int n_env = channel_.env_dim();
  // Columns W √ρ |i⟩, rows indexed b * n_env + e.
  const Matrix v = stinespring(channel_) * matrix_power(rho_A_, 0.5);
  omega_.resize(static_cast<std::size_t>(d * d));
  Matrix joint = Matrix::Zero(d_B * d, d_B * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix w = Matrix::Zero(d_B, d_B);
      for (int b = 0; b < d_B; ++b) {
        for (int c = 0; c < d_B; ++c) {
          w(b, c) = v.col(i).segment(b * n_env, n_env).dot(v.col(j).segment(c * n_env, n_env));
        }
      }
      // dot() conjugates its left argument; ω_ij(b, c) = Σ_e v_i(b,e) conj(v_j(c,e)).
      w = w.conjugate().eval();
      for (int b = 0; b < d_B; ++b) {
        for (int c = 0; c < d_B; ++c) joint(b * d + i, c * d + j) = w(b, c);
      }
      omega_[static_cast<std::size_t>(i * d + j)] = std::move(w);
    }
  }
  rho_BR_ = BipartiteState(DensityOperator(Matrix(0.5 * (joint + joint.adjoint()))), {d_B, d});
  Matrix rho_B = Matrix::Zero(d_B, d_B);
  for (int i = 0; i < d; ++i) rho_B += omega(i, i);
  rho_B_ = DensityOperator(Matrix(0.5 * (rho_B + rho_B.adjoint())));
}

QCoverInstance build_instance(const DensityOperator& rho_A, const QuantumChannel& channel) {
  return QCoverInstance(rho_A, channel);
}

double q2_target(const QCoverInstance& inst) {
  const int d = inst.input_dim();
  const int d_R = d;
  const Matrix inv_sqrt = matrix_power(inst.rho_B(), -0.5);
  double by_blocks = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      by_blocks += (inst.omega(i, j) * inv_sqrt * inst.omega(j, i) * inv_sqrt).trace().real();
    }
  }
  const HermitianOperator reference(kron(inst.rho_B().matrix(), Matrix::Identity(d_R, d_R)));
  const double direct = q2_tilde(inst.rho_BR().state(), reference);
  if (std::abs(by_blocks - direct) > 1e-9 * std::max(1.0, std::abs(direct))) {
    std::ostringstream msg;
    msg << "q2_target: block route " << by_blocks << " disagrees with direct route " << direct;
    throw NumericalError(msg.str());
  }
  return direct;
}

Matrix BlockCode::projector(int m) const {
  if (m < 0 || m >= m_count) throw PreconditionError("BlockCode::projector: index out of range");
  const int d = static_cast<int>(unitary.rows());
  Matrix p = Matrix::Zero(d, d);
  for (int k = m * theta; k < (m + 1) * theta; ++k) p(k, k) = 1.0;
  return p;
}

HaarMoments haar_moments(int dim, int theta) {
  if (dim < 2 || theta < 1 || theta > dim) throw PreconditionError("haar_moments: need D >= 2 and 1 <= Theta <= D");
  const double d = dim, t = theta;
  const double denom = d * (d * d - 1.0);
  return HaarMoments{(d * t - t * t) / denom, (d * t * t - t) / denom};
}

BlockCode sample_block_code(int dim, int theta, std::uint64_t seed) {
  if (dim < 1 || theta < 1) throw PreconditionError("sample_block_code: dimensions must be positive");
  if (dim % theta != 0) {
    throw PreconditionError("sample_block_code: Theta = " + std::to_string(theta) + " does not divide D = " +
                            std::to_string(dim));
  }
  return BlockCode{haar_unitary(dim, seed), theta, dim / theta};
}

CoverOutcome simulate(const QCoverInstance& inst, const BlockCode& code) {
  require_code(inst, code);
  const int d = inst.input_dim();
  const int d_B = inst.output_dim();
  const int m_count = code.m_count;
  CoverOutcome out;
  out.theta = code.theta;
  Matrix sigma_BM = Matrix::Zero(d_B * m_count, d_B * m_count);
  const Matrix& u = code.unitary;
  const Matrix root = matrix_power(inst.rho_A(), 0.5);
  for (int m = 0; m < m_count; ++m) {
    // ⟨j|U†P_mU|i⟩ = Σ_{k in block m} conj(U_kj) U_ki.
    const Matrix rows = u.middleRows(m * code.theta, code.theta);
    const Matrix g = rows.adjoint() * rows;  // g(j, i) = ⟨j|U†P_mU|i⟩
    Matrix block = Matrix::Zero(d_B, d_B);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) block += g(j, i) * inst.omega(i, j);
    }
    block = 0.5 * (block + block.adjoint());
    const double w = block.trace().real();
    out.block_weights.push_back(w);
    out.block_states.emplace_back(w > 0.0 ? Matrix(block / w) : inst.rho_B().matrix());
    const Matrix input = root * u.transpose() * code.projector(m) * u.conjugate() * root;
    out.input_ranks.push_back(numerical_rank(herm(0.5 * (input + input.adjoint())), kRankCutoff));
    for (int b = 0; b < d_B; ++b) {
      for (int c = 0; c < d_B; ++c) sigma_BM(b * m_count + m, c * m_count + m) = block(b, c);
    }
  }
  out.sigma_BM = BipartiteState(DensityOperator(sigma_BM), {d_B, m_count});
  const HermitianOperator rho_BM(kron(inst.rho_B().matrix(), Matrix::Identity(m_count, m_count) / m_count));
  out.d_value = relative_entropy(out.sigma_BM.state(), rho_BM).finite_value();
  // An output equal to the target up to rounding has divergence exactly zero.
  if ((out.sigma_BM.state().matrix() - rho_BM.matrix()).cwiseAbs().maxCoeff() <= 1e-13) out.d_value = 0.0;
  return out;
}

std::vector<Matrix> blocks_via_purifier(const QCoverInstance& inst, const BlockCode& code) {
  require_code(inst, code);
  const int d = inst.input_dim();
  const int d_B = inst.output_dim();
  std::vector<Matrix> blocks;
  for (int m = 0; m < code.m_count; ++m) {
    const Matrix op = kron(Matrix::Identity(d_B, d_B), code.projector(m) * code.unitary);
    const Matrix rotated = op * inst.rho_BR().state().matrix() * op.adjoint();
    blocks.push_back(partial_trace(rotated, {d_B, d}, {0}));
  }
  return blocks;
}

std::vector<Matrix> blocks_via_input(const QCoverInstance& inst, const BlockCode& code) {
  require_code(inst, code);
  const Matrix root = matrix_power(inst.rho_A(), 0.5);
  std::vector<Matrix> blocks;
  for (int m = 0; m < code.m_count; ++m) {
    const Matrix input = root * code.unitary.transpose() * code.projector(m) * code.unitary.conjugate() * root;
    blocks.push_back(inst.channel().apply(input));
  }
  return blocks;
}

ExtractedBlock extract_block(const CoverOutcome& outcome, const DensityOperator& rho_B) {
  const std::size_t m_count = outcome.block_states.size();
  ExtractedBlock best;
  bool found = false;
  for (std::size_t m = 0; m < m_count; ++m) {
    if (outcome.input_ranks[m] > outcome.theta) {
      throw NumericalError("extract_block: input-side block rank " + std::to_string(outcome.input_ranks[m]) +
                           " exceeds Theta = " + std::to_string(outcome.theta));
    }
    if (!(outcome.block_weights[m] > 0.0)) continue;
    const double dv = relative_entropy(outcome.block_states[m], rho_B).finite_value();
    if (!found || dv < best.divergence) {
      best = ExtractedBlock{outcome.block_states[m], static_cast<int>(m), dv, 0};
      found = true;
    }
  }
  if (!found) throw NumericalError("extract_block: every block has zero weight");
  // Σ_m w_m D(σ̄^m‖ρ_B) <= d_value, so the minimum cannot exceed it.
  if (best.divergence > outcome.d_value + 1e-9) {
    std::ostringstream msg;
    msg << "extract_block: block divergence " << best.divergence << " exceeds covering divergence "
        << outcome.d_value;
    throw NumericalError(msg.str());
  }
  best.output_rank = numerical_rank(best.sigma_B, kRankCutoff);
  return best;
}

McEstimate mc_expectation(const QCoverInstance& inst, int theta, int trials, std::uint64_t master_seed) {
  if (trials < 2) throw PreconditionError("mc_expectation: trials must be >= 2");
  McEstimate est;
  std::uint64_t stream = 0;
  for (int t = 0; t < trials; ++t) {
    for (int attempt = 0;; ++attempt) {
      const std::uint64_t seed = derive_seed(master_seed, stream++);
      try {
        est.add(simulate(inst, sample_block_code(inst.input_dim(), theta, seed)).d_value, seed);
        break;
      } catch (const SupportError&) {
        ++est.resampled;
        if (attempt >= kMaxResamples) throw;
      }
    }
  }
  est.finish();
  return est;
}

double expected_divergence_bound(const QCoverInstance& inst, int theta) {
  if (theta < 1) throw PreconditionError("expected_divergence_bound: Theta must be >= 1");
  return kLog2E / theta * q2_target(inst);
}

Theorem1Terms theorem1_terms(const QCoverInstance& inst, double epsilon, double eta) {
  if (!(epsilon >= 0.0 && epsilon < 0.125)) throw PreconditionError("theorem1_terms: epsilon must lie in [0, 1/8)");
  if (!(eta > 0.0 && eta < 0.125)) throw PreconditionError("theorem1_terms: eta must lie in (0, 1/8)");
  Theorem1Terms terms;
  terms.epsilon = epsilon;
  terms.eta = eta;
  const BipartiteState rho_RB = inst.rho_BR().swapped();
  terms.neg_hmin = -h_min(rho_RB);
  terms.neg_hmin_smooth = epsilon > 0.0 ? -smooth_hmin(rho_RB, epsilon).bound_value : terms.neg_hmin;
  terms.log_theta_bound = std::max(0.0, terms.neg_hmin_smooth - std::log2(eta));
  terms.delta_bound = kLog2E * eta + 6.0 * epsilon * std::log2(inst.output_dim()) + entropy_f(4.0 * epsilon) +
                      entropy_f(2.0 * epsilon);
  terms.converse_bound = std::max(0.0, terms.neg_hmin);
  return terms;
}

}  // namespace relcover
