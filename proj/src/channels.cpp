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

#include "relcover/channels.hpp"

#include <cmath>
#include <numeric>

#include "relcover/errors.hpp"

namespace relcover {

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, double tp_tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw MalformedInput("QuantumChannel: empty Kraus list");
  d_out_ = static_cast<int>(kraus_.front().rows());
  d_in_ = static_cast<int>(kraus_.front().cols());
  if (d_in_ < 1 || d_out_ < 1) throw MalformedInput("QuantumChannel: empty Kraus operator");
  Matrix sum = Matrix::Zero(d_in_, d_in_);
  for (const Matrix& k : kraus_) {
    if (k.rows() != d_out_ || k.cols() != d_in_) {
      throw MalformedInput("QuantumChannel: Kraus operators have inconsistent shapes");
    }
    if (!k.allFinite()) throw MalformedInput("QuantumChannel: non-finite Kraus entry");
    sum += k.adjoint() * k;
  }
  const double tp_error = (sum - Matrix::Identity(d_in_, d_in_)).cwiseAbs().maxCoeff();
  if (tp_error > tp_tol) {
    throw MalformedInput("QuantumChannel: not trace preserving (max |sum K^dag K - I| = " +
                         std::to_string(tp_error) + ")");
  }
}

QuantumChannel QuantumChannel::identity(int dim) {
  return QuantumChannel({Matrix::Identity(dim, dim)});
}

QuantumChannel QuantumChannel::depolarizing(int dim) {
  std::vector<Matrix> kraus;
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Matrix k = Matrix::Zero(dim, dim);
      k(i, j) = amp;
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::random(int d_in, int d_out, int n_kraus, std::uint64_t seed) {
  if (d_out * n_kraus < d_in) {
    throw PreconditionError("QuantumChannel::random: d_out * n_kraus must be >= d_in");
  }
  const Matrix u = haar_unitary(d_out * n_kraus, seed);
  std::vector<Matrix> kraus(n_kraus, Matrix::Zero(d_out, d_in));
  for (int b = 0; b < d_out; ++b) {
    for (int e = 0; e < n_kraus; ++e) {
      for (int a = 0; a < d_in; ++a) kraus[e](b, a) = u(b * n_kraus + e, a);
    }
  }
  return QuantumChannel(std::move(kraus));
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
  if (rho.rows() != d_in_ || rho.cols() != d_in_) {
    throw MalformedInput("channel apply: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(d_out_, d_out_);
  for (const Matrix& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

DensityOperator apply(const QuantumChannel& channel, const DensityOperator& rho) {
  return DensityOperator(HermitianOperator(channel.apply(rho.matrix())));
}

Matrix apply_partial(const QuantumChannel& channel, const Matrix& op, const std::vector<int>& dims,
                     int subsystem) {
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) {
    throw MalformedInput("apply_partial: subsystem index out of range");
  }
  if (dims[subsystem] != channel.d_in()) {
    throw MalformedInput("apply_partial: subsystem dimension does not match channel input");
  }
  int left = 1, right = 1;
  for (int k = 0; k < subsystem; ++k) left *= dims[k];
  for (int k = subsystem + 1; k < static_cast<int>(dims.size()); ++k) right *= dims[k];
  if (left * right * channel.d_in() != op.rows()) {
    throw MalformedInput("apply_partial: dims do not match operator");
  }
  const Matrix id_left = Matrix::Identity(left, left);
  const Matrix id_right = Matrix::Identity(right, right);
  const int n_out = left * channel.d_out() * right;
  Matrix out = Matrix::Zero(n_out, n_out);
  for (const Matrix& k : channel.kraus()) {
    const Matrix full = kron(kron(id_left, k), id_right);
    out += full * op * full.adjoint();
  }
  return out;
}

BipartiteState apply_partial(const QuantumChannel& channel, const BipartiteState& state, int subsystem) {
  std::vector<int> dims = state.dims();
  Matrix out = apply_partial(channel, state.state().matrix(), dims, subsystem);
  dims[subsystem] = channel.d_out();
  return BipartiteState(DensityOperator(HermitianOperator(std::move(out))), dims);
}

Matrix stinespring(const QuantumChannel& channel) {
  const int n_env = channel.env_dim();
  Matrix w = Matrix::Zero(channel.d_out() * n_env, channel.d_in());
  for (int e = 0; e < n_env; ++e) {
    const Matrix& k = channel.kraus()[e];
    for (int b = 0; b < channel.d_out(); ++b) w.row(b * n_env + e) = k.row(b);
  }
  return w;
}

BipartiteState choi(const QuantumChannel& channel) {
  const int d = channel.d_in();
  const int d_out = channel.d_out();
  Matrix j = Matrix::Zero(d * d_out, d * d_out);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Matrix eab = Matrix::Zero(d, d);
      eab(a, b) = 1.0;
      j.block(a * d_out, b * d_out, d_out, d_out) = channel.apply(eab);
    }
  }
  j /= static_cast<double>(d);
  return BipartiteState(DensityOperator(HermitianOperator(std::move(j))), {d, d_out});
}

Matrix apply_via_choi(const BipartiteState& choi_state, const Matrix& rho) {
  const int d = choi_state.subsystem_dim(0);
  const int d_out = choi_state.subsystem_dim(1);
  if (rho.rows() != d) throw MalformedInput("apply_via_choi: input dimension mismatch");
  const Matrix lifted = kron(Matrix(rho.transpose()), Matrix::Identity(d_out, d_out)) *
                        choi_state.state().matrix();
  return static_cast<double>(d) * partial_trace(lifted, {d, d_out}, {1});
}

// ---------------------------------------------------------------------------
// CQ ensembles

CQEnsemble::CQEnsemble(std::vector<std::string> alphabet, std::vector<double> pmf,
                       std::vector<DensityOperator> states)
    : alphabet_(std::move(alphabet)), pmf_(std::move(pmf)), states_(std::move(states)) {
  if (alphabet_.empty()) throw MalformedInput("CQEnsemble: empty alphabet");
  if (pmf_.size() != alphabet_.size() || states_.size() != alphabet_.size()) {
    throw MalformedInput("CQEnsemble: alphabet, pmf and states must have equal length");
  }
  double total = 0.0;
  for (double q : pmf_) {
    if (!(q >= 0.0) || !std::isfinite(q)) throw MalformedInput("CQEnsemble: pmf entries must be >= 0");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) throw MalformedInput("CQEnsemble: pmf does not sum to 1");
  for (const DensityOperator& s : states_) {
    if (!s.normalized()) throw MalformedInput("CQEnsemble: states must be normalized");
    if (s.dim() != states_.front().dim()) throw MalformedInput("CQEnsemble: states differ in dimension");
  }
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    for (std::size_t j = i + 1; j < alphabet_.size(); ++j) {
      if (alphabet_[i] == alphabet_[j]) throw MalformedInput("CQEnsemble: duplicate symbol " + alphabet_[i]);
    }
  }
}

CQEnsemble CQEnsemble::from_states(std::vector<double> pmf, std::vector<DensityOperator> states) {
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < pmf.size(); ++i) alphabet.push_back(std::to_string(i));
  return CQEnsemble(std::move(alphabet), std::move(pmf), std::move(states));
}

std::size_t CQEnsemble::index_of(const std::string& symbol) const {
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i] == symbol) return i;
  }
  throw LookupError("unknown alphabet symbol: " + symbol);
}

DensityOperator CQEnsemble::average_state() const {
  const int d = output_dim();
  Matrix avg = Matrix::Zero(d, d);
  for (std::size_t x = 0; x < size(); ++x) avg += pmf_[x] * states_[x].matrix();
  return DensityOperator(HermitianOperator(std::move(avg)));
}

QuantumChannel cq_as_channel(const CQEnsemble& ensemble) {
  const int nx = static_cast<int>(ensemble.size());
  const int d = ensemble.output_dim();
  std::vector<Matrix> kraus;
  for (int x = 0; x < nx; ++x) {
    const Spectrum spec = ensemble.state(x).spectrum();
    for (int k = 0; k < d; ++k) {
      const double lambda = spec.values(k);
      if (lambda <= 0.0) continue;
      Matrix op = Matrix::Zero(d, nx);
      op.col(x) = std::sqrt(lambda) * spec.vectors.col(k);
      kraus.push_back(std::move(op));
    }
  }
  // Eigenvalues clipped at zero can leave a trace deficit of order 1e-16.
  return QuantumChannel(std::move(kraus), 1e-9);
}

}  // namespace relcover
