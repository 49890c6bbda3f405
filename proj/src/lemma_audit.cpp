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

#include "relcover/lemma_audit.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <utility>

#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"
#include "relcover/min_entropy.hpp"
#include "relcover/smoothing.hpp"

namespace relcover {

namespace {

constexpr std::array<LemmaId, 13> kLemmas = {
    LemmaId::kPinsker,
    LemmaId::kTraceNormPartialTrace,
    LemmaId::kTraceNormChannel,
    LemmaId::kPurifiedDistanceTrace,
    LemmaId::kContinuityRelativeEntropy,
    LemmaId::kQuadUpperBound,
    LemmaId::kDualityStates,
    LemmaId::kDualitySub,
    LemmaId::kImaxBound,
    LemmaId::kEntropyContinuityClassical,
    LemmaId::kEntropyContinuityQuantum,
    LemmaId::kIntegralB1,
    LemmaId::kIntegralB2,
};

constexpr std::array<const char*, 13> kNames = {
    "pinsker",
    "trace_norm_partial_trace",
    "trace_norm_channel",
    "purified_distance_trace",
    "continuity_relative_entropy",
    "quad_upper_bound",
    "duality_states",
    "duality_sub",
    "imax_bound",
    "entropy_continuity_classical",
    "entropy_continuity_quantum",
    "integral_B1",
    "integral_B2",
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Instance sampler with a private generator.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }
  std::uint64_t seed() { return gen_(); }

  DensityOperator state(int dim, int rank) { return random_density(dim, rank, seed()); }
  DensityOperator state(int dim) { return state(dim, integer(1, dim)); }
  DensityOperator full_rank_state(int dim) { return state(dim, dim); }

  // Positive operator with trace drawn from [lo, hi].
  Matrix positive(int dim, int rank, double lo, double hi) { return uniform(lo, hi) * state(dim, rank).matrix(); }

  // Full-rank state with spectrum bounded below by floor/dim.
  Matrix well_conditioned(int dim, double floor) {
    return (1.0 - floor) * full_rank_state(dim).matrix() + (floor / dim) * Matrix::Identity(dim, dim);
  }

  std::pair<int, int> bipartite_dims() {
    static constexpr std::array<std::pair<int, int>, 3> kDims = {{{2, 2}, {2, 3}, {3, 2}}};
    return kDims[integer(0, 2)];
  }

 private:
  std::mt19937_64 gen_;
};

HermitianOperator herm(Matrix m) { return HermitianOperator(std::move(m), kInf); }

double trace_distance(const Matrix& a, const Matrix& b) { return trace_norm(herm(a - b)); }

LemmaAuditRecord record(LemmaId id, std::uint64_t seed, int dim, InequalitySides sides) {
  return LemmaAuditRecord{id, sides.lhs, sides.rhs, sides.slack(), seed, dim};
}

// Eigenbasis kernel K_zz' = ∫_0^∞ dt / ((λ_z + t)(λ_z' + t)) by quadrature.
RealMatrix resolvent_kernel(const RealVector& lambda, int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  const int d = static_cast<int>(lambda.size());
  RealMatrix k = RealMatrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    // u in (0,1), t = u/(1−u): dt/((λ+t)(λ'+t)) = du/((λ(1−u)+u)(λ'(1−u)+u)).
    const double u = 0.5 * (x[i] + 1.0);
    for (int a = 0; a < d; ++a) {
      const double ea = lambda(a) * (1.0 - u) + u;
      for (int b = 0; b < d; ++b) {
        k(a, b) += 0.5 * w[i] / (ea * (lambda(b) * (1.0 - u) + u));
      }
    }
  }
  return k;
}

Spectrum positive_definite_spectrum(const HermitianOperator& rho) {
  Spectrum spec = rho.spectrum();
  if (!(spec.min() > support_cutoff(spec.values))) {
    throw PreconditionError("integral bound: rho must be positive definite");
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Instance generators

LemmaAuditRecord audit_pinsker(std::uint64_t seed) {
  Sampler s(seed);
  const int d = s.integer(2, 6);
  const DensityOperator sigma = s.state(d);
  Matrix rho = s.full_rank_state(d).matrix();
  if (s.coin()) rho = (1.0 - s.uniform(0.0, 0.5)) * sigma.matrix() + s.uniform(0.01, 0.5) * rho;
  rho *= s.uniform(0.5, 1.0) / rho.trace().real();
  return record(LemmaId::kPinsker, seed, d, pinsker_sides(sigma, herm(rho)));
}

LemmaAuditRecord audit_partial_trace(std::uint64_t seed) {
  Sampler s(seed);
  const auto [d_A, d_B] = s.bipartite_dims();
  const int d = d_A * d_B;
  const Matrix rho = s.positive(d, s.integer(1, d), 0.2, 1.5);
  const Matrix sigma = s.positive(d, s.integer(1, d), 0.2, 1.5);
  const int keep = s.integer(0, 1);
  const double lhs = trace_distance(partial_trace(rho, {d_A, d_B}, {keep}), partial_trace(sigma, {d_A, d_B}, {keep}));
  return record(LemmaId::kTraceNormPartialTrace, seed, d, {lhs, trace_distance(rho, sigma)});
}

LemmaAuditRecord audit_channel(std::uint64_t seed) {
  Sampler s(seed);
  const int d_in = s.integer(2, 6);
  const int d_out = s.integer(2, 6);
  const int n_kraus = std::max(s.integer(1, 3), (d_in + d_out - 1) / d_out);
  const QuantumChannel ch = QuantumChannel::random(d_in, d_out, n_kraus, s.seed());
  const Matrix rho = s.positive(d_in, s.integer(1, d_in), 0.2, 1.5);
  const Matrix sigma = s.positive(d_in, s.integer(1, d_in), 0.2, 1.5);
  const double lhs = trace_distance(ch.apply(rho), ch.apply(sigma));
  return record(LemmaId::kTraceNormChannel, seed, d_in, {lhs, trace_distance(rho, sigma)});
}

LemmaAuditRecord audit_purified_distance(std::uint64_t seed) {
  Sampler s(seed);
  const int d = s.integer(2, 6);
  const DensityOperator rho(Matrix(s.uniform(0.3, 1.0) * s.state(d).matrix()));
  const double w = s.uniform(0.0, 1.0);
  const DensityOperator tau(Matrix(s.uniform(0.3, 1.0) * ((1.0 - w) * rho.matrix() / rho.trace() +
                                                          w * s.state(d).matrix())));
  const double lhs = trace_distance(tau.matrix(), rho.matrix());
  return record(LemmaId::kPurifiedDistanceTrace, seed, d, {lhs, 2.0 * purified_distance(tau, rho)});
}

LemmaAuditRecord audit_continuity(std::uint64_t seed) {
  Sampler s(seed);
  const int d = s.integer(2, 6);
  const int k = s.integer(1, 8);
  std::vector<double> weights(k);
  double total = 0.0;
  for (double& p : weights) total += (p = s.uniform(0.05, 1.0));
  for (double& p : weights) p /= total;
  std::vector<DensityOperator> sigma, sigma_hat;
  for (int i = 0; i < k; ++i) {
    const Matrix a = s.uniform(0.5, 1.0) * s.state(d).matrix();
    const Matrix b = s.uniform(0.5, 1.0) * s.state(d).matrix();
    // ‖σ − σ̂‖₁ = w‖σ − τ‖₁ <= 2w <= 1/2.
    const double w = s.uniform(0.0, 0.25);
    sigma.emplace_back(a);
    sigma_hat.emplace_back(Matrix((1.0 - w) * a + w * b));
  }
  return record(LemmaId::kContinuityRelativeEntropy, seed, d, continuity_sides(weights, sigma, sigma_hat));
}

LemmaAuditRecord audit_quad_bound(std::uint64_t seed) {
  Sampler s(seed);
  const int d = s.integer(2, 6);
  const Matrix sigma = s.positive(d, s.integer(1, d), 0.2, 1.5);
  Matrix rho = s.positive(d, d, 0.2, 1.5);
  if (s.coin()) rho = 0.5 * rho + s.uniform(0.1, 1.0) * sigma;
  return record(LemmaId::kQuadUpperBound, seed, d, quad_bound_sides(herm(sigma), herm(rho)));
}

// inf_ξ D_max(ρ ‖ τ ⊗ ξ) from below: the logarithm of the certified dual value.
double conditional_dmax_lower(const BipartiteState& rho_AB, const Matrix& tau) {
  return std::log2(conditional_dmax_sdp(rho_AB, herm(tau)).dual);
}

LemmaAuditRecord audit_duality(std::uint64_t seed, bool normalized) {
  Sampler s(seed);
  const auto [d_A, d_B] = s.bipartite_dims();
  const int d = d_A * d_B;
  const double scale = normalized ? 1.0 : s.uniform(0.1, 1.0);
  const BipartiteState rho(DensityOperator(Matrix(scale * s.state(d).matrix())), {d_A, d_B});
  const Matrix tau = s.coin() ? Matrix(Matrix::Identity(d_A, d_A)) : s.positive(d_A, d_A, 0.2, 2.0);
  const Matrix ref = kron(tau, rho.marginal({1}).matrix());
  double lhs = std::log2(q2_tilde(rho.state(), herm(ref)));
  if (normalized) lhs -= std::log2(rho.state().trace());
  const LemmaId id = normalized ? LemmaId::kDualityStates : LemmaId::kDualitySub;
  return record(id, seed, d, {lhs, conditional_dmax_lower(rho, tau)});
}

LemmaAuditRecord audit_imax(std::uint64_t seed) {
  Sampler s(seed);
  const auto [d_A, d_B] = s.bipartite_dims();
  const int d = d_A * d_B;
  const BipartiteState rho(s.state(d, s.integer(1, 2)), {d_A, d_B});
  const double eps = s.uniform(0.01, 0.1);
  const DensityOperator rho_A = rho.marginal({0});
  const DensityOperator rho_B = rho.marginal({1});
  // Every σ in the 2ε ball has ‖σ − ρ‖₁ <= 4ε, and for normalized σ
  // D_max(σ_AB ‖ ρ_A ⊗ σ_B) >= D(σ_AB ‖ ρ_A ⊗ σ_B) >= I(A;B)_σ.
  const double t = 4.0 * eps;
  const double mutual = von_neumann_entropy(rho_A) + von_neumann_entropy(rho_B) - von_neumann_entropy(rho.state());
  const double drift = t * std::log2(d_A) + t * std::log2(d_B) + t * std::log2(d) + 3.0 * entropy_f(t);
  const double lhs = std::max(0.0, mutual - drift);
  const HermitianOperator product(kron(rho_A.matrix(), rho_B.matrix()));
  const double rhs = smooth_dmax(rho.state(), product, eps).bound_value + std::log2(3.0 / (eps * eps));
  return record(LemmaId::kImaxBound, seed, d, {lhs, rhs});
}

LemmaAuditRecord audit_entropy_classical(std::uint64_t seed) {
  Sampler s(seed);
  const int n = s.integer(2, 6);
  RealVector p(n), q(n);
  const double budget = s.uniform(0.0, 0.5);
  RealVector step(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += (step(i) = s.uniform(0.0, 1.0));
  for (int i = 0; i < n; ++i) {
    p(i) = s.uniform(0.0, 1.0);
    const double move = (s.coin() ? 1.0 : -1.0) * budget * step(i) / total;
    q(i) = std::clamp(p(i) + move, 0.0, 1.0);
  }
  const double t = (p - q).cwiseAbs().sum();
  const double lhs = std::abs(shannon_entropy(p) - shannon_entropy(q));
  return record(LemmaId::kEntropyContinuityClassical, seed, n, {lhs, t * std::log2(n) + entropy_f(t)});
}

LemmaAuditRecord audit_entropy_quantum(std::uint64_t seed) {
  Sampler s(seed);
  const int d = s.integer(2, 6);
  const Matrix rho = s.uniform(0.3, 1.0) * s.state(d).matrix();
  const Matrix tau = s.uniform(0.3, 1.0) * s.state(d).matrix();
  const double w = s.uniform(0.0, 0.25);
  const Matrix sigma = (1.0 - w) * rho + w * tau;
  const double t = trace_distance(rho, sigma);
  const double lhs = std::abs(von_neumann_entropy(herm(rho)) - von_neumann_entropy(herm(sigma)));
  return record(LemmaId::kEntropyContinuityQuantum, seed, d, {lhs, t * std::log2(d) + entropy_f(t)});
}

LemmaAuditRecord audit_integral_b1(std::uint64_t seed) {
  Sampler s(seed);
  const int d = s.integer(2, 6);
  const HermitianOperator rho = herm(s.uniform(0.3, 1.5) * s.well_conditioned(d, 0.2));
  const HermitianOperator target = herm(s.uniform(0.3, 1.5) * s.well_conditioned(d, 0.2));
  const HermitianOperator delta = herm(target.matrix() - rho.matrix());
  const Matrix lhs_op = operator_function(target, Log2{}).matrix() - operator_function(rho, Log2{}).matrix();
  const Matrix rhs_op = log_derivative_integral(rho, delta);
  // Audit along the eigenvector where rhs − lhs is smallest.
  const Spectrum gap = herm(rhs_op - lhs_op).spectrum();
  const Vector v = gap.vectors.col(0);
  const double lhs = (v.adjoint() * lhs_op * v)(0, 0).real();
  const double rhs = (v.adjoint() * rhs_op * v)(0, 0).real();
  return record(LemmaId::kIntegralB1, seed, d, {lhs, rhs});
}

LemmaAuditRecord audit_integral_b2(std::uint64_t seed) {
  Sampler s(seed);
  const int d = s.integer(2, 6);
  const HermitianOperator rho = herm(s.uniform(0.3, 1.5) * s.well_conditioned(d, 0.2));
  const Matrix target = s.positive(d, s.integer(1, d), 0.3, 1.5);
  const HermitianOperator delta = herm(target - rho.matrix());
  const Matrix inv_sqrt = matrix_power(rho, -0.5);
  const Matrix x = delta.matrix() * inv_sqrt;
  return record(LemmaId::kIntegralB2, seed, d, {quad_integral(rho, delta), (x * x).trace().real()});
}

}  // namespace

std::span<const LemmaId> all_lemmas() { return kLemmas; }

std::string lemma_name(LemmaId id) { return kNames.at(static_cast<std::size_t>(id)); }

LemmaId lemma_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (name == kNames[i]) return kLemmas[i];
  }
  throw LookupError("unknown lemma id: " + name);
}

LemmaAuditRecord lemma_audit(LemmaId id, std::uint64_t instance_seed) {
  switch (id) {
    case LemmaId::kPinsker: return audit_pinsker(instance_seed);
    case LemmaId::kTraceNormPartialTrace: return audit_partial_trace(instance_seed);
    case LemmaId::kTraceNormChannel: return audit_channel(instance_seed);
    case LemmaId::kPurifiedDistanceTrace: return audit_purified_distance(instance_seed);
    case LemmaId::kContinuityRelativeEntropy: return audit_continuity(instance_seed);
    case LemmaId::kQuadUpperBound: return audit_quad_bound(instance_seed);
    case LemmaId::kDualityStates: return audit_duality(instance_seed, true);
    case LemmaId::kDualitySub: return audit_duality(instance_seed, false);
    case LemmaId::kImaxBound: return audit_imax(instance_seed);
    case LemmaId::kEntropyContinuityClassical: return audit_entropy_classical(instance_seed);
    case LemmaId::kEntropyContinuityQuantum: return audit_entropy_quantum(instance_seed);
    case LemmaId::kIntegralB1: return audit_integral_b1(instance_seed);
    case LemmaId::kIntegralB2: return audit_integral_b2(instance_seed);
  }
  throw LookupError("unknown lemma id");
}

LemmaAuditRecord lemma_audit(const std::string& name, std::uint64_t instance_seed) {
  return lemma_audit(lemma_from_name(name), instance_seed);
}

std::vector<LemmaSummary> audit_all(int instances, std::uint64_t master_seed) {
  if (instances < 1) throw PreconditionError("audit_all: instances must be >= 1");
  std::vector<LemmaSummary> out;
  for (LemmaId id : kLemmas) {
    const std::uint64_t lemma_seed = derive_seed(master_seed, static_cast<std::uint64_t>(id));
    LemmaSummary summary{id, 0, std::numeric_limits<double>::infinity(), 0};
    for (int i = 0; i < instances; ++i) {
      const LemmaAuditRecord r = lemma_audit(id, derive_seed(lemma_seed, static_cast<std::uint64_t>(i)));
      ++summary.instances;
      if (r.slack < summary.worst_slack) {
        summary.worst_slack = r.slack;
        summary.worst_seed = r.instance_seed;
      }
    }
    out.push_back(summary);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Explicit-input evaluators

InequalitySides pinsker_sides(const DensityOperator& sigma, const HermitianOperator& rho) {
  if (!sigma.normalized()) throw PreconditionError("pinsker: sigma must be normalized");
  const double dist = trace_distance(sigma.matrix(), rho.matrix());
  const double lhs = dist * dist / (2.0 * std::numbers::ln2);
  return {lhs, relative_entropy(sigma, rho).finite_value()};
}

InequalitySides quad_bound_sides(const HermitianOperator& sigma, const HermitianOperator& rho) {
  const double d = relative_entropy(sigma, rho).finite_value();
  return {d / kLog2E, q2_tilde(sigma, rho) - sigma.trace()};
}

InequalitySides continuity_sides(const std::vector<double>& weights, const std::vector<DensityOperator>& sigma,
                                 const std::vector<DensityOperator>& sigma_hat) {
  const std::size_t k = weights.size();
  if (k == 0 || sigma.size() != k || sigma_hat.size() != k) {
    throw MalformedInput("continuity: ensemble sizes differ");
  }
  const int d = sigma.front().dim();
  Matrix rho = Matrix::Zero(d, d), rho_hat = Matrix::Zero(d, d);
  double eps_sigma = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    rho += weights[i] * sigma[i].matrix();
    rho_hat += weights[i] * sigma_hat[i].matrix();
    eps_sigma += weights[i] * trace_distance(sigma[i].matrix(), sigma_hat[i].matrix());
  }
  const double eps_rho = trace_distance(rho, rho_hat);
  if (eps_sigma > 0.5 || eps_rho > 0.5) throw PreconditionError("continuity: distances must be at most 1/2");
  const HermitianOperator r = herm(rho), r_hat = herm(rho_hat);
  double mean = 0.0, mean_hat = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mean += weights[i] * relative_entropy(sigma[i], r).finite_value();
    mean_hat += weights[i] * relative_entropy(sigma_hat[i], r_hat).finite_value();
  }
  const double rhs = (eps_sigma + eps_rho) * std::log2(d) + entropy_f(eps_sigma) + entropy_f(eps_rho);
  return {std::abs(mean - mean_hat), rhs};
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

Matrix log_derivative_integral(const HermitianOperator& rho, const HermitianOperator& delta, int nodes) {
  if (rho.dim() != delta.dim()) throw MalformedInput("log_derivative_integral: dimension mismatch");
  const Spectrum spec = positive_definite_spectrum(rho);
  const RealMatrix k = resolvent_kernel(spec.values, nodes);
  const Matrix rotated = spec.vectors.adjoint() * delta.matrix() * spec.vectors;
  const Matrix weighted = rotated.cwiseProduct(k.cast<Complex>());
  return kLog2E * spec.vectors * weighted * spec.vectors.adjoint();
}

double quad_integral(const HermitianOperator& rho, const HermitianOperator& delta, int nodes) {
  if (rho.dim() != delta.dim()) throw MalformedInput("quad_integral: dimension mismatch");
  const Spectrum spec = positive_definite_spectrum(rho);
  const RealMatrix k = resolvent_kernel(spec.values, nodes);
  const Matrix rotated = spec.vectors.adjoint() * delta.matrix() * spec.vectors;
  return rotated.cwiseAbs2().cwiseProduct(k).sum();
}

}  // namespace relcover
