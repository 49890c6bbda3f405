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

#include "relcover/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"
#include "relcover/min_entropy.hpp"

namespace relcover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasibilitySlack = 1e-12;

// Fidelity against a fixed target, F* = (Tr √(√t c √t) + √((1−Tr c)(1−Tr t)))².
class FidelityToTarget {
 public:
  explicit FidelityToTarget(const DensityOperator& target)
      : root_(matrix_power(target, 0.5)), trace_(target.trace()) {}

  double operator()(const Matrix& candidate) const {
    const HermitianOperator m(Matrix(root_ * candidate * root_), kInf);
    const RealVector mu = m.spectrum().values;
    // Rounding-level eigenvalues would be amplified by the square root.
    const double floor = kSupportSlack * support_cutoff(mu);
    double overlap = 0.0;
    for (int k = 0; k < mu.size(); ++k) {
      if (mu(k) > floor) overlap += std::sqrt(mu(k));
    }
    const double deficit = std::max(0.0, (1.0 - candidate.trace().real()) * (1.0 - trace_));
    const double root = overlap + std::sqrt(deficit);
    return std::min(1.0, root * root);
  }

 private:
  Matrix root_;
  double trace_;
};

// Candidates R^{1/2} V min(κγ, λ) V† R^{1/2}.
class ScaledCaps {
 public:
  ScaledCaps(const Matrix& target, const HermitianOperator& reference) {
    root_ = matrix_power(reference, 0.5);
    const Matrix inv_root = matrix_power(reference, -0.5);
    const HermitianOperator gamma(Matrix(inv_root * target * inv_root), kInf);
    const Spectrum spec = gamma.spectrum();
    const double cutoff = support_cutoff(spec.values);
    lifted_ = root_ * spec.vectors;
    gamma_ = spec.values;
    weight_ = RealVector::Zero(gamma_.size());
    for (int i = 0; i < gamma_.size(); ++i) {
      if (gamma_(i) <= cutoff) gamma_(i) = 0.0;
      weight_(i) = lifted_.col(i).squaredNorm();
    }
  }

  double gamma_max() const { return gamma_.maxCoeff(); }

  double gamma_min_positive() const {
    double g = kInf;
    for (int i = 0; i < gamma_.size(); ++i) {
      if (gamma_(i) > 0.0) g = std::min(g, gamma_(i));
    }
    return g;
  }

  double trace(double kappa, double lambda) const {
    double t = 0.0;
    for (int i = 0; i < gamma_.size(); ++i) t += std::min(kappa * gamma_(i), lambda) * weight_(i);
    return t;
  }

  Matrix build(double kappa, double lambda) const {
    RealVector caps(gamma_.size());
    for (int i = 0; i < gamma_.size(); ++i) caps(i) = std::min(kappa * gamma_(i), lambda);
    return lifted_ * caps.cast<Complex>().asDiagonal() * lifted_.adjoint();
  }

  // Largest κ keeping the trace at most one (caps stop growing at λ/γ_min).
  double kappa_limit(double lambda) const {
    const double cap = lambda / gamma_min_positive();
    if (trace(cap, lambda) <= 1.0) return cap;
    double lo = 0.0, hi = cap;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (trace(mid, lambda) <= 1.0 ? lo : hi) = mid;
    }
    return lo;
  }

 private:
  Matrix root_;
  Matrix lifted_;
  RealVector gamma_;
  RealVector weight_;
};

struct KappaChoice {
  double kappa = 0.0;
  double fidelity = 0.0;
};

// Log-spaced scan followed by golden-section refinement of F*(κ) on
// (0, κ_max]; the useful κ can sit many decades below κ_max when Γ has tiny
// eigenvalues.
KappaChoice best_kappa(const ScaledCaps& caps, const FidelityToTarget& fid, double lambda) {
  const double hi = caps.kappa_limit(lambda);
  auto eval = [&](double log_kappa) { return fid(caps.build(std::exp(log_kappa), lambda)); };
  constexpr int kGrid = 48;
  constexpr double kDecades = 16.0;
  const double top = std::log(hi);
  const double step = kDecades * std::log(10.0) / kGrid;
  KappaChoice best{0.0, fid(caps.build(0.0, lambda))};
  int best_index = -1;
  for (int i = 0; i <= kGrid; ++i) {
    const double f = eval(top - i * step);
    if (f > best.fidelity) {
      best = {std::exp(top - i * step), f};
      best_index = i;
    }
  }
  if (best_index < 0) return best;
  double a = top - std::min(kGrid, best_index + 1) * step;
  double b = top - std::max(0, best_index - 1) * step;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = eval(d);
    }
  }
  if (fc > best.fidelity) best = {std::exp(c), fc};
  if (fd > best.fidelity) best = {std::exp(d), fd};
  return best;
}

struct CapSearch {
  double lambda = 0.0;
  KappaChoice choice;
};

// Smallest λ in [lo, hi] (log-bisection) whose best κ is inside the ball.
std::optional<CapSearch> smallest_feasible_cap(const ScaledCaps& caps, const FidelityToTarget& fid,
                                               double epsilon, double hi) {
  const double min_fidelity = 1.0 - epsilon * epsilon + kFeasibilitySlack;
  KappaChoice at_hi = best_kappa(caps, fid, hi);
  if (at_hi.fidelity < min_fidelity) return std::nullopt;
  CapSearch found{hi, at_hi};
  double lo = hi * 1e-12;
  double upper = hi;
  for (int it = 0; it < 80 && upper / lo > 1.0 + 1e-10; ++it) {
    const double mid = std::sqrt(lo * upper);
    const KappaChoice c = best_kappa(caps, fid, mid);
    if (c.fidelity >= min_fidelity) {
      upper = mid;
      found = {mid, c};
    } else {
      lo = mid;
    }
  }
  return found;
}

void require_epsilon(double epsilon, double trace) {
  if (!(epsilon >= 0.0) || epsilon > std::sqrt(trace) + 1e-15) {
    throw PreconditionError("smoothing: epsilon must lie in [0, sqrt(Tr target)] (epsilon = " +
                            std::to_string(epsilon) + ")");
  }
}

DensityOperator as_density(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  // Bisection targets leave the trace at most rounding above one.
  if (tr > 1.0) h /= tr;
  return DensityOperator(HermitianOperator(std::move(h)));
}

}  // namespace

SmoothingCertificate smooth_dmax(const DensityOperator& sigma, const HermitianOperator& rho, double epsilon) {
  require_epsilon(epsilon, sigma.trace());
  if (sigma.dim() != rho.dim()) throw MalformedInput("smooth_dmax: dimension mismatch");
  if (epsilon == 0.0) {
    const DivergenceResult d = d_max(sigma, rho);
    if (d.infinite()) throw SupportError("smooth_dmax: D_max is infinite at epsilon = 0");
    return SmoothingCertificate{sigma, 0.0, d.value};
  }
  const FidelityToTarget fid(sigma);
  const double min_fidelity = 1.0 - epsilon * epsilon + kFeasibilitySlack;
  std::optional<SmoothingCertificate> best;
  auto consider = [&](const Matrix& m) {
    const DensityOperator cand = as_density(m);
    const double dist = purified_distance(cand, sigma);
    if (dist > epsilon + 1e-9) return;
    const DivergenceResult d = d_max(cand, rho);
    if (d.infinite()) return;
    if (!best || d.value < best->bound_value) best = SmoothingCertificate{cand, dist, d.value};
  };

  // The target restricted to supp ρ.
  const Matrix proj = support_projector(rho);
  const Matrix projected = proj * sigma.matrix() * proj;
  if (projected.trace().real() <= 0.0) throw SupportError("smooth_dmax: target vanishes on supp(rho)");
  consider(projected);

  const ScaledCaps caps(projected, rho);
  double hi = caps.gamma_max();
  std::optional<CapSearch> search;
  for (int grow = 0; grow < 40 && !search; ++grow, hi *= 2.0) {
    search = smallest_feasible_cap(caps, fid, epsilon, hi);
  }
  if (search) consider(caps.build(search->choice.kappa, search->lambda));

  // Mixing toward the scaled reference; bisect the largest feasible weight.
  const Matrix anchor = rho.matrix() * (projected.trace().real() / rho.trace());
  auto mix = [&](double w) { return Matrix((1.0 - w) * projected + w * anchor); };
  if (fid(mix(0.0)) >= min_fidelity) {
    double lo = 0.0, hi_w = 1.0;
    if (fid(mix(1.0)) >= min_fidelity) {
      lo = 1.0;
    } else {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi_w);
        (fid(mix(mid)) >= min_fidelity ? lo : hi_w) = mid;
      }
    }
    consider(mix(lo));
  }

  if (!best) throw SupportError("smooth_dmax: no finite candidate inside the ball");
  return *best;
}

SmoothingCertificate smooth_hmin(const BipartiteState& rho_AB, double epsilon) {
  const DensityOperator& rho = rho_AB.state();
  require_epsilon(epsilon, rho.trace());
  const SdpCertificate base = h_min_sdp(rho_AB);
  SmoothingCertificate best{rho, 0.0, base.h_min_lower()};
  if (epsilon == 0.0) return best;

  const int d_A = rho_AB.subsystem_dim(0);
  const HermitianOperator x(kron(Matrix::Identity(d_A, d_A), base.sigma_B));
  const ScaledCaps caps(rho.matrix(), x);
  const FidelityToTarget fid(rho);
  const std::optional<CapSearch> search = smallest_feasible_cap(caps, fid, epsilon, caps.gamma_max());
  if (!search) return best;
  const DensityOperator cand = as_density(caps.build(search->choice.kappa, search->lambda));
  const double dist = purified_distance(cand, rho);
  if (dist > epsilon + 1e-9) return best;
  // candidate <= λ I ⊗ σ*, so H_min(candidate) >= −log(λ Tr σ*).
  double value = -std::log2(search->lambda * base.primal);
  try {
    value = std::max(value, h_min_sdp(BipartiteState(cand, rho_AB.dims())).h_min_lower());
  } catch (const NumericalError&) {
    // The analytic bound above stands on its own.
  }
  if (value > best.bound_value) best = SmoothingCertificate{cand, dist, value};
  return best;
}

SmoothingCertificate smooth_bound(SmoothingKind kind, const BipartiteState& target,
                                  const HermitianOperator& reference, double epsilon) {
  switch (kind) {
    case SmoothingKind::kDmaxEps:
      return smooth_dmax(target.state(), reference, epsilon);
    case SmoothingKind::kHminEps:
      return smooth_hmin(target, epsilon);
  }
  throw MalformedInput("smooth_bound: unknown kind");
}

}  // namespace relcover
