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

#include "relcover/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "relcover/errors.hpp"

namespace relcover {

namespace {

// Eigenpairs with the support mask applied.
struct SupportSpectrum {
  RealVector values;
  Matrix vectors;
  std::vector<int> support;  // indices of eigenvalues above the cutoff
  std::vector<int> kernel;
};

SupportSpectrum support_spectrum(const HermitianOperator& op, const char* what) {
  Spectrum spec = op.spectrum();
  const double cutoff = support_cutoff(spec.values);
  if (spec.min() < -kSupportSlack * cutoff - 1e-14) {
    throw MalformedInput(std::string(what) + " is not positive semidefinite (min eigenvalue " +
                         std::to_string(spec.min()) + ")");
  }
  SupportSpectrum out{std::move(spec.values), std::move(spec.vectors), {}, {}};
  for (int k = 0; k < out.values.size(); ++k) {
    (out.values(k) > cutoff ? out.support : out.kernel).push_back(k);
  }
  return out;
}

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw MalformedInput(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

// Tr[Π_ker(ρ) σ] against a tolerance scaled to both operators.
bool leaks(const HermitianOperator& sigma, const SupportSpectrum& rho) {
  if (rho.kernel.empty()) return false;
  double leak = 0.0;
  for (int k : rho.kernel) {
    leak += (rho.vectors.col(k).adjoint() * sigma.matrix() * rho.vectors.col(k))(0, 0).real();
  }
  const double scale = std::max(sigma.matrix().cwiseAbs().maxCoeff(), rho.values.cwiseAbs().maxCoeff());
  const double tol = kSupportSlack * sigma.dim() * std::numeric_limits<double>::epsilon() * scale;
  return leak > tol;
}

// Σ_k f(λ_k) ⟨v_k| σ |v_k⟩ over the support of ρ.
template <typename F>
double weighted_trace(const HermitianOperator& sigma, const SupportSpectrum& rho, F f) {
  double total = 0.0;
  for (int k : rho.support) {
    const double diag = (rho.vectors.col(k).adjoint() * sigma.matrix() * rho.vectors.col(k))(0, 0).real();
    total += f(rho.values(k)) * diag;
  }
  return total;
}

// ρ^p restricted to the support.
Matrix support_power(const SupportSpectrum& rho, double p) {
  const int d = static_cast<int>(rho.values.size());
  Matrix out = Matrix::Zero(d, d);
  for (int k : rho.support) {
    out += std::pow(rho.values(k), p) * rho.vectors.col(k) * rho.vectors.col(k).adjoint();
  }
  return out;
}

// log2 Σ exp2(terms), stable for large spreads.
double log2_sum_exp2(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp2(t - top);
  return top + std::log2(acc);
}

DivergenceResult infinite_result(double lhs_trace) {
  DivergenceResult r;
  r.support_ok = false;
  r.lhs_trace = lhs_trace;
  return r;
}

double sandwiched_log_q(const HermitianOperator& sigma, const SupportSpectrum& rho, double alpha) {
  const double p = (1.0 - alpha) / (2.0 * alpha);
  const Matrix side = support_power(rho, p);
  const HermitianOperator middle(Matrix(side * sigma.matrix() * side), std::numeric_limits<double>::infinity());
  const RealVector mu = middle.spectrum().values;
  const double cutoff = support_cutoff(mu);
  std::vector<double> terms;
  for (int k = 0; k < mu.size(); ++k) {
    if (mu(k) > cutoff) terms.push_back(alpha * std::log2(mu(k)));
  }
  return log2_sum_exp2(terms);
}

double petz_log_q(const SupportSpectrum& sigma, const SupportSpectrum& rho, double alpha) {
  std::vector<double> terms;
  for (int j : sigma.support) {
    for (int k : rho.support) {
      const double overlap = std::norm((sigma.vectors.col(j).adjoint() * rho.vectors.col(k))(0, 0));
      if (overlap <= 0.0) continue;
      terms.push_back(alpha * std::log2(sigma.values(j)) + (1.0 - alpha) * std::log2(rho.values(k)) +
                      std::log2(overlap));
    }
  }
  return log2_sum_exp2(terms);
}

bool is_diagonal(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  Matrix off = m;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

}  // namespace

double DivergenceResult::finite_value() const {
  if (!support_ok) throw SupportError("divergence is infinite: support condition violated");
  return value;
}

bool support_contained(const HermitianOperator& sigma, const HermitianOperator& rho) {
  require_same_dim(sigma, rho, "support_contained");
  return !leaks(sigma, support_spectrum(rho, "rho"));
}

void require_support(const HermitianOperator& sigma, const HermitianOperator& rho, const char* what) {
  if (!support_contained(sigma, rho)) {
    throw SupportError(std::string(what) + ": supp(sigma) is not contained in supp(rho)");
  }
}

DivergenceResult relative_entropy(const HermitianOperator& sigma, const HermitianOperator& rho) {
  require_same_dim(sigma, rho, "relative_entropy");
  const SupportSpectrum r = support_spectrum(rho, "rho");
  const SupportSpectrum s = support_spectrum(sigma, "sigma");
  if (leaks(sigma, r)) return infinite_result(sigma.trace());
  double s_log_s = 0.0;
  for (int k : s.support) s_log_s += s.values(k) * std::log2(s.values(k));
  const double s_log_r = weighted_trace(sigma, r, [](double lambda) { return std::log2(lambda); });
  return DivergenceResult{s_log_s - s_log_r, true, sigma.trace()};
}

DivergenceResult renyi_divergence(const HermitianOperator& sigma, const HermitianOperator& rho, double alpha,
                                  RenyiVariant variant) {
  require_same_dim(sigma, rho, "renyi_divergence");
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw PreconditionError("renyi_divergence: alpha must lie in (0,1) or (1,inf); use relative_entropy at 1");
  }
  const double tr = sigma.trace();
  if (variant == RenyiVariant::kClassical) {
    if (!is_diagonal(sigma.matrix()) || !is_diagonal(rho.matrix())) {
      throw PreconditionError("renyi_divergence: classical variant needs diagonal operators");
    }
    std::vector<double> terms;
    for (int i = 0; i < sigma.dim(); ++i) {
      const double p = sigma.matrix()(i, i).real();
      const double q = rho.matrix()(i, i).real();
      if (p <= 0.0) continue;
      if (q <= 0.0) {
        if (alpha > 1.0) return infinite_result(tr);
        continue;
      }
      terms.push_back(alpha * std::log2(p) + (1.0 - alpha) * std::log2(q));
    }
    return DivergenceResult{log2_sum_exp2(terms) / (alpha - 1.0), true, tr};
  }
  const SupportSpectrum r = support_spectrum(rho, "rho");
  if (alpha > 1.0 && leaks(sigma, r)) return infinite_result(tr);
  double log_q = 0.0;
  if (variant == RenyiVariant::kSandwiched) {
    log_q = sandwiched_log_q(sigma, r, alpha);
  } else {
    log_q = petz_log_q(support_spectrum(sigma, "sigma"), r, alpha);
  }
  if (!std::isfinite(log_q)) {
    // α < 1 with orthogonal supports: Q = 0, divergence +∞.
    return infinite_result(tr);
  }
  return DivergenceResult{(log_q - std::log2(tr)) / (alpha - 1.0), true, tr};
}

double q2_tilde(const HermitianOperator& sigma, const HermitianOperator& rho) {
  require_same_dim(sigma, rho, "q2_tilde");
  const SupportSpectrum r = support_spectrum(rho, "rho");
  if (leaks(sigma, r)) throw SupportError("q2_tilde: supp(sigma) is not contained in supp(rho)");
  const Matrix inv_sqrt = support_power(r, -0.5);
  const Matrix x = sigma.matrix() * inv_sqrt;
  return (x * x).trace().real();
}

DivergenceResult d_max(const HermitianOperator& sigma, const HermitianOperator& rho) {
  require_same_dim(sigma, rho, "d_max");
  const SupportSpectrum r = support_spectrum(rho, "rho");
  if (leaks(sigma, r)) return infinite_result(sigma.trace());
  const Matrix inv_sqrt = support_power(r, -0.5);
  const HermitianOperator gamma(Matrix(inv_sqrt * sigma.matrix() * inv_sqrt),
                                std::numeric_limits<double>::infinity());
  const double top = gamma.spectrum().max();
  if (!(top > 0.0)) throw NumericalError("d_max: sigma vanishes on supp(rho)");
  return DivergenceResult{std::log2(top), true, sigma.trace()};
}

double fidelity(const DensityOperator& tau, const DensityOperator& rho) {
  require_same_dim(tau, rho, "fidelity");
  const Matrix prod = matrix_power(tau, 0.5) * matrix_power(rho, 0.5);
  const double overlap = Eigen::JacobiSVD<Matrix>(prod).singularValues().sum();
  const double deficit = std::max(0.0, (1.0 - tau.trace()) * (1.0 - rho.trace()));
  const double root = overlap + std::sqrt(deficit);
  return std::min(1.0, root * root);
}

double purified_distance(const DensityOperator& tau, const DensityOperator& rho) {
  return std::sqrt(std::max(0.0, 1.0 - fidelity(tau, rho)));
}

double entropy_f(double t) {
  if (t < 0.0) throw PreconditionError("entropy_f: argument must be >= 0");
  return t > 0.0 ? -t * std::log2(t) : 0.0;
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw PreconditionError("binary_entropy: p must lie in [0,1]");
  return entropy_f(p) + entropy_f(1.0 - p);
}

double shannon_entropy(const RealVector& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p(i) < 0.0) throw PreconditionError("shannon_entropy: negative entry");
    h += entropy_f(p(i));
  }
  return h;
}

double von_neumann_entropy(const HermitianOperator& rho) {
  const SupportSpectrum s = support_spectrum(rho, "rho");
  double h = 0.0;
  for (int k : s.support) h += entropy_f(s.values(k));
  return h;
}

double coherent_information(const BipartiteState& rho_BR) {
  if (rho_BR.dims().size() != 2) throw MalformedInput("coherent_information: expected two subsystems");
  if (!rho_BR.state().normalized()) throw PreconditionError("coherent_information: state must be normalized");
  const DensityOperator rho_B = rho_BR.marginal({0});
  const double entropy_form = von_neumann_entropy(rho_B) - von_neumann_entropy(rho_BR.state());
  const int d_R = rho_BR.subsystem_dim(1);
  const HermitianOperator ref(kron(rho_B.matrix(), Matrix::Identity(d_R, d_R)));
  const double divergence_form = relative_entropy(rho_BR.state(), ref).finite_value();
  if (std::abs(entropy_form - divergence_form) > 1e-9) {
    throw NumericalError("coherent_information: entropy and divergence forms differ by " +
                         std::to_string(std::abs(entropy_form - divergence_form)));
  }
  return entropy_form;
}

double holevo_information(const CQEnsemble& ensemble) {
  const DensityOperator avg = ensemble.average_state();
  double entropy_form = von_neumann_entropy(avg);
  const int nx = static_cast<int>(ensemble.size());
  const int d = ensemble.output_dim();
  Matrix joint = Matrix::Zero(nx * d, nx * d);
  Matrix ref = Matrix::Zero(nx * d, nx * d);
  for (int x = 0; x < nx; ++x) {
    const double q = ensemble.pmf()[x];
    entropy_form -= q * von_neumann_entropy(ensemble.state(x));
    joint.block(x * d, x * d, d, d) = q * ensemble.state(x).matrix();
    ref.block(x * d, x * d, d, d) = q * avg.matrix();
  }
  const double divergence_form =
      relative_entropy(HermitianOperator(std::move(joint)), HermitianOperator(std::move(ref))).finite_value();
  if (std::abs(entropy_form - divergence_form) > 1e-9) {
    throw NumericalError("holevo_information: entropy and divergence forms differ by " +
                         std::to_string(std::abs(entropy_form - divergence_form)));
  }
  return entropy_form;
}

double info_variance(const DensityOperator& sigma, const DensityOperator& rho) {
  require_same_dim(sigma, rho, "info_variance");
  if (!sigma.normalized()) throw PreconditionError("info_variance: sigma must be normalized");
  const double d = relative_entropy(sigma, rho).finite_value();
  const Matrix l = operator_function(sigma, Log2{}).matrix() - operator_function(rho, Log2{}).matrix();
  const double second = (sigma.matrix() * l * l).trace().real();
  return std::max(0.0, second - d * d);
}

double aep_rate(const DensityOperator& sigma, const DensityOperator& rho, int n, double epsilon) {
  if (n < 1) throw PreconditionError("aep_rate: n must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("aep_rate: epsilon must lie in (0,1)");
  return aep_rate_eps2(sigma, rho, n, epsilon * epsilon);
}

double aep_rate_eps2(const DensityOperator& sigma, const DensityOperator& rho, int n, double epsilon_sq) {
  if (n < 1) throw PreconditionError("aep_rate: n must be >= 1");
  if (!(epsilon_sq > 0.0 && epsilon_sq < 1.0)) throw PreconditionError("aep_rate: epsilon^2 must lie in (0,1)");
  const double d = relative_entropy(sigma, rho).finite_value();
  const double v = info_variance(sigma, rho);
  if (v == 0.0) return d;
  return d - std::sqrt(v / n) * inverse_normal_cdf(epsilon_sq);
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("inverse_normal_cdf: p must lie in (0,1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        ((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r + 6.7265770927008700853e4) * r +
            4.5921953931549871457e4) * r + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
         1.3314166789178437745e2) * r + 3.3871328727963666080e0;
    const double den =
        ((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r + 3.9307895800092710610e4) * r +
            2.1213794301586595867e4) * r + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
         4.2313330701600911252e1) * r + 1.0;
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        ((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r + 2.41780725177450611770e-1) * r +
            1.27045825245236838258e0) * r + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
         4.63033784615654529590e0) * r + 1.42343711074968357734e0;
    const double den =
        ((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r + 1.51986665636164571966e-2) * r +
            1.48103976427480074590e-1) * r + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
         2.05319162663775882187e0) * r + 1.0;
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 1.24266094738807843860e-3) * r +
            2.65321895265761230930e-2) * r + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
         5.46378491116411436990e0) * r + 6.65790464350110377720e0;
    const double den =
        ((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r + 1.84631831751005468180e-5) * r +
            7.86869131145613259100e-4) * r + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
         5.99832206555887937690e-1) * r + 1.0;
    value = num / den;
  }
  return q < 0.0 ? -value : value;
}

}  // namespace relcover
