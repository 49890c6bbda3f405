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

#include "relcover/min_entropy.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"

namespace relcover {

namespace {

// Orthonormal real basis of d×d Hermitian matrices under Re Tr[XY].
std::vector<Matrix> hermitian_basis(int d) {
  std::vector<Matrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Matrix s = Matrix::Zero(d, d);
      s(i, j) = r;
      s(j, i) = r;
      basis.push_back(std::move(s));
      Matrix a = Matrix::Zero(d, d);
      a(i, j) = Complex(0.0, -r);
      a(j, i) = Complex(0.0, r);
      basis.push_back(std::move(a));
    }
  }
  return basis;
}

class BarrierSolver {
 public:
  BarrierSolver(const Matrix& rho, int d_A, int d_B)
      : rho_(rho), d_A_(d_A), d_B_(d_B), n_(d_A * d_B), basis_(hermitian_basis(d_B)) {
    cost_ = RealVector::Zero(static_cast<int>(basis_.size()));
    for (std::size_t k = 0; k < basis_.size(); ++k) cost_(k) = basis_[k].trace().real();
  }

  SdpCertificate solve(const SdpOptions& options) {
    const int m = static_cast<int>(basis_.size());
    const double top = HermitianOperator(rho_, std::numeric_limits<double>::infinity()).spectrum().max();
    RealVector x = RealVector::Zero(m);
    for (int i = 0; i < d_B_; ++i) x(i) = 2.0 * top;
    double t = n_ / (2.0 * top * d_B_);
    int steps = 0;
    Matrix z;
    for (;;) {
      // Centering by damped Newton.
      for (;;) {
        if (++steps > options.max_newton_steps) fail("Newton step limit reached", t, x, steps);
        Eigen::LLT<Matrix> llt(slack(x));
        if (llt.info() != Eigen::Success) fail("iterate left the feasible cone", t, x, steps);
        z = llt.solve(Matrix::Identity(n_, n_));
        const RealVector g = gradient(t, z);
        const RealMatrix h = hessian(z);
        Eigen::LDLT<RealMatrix> ldlt(h);
        const RealVector dx = ldlt.solve(-g);
        const double decrement = -g.dot(dx);
        if (!std::isfinite(decrement)) fail("non-finite Newton decrement", t, x, steps);
        if (decrement < 1e-10) break;
        const double phi0 = objective(t, x, llt);
        double s = 1.0;
        bool stalled = false;
        for (int tries = 0;; ++tries) {
          if (tries > 60) {
            // Rounding floor of the barrier value; accept a nearly centered point.
            if (decrement < 1e-6) {
              stalled = true;
              break;
            }
            fail("line search failed", t, x, steps);
          }
          const RealVector trial = x + s * dx;
          Eigen::LLT<Matrix> trial_llt(slack(trial));
          if (trial_llt.info() == Eigen::Success &&
              objective(t, trial, trial_llt) <= phi0 - 0.25 * s * decrement) {
            x = trial;
            break;
          }
          s *= 0.5;
          // Near the center a full step must succeed in exact arithmetic;
          // backtracking there means the barrier value hit its rounding floor.
          if (decrement < 1e-6) {
            stalled = true;
            break;
          }
        }
        if (stalled) break;
      }
      const double primal = cost_.dot(x);
      if (n_ / t <= 0.05 * options.relative_gap * primal) break;
      t *= 8.0;
    }
    return certify(x, z, t, steps, options);
  }

 private:
  Matrix sigma(const RealVector& x) const {
    Matrix s = Matrix::Zero(d_B_, d_B_);
    for (std::size_t k = 0; k < basis_.size(); ++k) s += x(k) * basis_[k];
    return s;
  }

  Matrix slack(const RealVector& x) const {
    return kron(Matrix::Identity(d_A_, d_A_), sigma(x)) - rho_;
  }

  double objective(double t, const RealVector& x, const Eigen::LLT<Matrix>& llt) const {
    double logdet = 0.0;
    for (int i = 0; i < n_; ++i) logdet += std::log(llt.matrixLLT()(i, i).real());
    return t * cost_.dot(x) - 2.0 * logdet;
  }

  RealVector gradient(double t, const Matrix& z) const {
    const Matrix z_B = partial_trace(z, {d_A_, d_B_}, {1});
    RealVector g(static_cast<int>(basis_.size()));
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      g(k) = t * cost_(k) - (z_B * basis_[k]).trace().real();
    }
    return g;
  }

  // H_kl = Re Tr[Z (I⊗E_k) Z (I⊗E_l)].
  RealMatrix hessian(const Matrix& z) const {
    const int m = static_cast<int>(basis_.size());
    std::vector<Matrix> zk(m);
    for (int k = 0; k < m; ++k) {
      zk[k].resize(n_, n_);
      for (int a = 0; a < d_A_; ++a) {
        zk[k].middleCols(a * d_B_, d_B_) = z.middleCols(a * d_B_, d_B_) * basis_[k];
      }
    }
    RealMatrix h(m, m);
    for (int k = 0; k < m; ++k) {
      for (int l = k; l < m; ++l) {
        const double v = zk[k].cwiseProduct(zk[l].transpose()).sum().real();
        h(k, l) = v;
        h(l, k) = v;
      }
    }
    return h;
  }

  SdpCertificate certify(const RealVector& x, const Matrix& z, double t, int steps,
                         const SdpOptions& options) const {
    SdpCertificate cert;
    cert.sigma_B = sigma(x);
    cert.primal = cost_.dot(x);
    cert.newton_steps = steps;
    // Dual point: Z/t rescaled so that its B-marginal is exactly I_B.
    const Matrix y = z / t;
    const HermitianOperator y_B(partial_trace(y, {d_A_, d_B_}, {1}), std::numeric_limits<double>::infinity());
    const Matrix fix = kron(Matrix::Identity(d_A_, d_A_), matrix_power(y_B, -0.5));
    const Matrix y_feasible = fix * y * fix;
    cert.dual = (rho_ * y_feasible).trace().real();
    if (!(cert.gap() <= options.relative_gap * cert.primal)) {
      std::ostringstream msg;
      msg << "h_min SDP: certified gap " << cert.gap() << " exceeds " << options.relative_gap
          << " relative (primal " << cert.primal << ", dual " << cert.dual << ")";
      throw NumericalError(msg.str());
    }
    return cert;
  }

  [[noreturn]] void fail(const char* what, double t, const RealVector& x, int steps) const {
    std::ostringstream msg;
    msg << "h_min SDP: " << what << " (t = " << t << ", primal = " << cost_.dot(x) << ", steps = " << steps
        << ")";
    throw NumericalError(msg.str());
  }

  Matrix rho_;
  int d_A_;
  int d_B_;
  int n_;
  std::vector<Matrix> basis_;
  RealVector cost_;
};

SdpCertificate solve_scaled(const Matrix& rho, int d_A, int d_B, const SdpOptions& options) {
  // The program is homogeneous in ρ; solve at unit spectral norm.
  const double scale = HermitianOperator(rho, std::numeric_limits<double>::infinity()).spectrum().max();
  if (!(scale > 0.0)) throw PreconditionError("h_min SDP: state has no positive eigenvalue");
  SdpCertificate cert = BarrierSolver(rho / scale, d_A, d_B).solve(options);
  cert.primal *= scale;
  cert.dual *= scale;
  cert.sigma_B *= scale;
  return cert;
}

}  // namespace

double SdpCertificate::h_min_lower() const { return -std::log2(primal); }
double SdpCertificate::h_min_upper() const { return -std::log2(dual); }

SdpCertificate h_min_sdp(const BipartiteState& rho_AB, const SdpOptions& options) {
  if (rho_AB.dims().size() != 2) throw MalformedInput("h_min: expected a bipartite state");
  return solve_scaled(rho_AB.state().matrix(), rho_AB.subsystem_dim(0), rho_AB.subsystem_dim(1), options);
}

double h_min(const BipartiteState& rho_AB) { return h_min_sdp(rho_AB).h_min_lower(); }

SdpCertificate conditional_dmax_sdp(const BipartiteState& rho_AB, const HermitianOperator& tau_A,
                                    const SdpOptions& options) {
  if (rho_AB.dims().size() != 2) throw MalformedInput("conditional_dmax: expected a bipartite state");
  const int d_A = rho_AB.subsystem_dim(0);
  const int d_B = rho_AB.subsystem_dim(1);
  if (tau_A.dim() != d_A) throw MalformedInput("conditional_dmax: tau_A dimension mismatch");
  require_support(rho_AB.marginal({0}), tau_A, "conditional_dmax");
  // τ ⊗ ξ ⪰ ρ  ⇔  I ⊗ ξ ⪰ (τ^{-1/2} ⊗ I) ρ (τ^{-1/2} ⊗ I) on supp τ.
  const Matrix t = kron(matrix_power(tau_A, -0.5), Matrix::Identity(d_B, d_B));
  const Matrix transformed = t * rho_AB.state().matrix() * t;
  return solve_scaled(0.5 * (transformed + transformed.adjoint()), d_A, d_B, options);
}

}  // namespace relcover
