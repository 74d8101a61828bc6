// Copyright 2026 The lossjm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The pure-loss channel |alpha><alpha| -> |sqrt(tau) alpha><sqrt(tau) alpha|.
//
// Two independent routes to the dual channel are provided:
//  - the Kraus route (`apply_dual`), using the k-photon-loss operators
//    <m|A_k|n> = delta_{m,n-k} sqrt(C(n,k)) tau^{(n-k)/2} (1-tau)^{k/2};
//  - the Gaussian route (`fock_from_q`), which reads matrix elements off the
//    Taylor coefficients of e^{|alpha|^2} Q(alpha) for operators whose Husimi
//    function is a Gaussian exponential.
//
// Every A_k lowers photon number, so the (n, n') entry of the dual image only
// depends on entries (n-k, n'-k) of the input: truncation at any cutoff d
// commutes with the dual channel.

#ifndef LOSSJM_LOSS_HPP
#define LOSSJM_LOSS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lossjm/fock.hpp"
#include "lossjm/types.hpp"

namespace lossjm {

template <typename Real = double>
class LossChannel {
 public:
  explicit LossChannel(Real tau) : tau_(tau) {
    if (!(tau >= Real(0) && tau <= Real(1)))
      throw std::invalid_argument("LossChannel: transmissivity must lie in [0, 1]");
  }

  Real tau() const { return tau_; }

  /// The concatenation of two loss channels is a loss channel.
  LossChannel then(const LossChannel& next) const { return LossChannel(tau_ * next.tau_); }

 private:
  Real tau_;
};

/// Coefficient <n-k|A_k|n>.
template <typename Real>
Real kraus_coefficient(const LossChannel<Real>& ch, int n, int k) {
  if (k < 0 || k > n) return Real(0);
  const Real tau = ch.tau();
  return std::sqrt(detail::binomial<Real>(n, k)) * detail::ipow(std::sqrt(tau), n - k) *
         detail::ipow(std::sqrt(Real(1) - tau), k);
}

/// Kraus operators A_0..A_{d-1} of the channel on the d-dimensional truncation.
/// A lossless channel has the single operator I.
template <typename Real>
std::vector<MatrixC<Real>> kraus_ops(const LossChannel<Real>& ch, int d) {
  if (d < 1) throw std::invalid_argument("kraus_ops: d must be >= 1");
  const int count = ch.tau() == Real(1) ? 1 : d;
  std::vector<MatrixC<Real>> ops;
  ops.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    MatrixC<Real> a = MatrixC<Real>::Zero(d, d);
    for (int n = k; n < d; ++n) a(n - k, n) = kraus_coefficient(ch, n, k);
    ops.push_back(std::move(a));
  }
  return ops;
}

/// Primal action sum_k A_k rho A_k^dagger on a truncated density operator.
template <typename Real, typename Derived>
MatrixC<Real> apply(const LossChannel<Real>& ch, const Eigen::MatrixBase<Derived>& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("apply: square input required");
  const int d = static_cast<int>(rho.rows());
  MatrixC<Real> out = MatrixC<Real>::Zero(d, d);
  for (const auto& a : kraus_ops(ch, d)) out += a * rho * a.adjoint();
  return out;
}

/// Dual action sum_k A_k^dagger M A_k, evaluated entrywise:
/// out(n, n') = sum_k c(n,k) c(n',k) M(n-k, n'-k).
template <typename Real, typename Derived>
MatrixC<Real> apply_dual(const LossChannel<Real>& ch, const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("apply_dual: square input required");
  if (!is_hermitian(m)) throw std::invalid_argument("apply_dual: input is not Hermitian");
  const int d = static_cast<int>(m.rows());
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> coeff(d, d);
  for (int n = 0; n < d; ++n)
    for (int k = 0; k < d; ++k) coeff(n, k) = kraus_coefficient(ch, n, k);
  MatrixC<Real> out = MatrixC<Real>::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    for (int np = 0; np < d; ++np) {
      std::complex<Real> acc(0);
      for (int k = 0; k <= std::min(n, np); ++k)
        acc += coeff(n, k) * coeff(np, k) * std::complex<Real>(m(n - k, np - k));
      out(n, np) = acc;
    }
  }
  return out;
}

/// Husimi function of an operator whose Q is a Gaussian exponential:
/// Q(alpha) = (1/pi) exp(c0 + c1 alpha + c2 alpha* + c3 |alpha|^2).
template <typename Real = double>
struct GaussianQ {
  std::complex<Real> c0{0};
  std::complex<Real> c1{0};
  std::complex<Real> c2{0};
  std::complex<Real> c3{0};
};

/// Q of the dual image of |mu><mu|: (1/pi) exp(-tau |alpha - mu/sqrt(tau)|^2).
template <typename Real>
GaussianQ<Real> dual_coherent_q(const LossChannel<Real>& ch, std::complex<Real> mu) {
  const Real tau = ch.tau();
  const Real st = std::sqrt(tau);
  return GaussianQ<Real>{std::complex<Real>(-std::norm(mu)), st * std::conj(mu), st * mu,
                         std::complex<Real>(-tau)};
}

/// <k|M|j> = pi sqrt(k! j!) [alpha^j alpha*^k] e^{|alpha|^2} Q(alpha), with alpha
/// and alpha* independent. The coefficient is an exact finite sum over the
/// order l taken from the exp((c3 + 1) alpha alpha*) factor.
/// Throws std::domain_error when |c3 + 1| > 1: the series then grows without
/// bound in k, j and does not describe a bounded operator.
template <typename Real>
MatrixC<Real> fock_from_q(const GaussianQ<Real>& q, int d) {
  using C = std::complex<Real>;
  if (d < 1) throw std::invalid_argument("fock_from_q: d must be >= 1");
  const C w = q.c3 + C(1);
  if (std::abs(w) > Real(1) + Real(1e-12))
    throw std::domain_error("fock_from_q: |c3 + 1| > 1, coefficient series diverges");
  std::vector<Real> fact(static_cast<std::size_t>(d), Real(1));
  for (int i = 1; i < d; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * Real(i);
  auto f = [&](int i) { return fact[static_cast<std::size_t>(i)]; };

  const C pref = std::exp(q.c0);
  MatrixC<Real> out(d, d);
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      C acc(0);
      for (int l = 0; l <= std::min(j, k); ++l)
        acc += detail::ipow(w, l) / f(l) * detail::ipow(q.c1, j - l) / f(j - l) *
               detail::ipow(q.c2, k - l) / f(k - l);
      out(k, j) = pref * std::sqrt(f(k) * f(j)) * acc;
    }
  }
  return out;
}

/// Gaussian-route dual image of |mu><mu|, truncated to d.
template <typename Real>
MatrixC<Real> dual_coherent_projector(const LossChannel<Real>& ch, std::complex<Real> mu, int d) {
  return fock_from_q(dual_coherent_q(ch, mu), d);
}

/// (1/pi) <alpha|M|alpha> with the coherent ket truncated to M's dimension.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
q_function(const Eigen::MatrixBase<Derived>& m,
           std::complex<typename Eigen::NumTraits<typename Derived::Scalar>::Real> alpha) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (!is_hermitian(m)) throw std::invalid_argument("q_function: input is not Hermitian");
  const VectorC<Real> ket = coherent_ket<Real>(alpha, static_cast<int>(m.rows()));
  const std::complex<Real> v = ket.dot(m.template cast<std::complex<Real>>() * ket);
  return v.real() / std::numbers::pi_v<Real>;
}

}  // namespace lossjm

#endif  // LOSSJM_LOSS_HPP
