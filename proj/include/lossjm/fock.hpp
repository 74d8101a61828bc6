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

// Fock-space primitives: truncated coherent states, multimode indexing,
// beam-splitter and linear-optical-network unitaries in the photon-number
// basis, unitary completion of a transfer-matrix row, positivity checks.
//
// Transfer-matrix convention: an m-mode network with transfer matrix U maps
// coherent amplitudes as beta_k = sum_j U(j, k) alpha_j, equivalently
// a_j^dagger -> sum_k U(j, k) b_k^dagger. Row j describes where input mode j
// goes. This is the transpose of the other common convention.

#ifndef LOSSJM_FOCK_HPP
#define LOSSJM_FOCK_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lossjm/types.hpp"

namespace lossjm {

/// Single-mode cutoff `d` (states |0>..|d-1>) applied to each of `modes`
/// modes. Multimode states are indexed lexicographically by occupation tuple,
/// mode 0 most significant.
struct FockCutoff {
  int d = 1;
  int modes = 1;

  static constexpr int kMaxModes = 4;

  std::size_t dimension() const {
    std::size_t n = 1;
    for (int i = 0; i < modes; ++i) n *= static_cast<std::size_t>(d);
    return n;
  }

  void validate() const {
    if (d < 1) throw std::invalid_argument("FockCutoff: d must be >= 1");
    if (modes < 1 || modes > kMaxModes)
      throw std::invalid_argument("FockCutoff: modes must be in [1, 4], got " +
                                  std::to_string(modes));
  }
};

inline std::size_t fock_index(std::span<const int> occupation, const FockCutoff& c) {
  if (static_cast<int>(occupation.size()) != c.modes)
    throw std::invalid_argument("fock_index: occupation arity does not match cutoff");
  std::size_t idx = 0;
  for (int n : occupation) {
    if (n < 0 || n >= c.d) throw std::out_of_range("fock_index: occupation outside cutoff");
    idx = idx * static_cast<std::size_t>(c.d) + static_cast<std::size_t>(n);
  }
  return idx;
}

inline std::vector<int> fock_occupation(std::size_t index, const FockCutoff& c) {
  if (index >= c.dimension()) throw std::out_of_range("fock_occupation: index out of range");
  std::vector<int> occ(static_cast<std::size_t>(c.modes));
  for (int k = c.modes - 1; k >= 0; --k) {
    occ[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(c.d));
    index /= static_cast<std::size_t>(c.d);
  }
  return occ;
}

inline int total_photons(std::size_t index, const FockCutoff& c) {
  int total = 0;
  for (int n : fock_occupation(index, c)) total += n;
  return total;
}

namespace detail {

// x^k with 0^0 = 1, for real or complex x.
template <typename T>
T ipow(T x, int k) {
  T r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

template <typename Real>
Real sqrt_factorial(int n) {
  Real r(1);
  for (int k = 2; k <= n; ++k) r *= std::sqrt(Real(k));
  return r;
}

template <typename Real>
Real binomial(int n, int k) {
  if (k < 0 || k > n) return Real(0);
  Real r(1);
  for (int i = 1; i <= k; ++i) r = r * Real(n - k + i) / Real(i);
  return r;
}

}  // namespace detail

/// Truncated coherent ket: amplitudes exp(-|mu|^2/2) mu^m / sqrt(m!) for m < d.
template <typename Real>
VectorC<Real> coherent_ket(std::complex<Real> mu, const FockCutoff& cutoff) {
  cutoff.validate();
  if (cutoff.modes != 1) throw std::invalid_argument("coherent_ket: single-mode cutoff required");
  VectorC<Real> ket(cutoff.d);
  ket(0) = std::exp(-std::norm(mu) / Real(2));
  for (int m = 1; m < cutoff.d; ++m) ket(m) = ket(m - 1) * mu / std::sqrt(Real(m));
  return ket;
}

template <typename Real>
VectorC<Real> coherent_ket(std::complex<Real> mu, int d) {
  return coherent_ket<Real>(mu, FockCutoff{d, 1});
}

/// <a|b>, conjugate-linear in `a`.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar overlap(const Eigen::MatrixBase<DerivedA>& a,
                                  const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap: dimension mismatch");
  return a.dot(b);
}

/// Two-mode beam splitter with transfer [[sqrt(eta), sqrt(1-eta)],
/// [-sqrt(1-eta), sqrt(eta)]] on the full d x d occupation grid. Blocks of
/// total photon number N < d are complete and exactly unitary; higher blocks
/// are truncations of the exact operator.
template <typename Real>
MatrixC<Real> bs_unitary(Real eta, const FockCutoff& cutoff) {
  cutoff.validate();
  if (cutoff.modes != 2) throw std::invalid_argument("bs_unitary: two-mode cutoff required");
  if (!(eta >= Real(0) && eta <= Real(1)))
    throw std::invalid_argument("bs_unitary: eta must lie in [0, 1]");
  const int d = cutoff.d;
  const Real t = std::sqrt(eta);
  const Real s = std::sqrt(Real(1) - eta);
  const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
  MatrixC<Real> u = MatrixC<Real>::Zero(dim, dim);
  for (int n1 = 0; n1 < d; ++n1) {
    for (int n2 = 0; n2 < d; ++n2) {
      const Real in_norm = detail::sqrt_factorial<Real>(n1) * detail::sqrt_factorial<Real>(n2);
      const auto col = static_cast<Eigen::Index>(n1 * d + n2);
      // a1^dag -> t b1^dag + s b2^dag,  a2^dag -> s b1^dag - t b2^dag.
      for (int i = 0; i <= n1; ++i) {
        for (int k = 0; k <= n2; ++k) {
          const int p = i + k;
          const int q = n1 + n2 - p;
          if (p >= d || q >= d) continue;
          const Real coeff = detail::binomial<Real>(n1, i) * detail::binomial<Real>(n2, k) *
                             detail::ipow(t, i) * detail::ipow(s, n1 - i) * detail::ipow(-s, k) *
                             detail::ipow(t, n2 - k);
          const Real out_norm = detail::sqrt_factorial<Real>(p) * detail::sqrt_factorial<Real>(q);
          u(static_cast<Eigen::Index>(p * d + q), col) += coeff * out_norm / in_norm;
        }
      }
    }
  }
  return u;
}

template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
unitarity_residual(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat g = u * u.adjoint() - Mat::Identity(u.rows(), u.rows());
  return max_abs(g);
}

/// Fock-basis unitary of the network with the given transfer matrix, built
/// column by column: |n> = a_j^dag |n - e_j> / sqrt(n_j) with j the last
/// occupied input mode. Amplitudes on the grid are exact, since creation
/// operators only raise occupations.
template <typename Derived>
MatrixC<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
lon_unitary(const Eigen::MatrixBase<Derived>& transfer, const FockCutoff& cutoff) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  cutoff.validate();
  const int m = cutoff.modes;
  if (transfer.rows() != m || transfer.cols() != m)
    throw std::invalid_argument("lon_unitary: transfer must be modes x modes");
  const MatrixC<Real> t = transfer.template cast<std::complex<Real>>();
  if (unitarity_residual(t) > Real(1e-10))
    throw std::invalid_argument("lon_unitary: transfer matrix is not unitary");

  const std::size_t dim = cutoff.dimension();
  const auto edim = static_cast<Eigen::Index>(dim);
  MatrixC<Real> u = MatrixC<Real>::Zero(edim, edim);
  u(0, 0) = Real(1);

  std::vector<std::size_t> stride(static_cast<std::size_t>(m));
  {
    std::size_t st = 1;
    for (int k = m - 1; k >= 0; --k) {
      stride[static_cast<std::size_t>(k)] = st;
      st *= static_cast<std::size_t>(cutoff.d);
    }
  }

  std::vector<int> occ_table(dim * static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < dim; ++i) {
    const std::vector<int> o = fock_occupation(i, cutoff);
    std::copy(o.begin(), o.end(), occ_table.begin() + static_cast<std::ptrdiff_t>(i * m));
  }
  auto occ_of = [&](std::size_t i, int k) { return occ_table[i * m + static_cast<std::size_t>(k)]; };

  // Lexicographic order visits |n - e_j> before |n>.
  for (std::size_t col = 1; col < dim; ++col) {
    int j = m - 1;
    while (occ_of(col, j) == 0) --j;
    const std::size_t src = col - stride[static_cast<std::size_t>(j)];
    const Real scale = Real(1) / std::sqrt(Real(occ_of(col, j)));
    for (std::size_t out = 0; out < dim; ++out) {
      std::complex<Real> amp(0);
      for (int k = 0; k < m; ++k) {
        const int ok = occ_of(out, k);
        if (ok == 0) continue;
        const std::complex<Real> tjk = t(j, k);
        if (tjk == std::complex<Real>(0)) continue;
        amp += tjk * std::sqrt(Real(ok)) *
               u(static_cast<Eigen::Index>(out - stride[static_cast<std::size_t>(k)]),
                 static_cast<Eigen::Index>(src));
      }
      u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(col)) = amp * scale;
    }
  }
  return u;
}

/// Completes a transfer-matrix row with sum |row_k|^2 <= 1 to a unitary. When
/// the row has a norm deficit an extra mode absorbs it, so the result is
/// (n+1) x (n+1). The first n entries of row 0 are the input, unchanged.
/// Throws std::domain_error when sum |row_k|^2 > 1: no network has such a row.
template <typename Derived>
MatrixC<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
complete_unitary(const Eigen::MatrixBase<Derived>& row) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using C = std::complex<Real>;
  const Eigen::Index n = row.size();
  if (n == 0) throw std::invalid_argument("complete_unitary: empty row");
  const VectorC<Real> r = row.template cast<C>();
  const Real norm2 = r.squaredNorm();
  if (norm2 > Real(1) + Real(1e-12))
    throw std::domain_error(
        "complete_unitary: squared row norm exceeds 1; these loss channels cannot be "
        "single-mode marginals of one network");
  const Real deficit = Real(1) - norm2;
  const bool extend = deficit > Real(1e-12);
  const Eigen::Index m = extend ? n + 1 : n;

  MatrixC<Real> u = MatrixC<Real>::Zero(m, m);
  u.row(0).head(n) = r.transpose();
  if (extend) u(0, n) = std::sqrt(deficit);

  // Gram-Schmidt over the standard basis; the projection uses the normalized
  // first row, the stored first row stays bit-exact.
  std::vector<VectorC<Real>> basis;
  basis.push_back(u.row(0).transpose() / u.row(0).norm());
  for (Eigen::Index i = 0; i < m && static_cast<Eigen::Index>(basis.size()) < m; ++i) {
    VectorC<Real> w = VectorC<Real>::Unit(m, i);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    const Real len = w.norm();
    if (len < Real(1e-6)) continue;
    basis.push_back(w / len);
  }
  for (Eigen::Index k = 1; k < m; ++k) u.row(k) = basis[static_cast<std::size_t>(k)].transpose();
  return u;
}

/// max(0, -lambda_min(M)) for Hermitian M.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
psd_residual(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (!is_hermitian(m)) throw std::invalid_argument("psd_residual: input is not Hermitian");
  if (m.size() == 0) return Real(0);
  const Mat h = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return std::max(Real(0), -es.eigenvalues()(0));
}

/// diag(1, e^{i phi}, e^{2 i phi}, ...): the phase-space rotation by phi.
template <typename Real>
MatrixC<Real> phase_rotation(Real phi, int d) {
  MatrixC<Real> u = MatrixC<Real>::Zero(d, d);
  for (int k = 0; k < d; ++k) u(k, k) = std::polar(Real(1), phi * Real(k));
  return u;
}

}  // namespace lossjm

#endif  // LOSSJM_FOCK_HPP
