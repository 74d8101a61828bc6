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

#ifndef LOSSJM_TYPES_HPP
#define LOSSJM_TYPES_HPP

#include <algorithm>
#include <complex>

#include <Eigen/Dense>

namespace lossjm {

template <typename Real>
using MatrixC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using VectorC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using CMatrix = MatrixC<double>;
using CVector = VectorC<double>;

/// Absolute tolerance on ‖M − M†‖_max for an operator to count as Hermitian.
inline constexpr double kHermitianTol = 1e-12;
/// Absolute tolerance on −λ_min for positivity checks.
inline constexpr double kPsdTol = 1e-10;

template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Scale-aware: the bound grows with the largest entry once that exceeds 1.
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const Real scale = std::max<Real>(Real(1), m.cwiseAbs().maxCoeff());
  return hermiticity_defect(m) <= Real(tol) * scale;
}

template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace lossjm

#endif  // LOSSJM_TYPES_HPP
