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

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "compat/problem.hpp"

namespace lossjm::detail {

namespace {

void project_psd(CMatrix& x, Eigen::SelfAdjointEigenSolver<CMatrix>& es) {
  es.compute((x + x.adjoint()) / 2.0);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev(0) >= 0) {
    x = (x + x.adjoint()).eval() / 2.0;
    return;
  }
  const Eigen::VectorXd clipped = ev.cwiseMax(0.0);
  x = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DykstraOutcome dykstra(const JmProblem& p, const std::vector<std::vector<CMatrix>>& target,
                       double tol, int max_iter) {
  const CMatrix zero = CMatrix::Zero(p.d, p.d);
  std::vector<CMatrix> x(p.tuples, zero);
  std::vector<CMatrix> q(p.tuples, zero);
  std::vector<CMatrix> y;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(p.d);

  DykstraOutcome out;
  for (int it = 1; it <= max_iter; ++it) {
    // The affine set needs no correction term: its normal space is fixed.
    y = x;
    project_affine(p, target, y);
    for (std::size_t a = 0; a < p.tuples; ++a) {
      CMatrix z = y[a] + q[a];
      project_psd(z, es);
      q[a] += y[a] - z;
      x[a] = std::move(z);
    }
    out.iterations = it;
    out.psd_residual = std::max(0.0, -min_eigenvalue(y));
    if (out.psd_residual <= tol) {
      out.marginal_residual = marginal_residual(p, target, y);
      if (out.marginal_residual <= tol) {
        out.converged = true;
        break;
      }
    }
  }
  if (!out.converged) out.marginal_residual = marginal_residual(p, target, y);
  out.parent = std::move(y);
  return out;
}

}  // namespace lossjm::detail
