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

#ifndef LOSSJM_SRC_COMPAT_PROBLEM_HPP
#define LOSSJM_SRC_COMPAT_PROBLEM_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "lossjm/compat.hpp"

namespace lossjm::detail {

/// Problem shape with zero elements removed. Outcome b of reduced measurement j
/// is outcome kept[j][b] of the input.
struct JmProblem {
  int d = 0;
  int n = 0;
  std::vector<int> radix;
  std::vector<std::vector<int>> kept;
  std::vector<int> original_radix;
  std::vector<std::vector<CMatrix>> m;
  /// tr(M^j_b) / d.
  std::vector<std::vector<double>> t;
  std::size_t tuples = 0;
  /// digits[a * n + j] = a_j.
  std::vector<int> digits;
  /// Flat (j, b) numbering for the marginal map.
  std::vector<int> offset;
  int marginal_rows = 0;
  /// Pseudo-inverse of L L* restricted to one matrix entry.
  Eigen::MatrixXd gram_pinv;

  int digit(std::size_t a, int j) const { return digits[a * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

/// Validates the set and builds the shape. Throws std::invalid_argument.
JmProblem make_problem(const MeasurementSet& set);

/// Targets of the depolarized set at eta, indexed like JmProblem::m.
std::vector<std::vector<CMatrix>> noisy_targets(const JmProblem& p, double eta);

/// Orthogonal projection onto {X : L(X) = target}, in place.
void project_affine(const JmProblem& p, const std::vector<std::vector<CMatrix>>& target,
                    std::vector<CMatrix>& x);

double marginal_residual(const JmProblem& p, const std::vector<std::vector<CMatrix>>& target,
                         const std::vector<CMatrix>& x);

double min_eigenvalue(const std::vector<CMatrix>& x);

/// Product parent prod_j t_{j, a_j} I, feasible at eta = 0.
std::vector<CMatrix> trivial_parent(const JmProblem& p);

/// Re-inserts zero blocks for removed outcomes.
ParentPovm expand_parent(const JmProblem& p, const std::vector<CMatrix>& x);

struct DykstraOutcome {
  std::vector<CMatrix> parent;  ///< affine iterate
  double marginal_residual = 0;
  double psd_residual = 0;
  int iterations = 0;
  bool converged = false;
};

DykstraOutcome dykstra(const JmProblem& p, const std::vector<std::vector<CMatrix>>& target,
                       double tol, int max_iter);

struct IpmOutcome {
  double eta_lower = 0;
  double eta_upper = 1;
  std::vector<CMatrix> parent;  ///< certifies eta_lower
  int iterations = 0;
};

IpmOutcome interior_point(const JmProblem& p, int max_iter, double gap_tol);

}  // namespace lossjm::detail

#endif  // LOSSJM_SRC_COMPAT_PROBLEM_HPP
