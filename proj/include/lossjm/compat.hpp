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

// Joint measurability of a measurement set {M^j}: existence of a parent POVM
// {G_a} indexed by outcome tuples a = (a_0, ..., a_{n-1}) with
//   G_a >= 0  and  sum_{a : a_j = b} G_a = M^j_b  for every j, b.
//
// Robustness uses the depolarized set eta M + (1 - eta) tr(M)/d I.

#ifndef LOSSJM_COMPAT_HPP
#define LOSSJM_COMPAT_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "lossjm/measurements.hpp"
#include "lossjm/types.hpp"

namespace lossjm {

inline constexpr int kMaxCompatDim = 8;
inline constexpr std::size_t kMaxOutcomeTuples = std::size_t{1} << 16;

using OutcomeTuple = std::vector<int>;

/// Dense parent indexed in mixed radix, measurement 0 most significant.
class ParentPovm {
 public:
  ParentPovm() = default;
  ParentPovm(int dim, std::vector<int> outcome_counts);

  int dim() const { return dim_; }
  int arity() const { return static_cast<int>(radix_.size()); }
  const std::vector<int>& outcome_counts() const { return radix_; }
  std::size_t size() const { return elements_.size(); }

  std::size_t index(const OutcomeTuple& t) const;
  OutcomeTuple tuple(std::size_t index) const;

  CMatrix& operator[](std::size_t i) { return elements_[i]; }
  const CMatrix& operator[](std::size_t i) const { return elements_[i]; }
  CMatrix& at(const OutcomeTuple& t) { return elements_[index(t)]; }
  const CMatrix& at(const OutcomeTuple& t) const { return elements_[index(t)]; }

  std::vector<CMatrix>& elements() { return elements_; }
  const std::vector<CMatrix>& elements() const { return elements_; }

 private:
  int dim_ = 0;
  std::vector<int> radix_;
  std::vector<CMatrix> elements_;
};

/// Sum of parent elements over every index except j.
Povm marginal(const ParentPovm& parent, int j);

/// max_{j,b} ||marginal(parent, j)_b - M^j_b||_max.
double marginal_residual(const ParentPovm& parent, const MeasurementSet& set);

/// max_a max(0, -lambda_min(G_a)) over the Hermitian parts.
double psd_residual(const ParentPovm& parent);

/// eta M + (1 - eta) tr(M)/d I, elementwise.
MeasurementSet depolarize(const MeasurementSet& set, double eta);

enum class Verdict { kCompatible, kIncompatible, kUndetermined };

std::string_view to_string(Verdict v);

struct JmResult {
  bool feasible = false;
  /// Largest noise weight at which a parent was exhibited (certified lower bound).
  double eta_star = 0;
  /// Certified upper bound on the robustness (interior point), or the smallest
  /// undetermined bisection probe (bisection, not a certificate).
  double eta_upper = 1;
  Verdict verdict = Verdict::kUndetermined;
  double marginal_residual = 0;
  double psd_residual = 0;
  int iterations = 0;
  std::optional<ParentPovm> parent;
};

/// Dykstra alternating projections between the PSD product cone and the
/// marginal affine subspace, starting at zero with a fixed sweep order.
/// Reports feasible when both residuals of the affine iterate are <= tol, and
/// "not determined" (feasible = false) otherwise. Never certifies infeasibility.
/// Throws std::invalid_argument for inconsistent sets, dim > 8, or more than
/// 2^16 outcome tuples.
JmResult jm_feasibility(const MeasurementSet& set, double tol = 1e-9, int max_iter = 20000);

enum class RobustnessMethod { kInteriorPoint, kBisection };

struct RobustnessOptions {
  RobustnessMethod method = RobustnessMethod::kInteriorPoint;
  /// Incompatible iff eta_upper < 1 - margin; compatible iff eta_star >= 1 - margin.
  double margin = 1e-6;
  /// Bisection only.
  double bisection_width = 1e-4;
  double feasibility_tol = 1e-9;
  int feasibility_max_iter = 20000;
  /// Interior point only.
  int ipm_max_iter = 120;
  double ipm_gap_tol = 1e-13;
};

/// eta* = sup{eta in [0, 1] : depolarize(set, eta) is jointly measurable}.
/// The interior-point route returns a certified bracket [eta_star, eta_upper]:
/// eta_star comes with an explicit parent, eta_upper with a dual witness.
JmResult robustness(const MeasurementSet& set, const RobustnessOptions& opt = {});

struct TableRowVerdict {
  DisplacedFamilyParams params;
  int d_sub = 0;
  JmResult result;
  double seconds = 0;
};

/// Builds the family, projects to d_sub and runs robustness.
TableRowVerdict decide_table_row(const DisplacedFamilyParams& p, int d_sub,
                                 const RobustnessOptions& opt = {});

}  // namespace lossjm

#endif  // LOSSJM_COMPAT_HPP
