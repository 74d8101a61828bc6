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

// Parent measurements built from a linear-optical network. The signal enters
// input mode 0, the other inputs are vacuum, and measurement j acts on output
// mode j. With transfer row (sqrt(tau_0), ..., sqrt(tau_{n-1})) the marginal of
// measurement j is the dual loss image of M^j at transmissivity tau_j.

#ifndef LOSSJM_PARENT_HPP
#define LOSSJM_PARENT_HPP

#include <vector>

#include "lossjm/compat.hpp"
#include "lossjm/measurements.hpp"
#include "lossjm/types.hpp"

namespace lossjm {

struct LonParentSpec {
  int n = 2;
  int d = 2;
  /// sqrt(tau_k), one per measurement; must be non-negative with sum tau_k <= 1.
  std::vector<double> first_row;
  /// Extra loss applied to every parent element, in (0, 1].
  double eta = 1;

  /// first_row = (1/sqrt(n), ..., 1/sqrt(n)).
  static LonParentSpec balanced(int n, int d, double eta = 1);

  std::vector<double> taus() const;
};

/// G_a = E*_eta(<0..0| U^dagger (M^0_{a_0} x ... x M^{n-1}_{a_{n-1}} x I) U |0..0>).
/// A row of unit norm with n = 2 uses the beam splitter directly; otherwise the
/// row is completed to a unitary, with one extra traced-out mode when its norm
/// is below 1.
/// Throws std::domain_error when sum tau_k > 1 and std::invalid_argument for
/// n outside [1, 3], mismatched sizes or eta outside (0, 1].
ParentPovm lon_parent(const MeasurementSet& set, const LonParentSpec& spec);

/// max_{j,b} ||marginal(parent, j)_b - E*_{tau_j eta}(M^j_b)||_max, with the
/// right-hand side evaluated elementwise through the Kraus route.
double verify_marginal_identity(const MeasurementSet& set, const LonParentSpec& spec);

struct BalancedCertificate {
  MeasurementSet lossy_set;  ///< E*_{eta/n}(M^j)
  ParentPovm parent;
  double marginal_residual = 0;
  double psd_residual = 0;

  bool certified(double tol = 1e-10) const { return marginal_residual <= tol && psd_residual <= tol; }
};

/// Compatibility certificate for the set after loss eta/n, from the balanced
/// network. No optimization is involved.
BalancedCertificate certify_balanced(const MeasurementSet& set, double eta = 1);

}  // namespace lossjm

#endif  // LOSSJM_PARENT_HPP
