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

#ifndef LOSSJM_MEASUREMENTS_HPP
#define LOSSJM_MEASUREMENTS_HPP

#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lossjm/loss.hpp"
#include "lossjm/types.hpp"

namespace lossjm {

/// One measurement: Hermitian PSD elements summing to the identity.
struct Povm {
  std::vector<CMatrix> elements;

  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements.front().rows()); }
  std::size_t outcomes() const { return elements.size(); }
  const CMatrix& operator[](std::size_t a) const { return elements[a]; }
};

struct PovmValidity {
  double psd_residual = 0;   ///< max over elements of max(0, -lambda_min)
  double sum_residual = 0;   ///< ||sum_a M_a - I||_max
  double hermiticity = 0;    ///< max over elements of ||M - M^dagger||_max

  bool ok(double tol = kPsdTol) const {
    return psd_residual <= tol && sum_residual <= tol && hermiticity <= kHermitianTol;
  }
};

PovmValidity check_povm(const Povm& p);

/// Measurements sharing one Hilbert-space dimension.
struct MeasurementSet {
  std::vector<Povm> povms;

  int dim() const { return povms.empty() ? 0 : povms.front().dim(); }
  std::size_t size() const { return povms.size(); }
  const Povm& operator[](std::size_t j) const { return povms[j]; }
};

/// Throws std::invalid_argument unless the set is non-empty, every POVM has at
/// least one element and all elements are square of one common dimension.
void validate_shape(const MeasurementSet& set);

/// {|mu><mu|, Pi_d - |mu><mu|} with the projector truncated to d.
Povm displaced_onoff(cplx mu, int d);

/// Parameters of the symmetric family mu_k = r e^{2 pi i k / count}, k = 0..count-1,
/// seen through a loss channel of transmissivity tau, truncated to d.
struct DisplacedFamilyParams {
  int count = 1;
  double r = 0;
  double tau = 1;
  int d = 2;

  cplx amplitude(int k) const;
};

MeasurementSet symmetric_family(const DisplacedFamilyParams& p);

/// Dual loss image of each element. The last element of each POVM is formed as
/// I minus the others, so the images sum to I exactly.
Povm apply_dual(const LossChannel<double>& ch, const Povm& p);
MeasurementSet apply_dual(const LossChannel<double>& ch, const MeasurementSet& set);

/// Leading d_sub x d_sub block of every element.
MeasurementSet project_set(const MeasurementSet& set, int d_sub);

/// Two-outcome qubit measurement A_pm = (1/2)[(1 pm gamma) I pm m.sigma].
struct QubitMeasurementParams {
  double gamma = 0;
  Eigen::Vector3d m = Eigen::Vector3d::Zero();
};

/// Pauli order x, y, z. Reads A_+ = elements[0].
QubitMeasurementParams bloch_params(const Povm& p);
Povm from_bloch(const QubitMeasurementParams& q);

/// Conjugates every element by U: M -> U M U^dagger.
Povm conjugate(const Povm& p, const CMatrix& u);
MeasurementSet conjugate(const MeasurementSet& set, const CMatrix& u);

/// Haar-random unit ket of dimension d (complex Gaussian, normalized).
CVector random_ket(int d, std::mt19937_64& rng);

/// Two-outcome POVM {w P + (1-w) c I, complement} with P a Haar-random rank-1
/// projector and w, c uniform on [0, 1].
Povm random_two_outcome_povm(int d, std::mt19937_64& rng);
MeasurementSet random_measurement_set(int n, int d, std::mt19937_64& rng);

}  // namespace lossjm

#endif  // LOSSJM_MEASUREMENTS_HPP
