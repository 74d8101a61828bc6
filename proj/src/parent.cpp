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

#include "lossjm/parent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lossjm/fock.hpp"
#include "lossjm/loss.hpp"

namespace lossjm {

LonParentSpec LonParentSpec::balanced(int n, int d, double eta) {
  if (n < 1) throw std::invalid_argument("LonParentSpec: n must be >= 1");
  return LonParentSpec{n, d, std::vector<double>(static_cast<std::size_t>(n), 1.0 / std::sqrt(n)), eta};
}

std::vector<double> LonParentSpec::taus() const {
  std::vector<double> t;
  for (double v : first_row) t.push_back(v * v);
  return t;
}

namespace {

void validate(const MeasurementSet& set, const LonParentSpec& spec) {
  validate_shape(set);
  if (spec.n < 1 || spec.n > 3) throw std::invalid_argument("lon_parent: n must lie in [1, 3]");
  if (static_cast<int>(set.size()) != spec.n)
    throw std::invalid_argument("lon_parent: set size does not match spec.n");
  if (set.dim() != spec.d) throw std::invalid_argument("lon_parent: set dimension does not match spec.d");
  if (static_cast<int>(spec.first_row.size()) != spec.n)
    throw std::invalid_argument("lon_parent: first_row needs one entry per measurement");
  for (double v : spec.first_row)
    if (!(v >= 0)) throw std::invalid_argument("lon_parent: first_row entries must be >= 0");
  if (!(spec.eta > 0 && spec.eta <= 1)) throw std::invalid_argument("lon_parent: eta must lie in (0, 1]");
}

/// Columns U|s, 0, ..., 0> for s < d, restricted to the occupation grid.
CMatrix signal_columns(const LonParentSpec& spec, int& modes) {
  const int d = spec.d;
  Eigen::VectorXd row(spec.n);
  for (int k = 0; k < spec.n; ++k) row(k) = spec.first_row[static_cast<std::size_t>(k)];
  const double norm2 = row.squaredNorm();
  CMatrix u;
  if (spec.n == 2 && std::abs(norm2 - 1) <= 1e-12) {
    modes = 2;
    u = bs_unitary<double>(row(0) * row(0), FockCutoff{d, 2});
  } else {
    const CMatrix transfer = complete_unitary(row);
    modes = static_cast<int>(transfer.rows());
    u = lon_unitary(transfer, FockCutoff{d, modes});
  }
  const FockCutoff c{d, modes};
  CMatrix cols(static_cast<Eigen::Index>(c.dimension()), d);
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  for (int s = 0; s < d; ++s) {
    occ[0] = s;
    cols.col(s) = u.col(static_cast<Eigen::Index>(fock_index(occ, c)));
  }
  return cols;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

ParentPovm lon_parent(const MeasurementSet& set, const LonParentSpec& spec) {
  validate(set, spec);
  int modes = 0;
  const CMatrix cols = signal_columns(spec, modes);
  const int d = spec.d;

  std::vector<int> radix;
  for (const auto& p : set.povms) radix.push_back(static_cast<int>(p.outcomes()));
  ParentPovm parent(d, radix);
  const LossChannel<double> extra(spec.eta);
  const CMatrix traced = CMatrix::Identity(d, d);

  for (std::size_t a = 0; a < parent.size(); ++a) {
    const OutcomeTuple t = parent.tuple(a);
    CMatrix op = set[0][static_cast<std::size_t>(t[0])];
    for (int j = 1; j < modes; ++j)
      op = kron(op, j < spec.n ? set[static_cast<std::size_t>(j)][static_cast<std::size_t>(t[static_cast<std::size_t>(j)])]
                               : traced);
    CMatrix g = cols.adjoint() * op * cols;
    g = (g + g.adjoint()).eval() / 2.0;
    if (spec.eta < 1) g = apply_dual(extra, g);
    parent[a] = std::move(g);
  }
  return parent;
}

double verify_marginal_identity(const MeasurementSet& set, const LonParentSpec& spec) {
  const ParentPovm parent = lon_parent(set, spec);
  const std::vector<double> taus = spec.taus();
  double worst = 0;
  for (int j = 0; j < spec.n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const LossChannel<double> ch(std::min(1.0, taus[ju] * spec.eta));
    const Povm mj = marginal(parent, j);
    for (std::size_t b = 0; b < mj.outcomes(); ++b)
      worst = std::max(worst, max_abs(CMatrix(mj[b] - apply_dual(ch, set[ju][b]))));
  }
  return worst;
}

BalancedCertificate certify_balanced(const MeasurementSet& set, double eta) {
  validate_shape(set);
  const int n = static_cast<int>(set.size());
  const LonParentSpec spec = LonParentSpec::balanced(n, set.dim(), eta);
  BalancedCertificate out;
  out.lossy_set = apply_dual(LossChannel<double>(eta / n), set);
  out.parent = lon_parent(set, spec);
  out.marginal_residual = marginal_residual(out.parent, out.lossy_set);
  out.psd_residual = psd_residual(out.parent);
  return out;
}

}  // namespace lossjm
