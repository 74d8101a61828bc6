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

#include "compat/problem.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace lossjm::detail {

namespace {

constexpr double kZeroElement = 1e-14;
constexpr double kSumTol = 1e-8;

}  // namespace

JmProblem make_problem(const MeasurementSet& set) {
  validate_shape(set);
  JmProblem p;
  p.d = set.dim();
  p.n = static_cast<int>(set.size());
  if (p.d > kMaxCompatDim)
    throw std::invalid_argument("compat: dimension " + std::to_string(p.d) + " exceeds " +
                                std::to_string(kMaxCompatDim));
  const CMatrix id = CMatrix::Identity(p.d, p.d);
  p.radix.resize(static_cast<std::size_t>(p.n));
  p.kept.resize(static_cast<std::size_t>(p.n));
  p.m.resize(static_cast<std::size_t>(p.n));
  p.t.resize(static_cast<std::size_t>(p.n));
  p.original_radix.resize(static_cast<std::size_t>(p.n));

  std::size_t tuples = 1;
  for (int j = 0; j < p.n; ++j) {
    const Povm& povm = set[static_cast<std::size_t>(j)];
    const auto ju = static_cast<std::size_t>(j);
    p.original_radix[ju] = static_cast<int>(povm.outcomes());
    CMatrix sum = CMatrix::Zero(p.d, p.d);
    for (std::size_t b = 0; b < povm.outcomes(); ++b) {
      const CMatrix& e = povm[b];
      if (!is_hermitian(e, 1e-10))
        throw std::invalid_argument("compat: element " + std::to_string(b) + " of measurement " +
                                    std::to_string(j) + " is not Hermitian");
      sum += e;
      if (max_abs(e) <= kZeroElement) continue;
      const CMatrix h = (e + e.adjoint()) / 2.0;
      p.kept[ju].push_back(static_cast<int>(b));
      p.t[ju].push_back(h.trace().real() / p.d);
      p.m[ju].push_back(h);
    }
    if (max_abs(CMatrix(sum - id)) > kSumTol)
      throw std::invalid_argument("compat: measurement " + std::to_string(j) +
                                  " does not sum to the identity");
    p.radix[ju] = static_cast<int>(p.kept[ju].size());
    if (p.radix[ju] == 0) throw std::invalid_argument("compat: measurement with no nonzero element");
    tuples *= static_cast<std::size_t>(p.original_radix[ju]);
    if (tuples > kMaxOutcomeTuples) throw std::invalid_argument("compat: too many outcome tuples");
  }

  p.tuples = 1;
  for (int k : p.radix) p.tuples *= static_cast<std::size_t>(k);
  p.digits.assign(p.tuples * static_cast<std::size_t>(p.n), 0);
  for (std::size_t a = 0; a < p.tuples; ++a) {
    std::size_t rest = a;
    for (int j = p.n - 1; j >= 0; --j) {
      const auto k = static_cast<std::size_t>(p.radix[static_cast<std::size_t>(j)]);
      p.digits[a * static_cast<std::size_t>(p.n) + static_cast<std::size_t>(j)] =
          static_cast<int>(rest % k);
      rest /= k;
    }
  }

  p.offset.resize(static_cast<std::size_t>(p.n));
  int rows = 0;
  for (int j = 0; j < p.n; ++j) {
    p.offset[static_cast<std::size_t>(j)] = rows;
    rows += p.radix[static_cast<std::size_t>(j)];
  }
  p.marginal_rows = rows;

  // (L L*)_{(j,b),(j',b')} counts tuples with a_j = b and a_j' = b'.
  const double total = static_cast<double>(p.tuples);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(rows, rows);
  for (int j = 0; j < p.n; ++j) {
    const int kj = p.radix[static_cast<std::size_t>(j)];
    for (int jp = 0; jp < p.n; ++jp) {
      const int kjp = p.radix[static_cast<std::size_t>(jp)];
      for (int b = 0; b < kj; ++b) {
        for (int bp = 0; bp < kjp; ++bp) {
          double v = 0;
          if (j == jp)
            v = b == bp ? total / kj : 0.0;
          else
            v = total / (static_cast<double>(kj) * kjp);
          gram(p.offset[static_cast<std::size_t>(j)] + b, p.offset[static_cast<std::size_t>(jp)] + bp) = v;
        }
      }
    }
  }
  p.gram_pinv = gram.completeOrthogonalDecomposition().pseudoInverse();
  return p;
}

std::vector<std::vector<CMatrix>> noisy_targets(const JmProblem& p, double eta) {
  const CMatrix id = CMatrix::Identity(p.d, p.d);
  std::vector<std::vector<CMatrix>> out(p.m.size());
  for (std::size_t j = 0; j < p.m.size(); ++j)
    for (std::size_t b = 0; b < p.m[j].size(); ++b)
      out[j].push_back(eta == 1.0 ? p.m[j][b] : CMatrix(eta * p.m[j][b] + (1 - eta) * p.t[j][b] * id));
  return out;
}

namespace {

std::vector<CMatrix> marginal_defects(const JmProblem& p,
                                      const std::vector<std::vector<CMatrix>>& target,
                                      const std::vector<CMatrix>& x) {
  std::vector<CMatrix> r(static_cast<std::size_t>(p.marginal_rows), CMatrix::Zero(p.d, p.d));
  for (std::size_t a = 0; a < p.tuples; ++a)
    for (int j = 0; j < p.n; ++j)
      r[static_cast<std::size_t>(p.offset[static_cast<std::size_t>(j)] + p.digit(a, j))] += x[a];
  for (int j = 0; j < p.n; ++j)
    for (int b = 0; b < p.radix[static_cast<std::size_t>(j)]; ++b)
      r[static_cast<std::size_t>(p.offset[static_cast<std::size_t>(j)] + b)] -=
          target[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
  return r;
}

}  // namespace

void project_affine(const JmProblem& p, const std::vector<std::vector<CMatrix>>& target,
                    std::vector<CMatrix>& x) {
  const std::vector<CMatrix> r = marginal_defects(p, target, x);
  const auto rows = static_cast<std::size_t>(p.marginal_rows);
  std::vector<CMatrix> lambda(rows, CMatrix::Zero(p.d, p.d));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k) {
      const double g = p.gram_pinv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      if (g != 0.0) lambda[i] += g * r[k];
    }
  for (std::size_t a = 0; a < p.tuples; ++a)
    for (int j = 0; j < p.n; ++j)
      x[a] -= lambda[static_cast<std::size_t>(p.offset[static_cast<std::size_t>(j)] + p.digit(a, j))];
}

double marginal_residual(const JmProblem& p, const std::vector<std::vector<CMatrix>>& target,
                         const std::vector<CMatrix>& x) {
  double worst = 0;
  for (const auto& r : marginal_defects(p, target, x)) worst = std::max(worst, max_abs(r));
  return worst;
}

double min_eigenvalue(const std::vector<CMatrix>& x) {
  double lo = std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMatrix> es;
  for (const auto& g : x) {
    es.compute((g + g.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
  }
  return lo;
}

std::vector<CMatrix> trivial_parent(const JmProblem& p) {
  std::vector<CMatrix> x(p.tuples);
  for (std::size_t a = 0; a < p.tuples; ++a) {
    double w = 1;
    for (int j = 0; j < p.n; ++j)
      w *= p.t[static_cast<std::size_t>(j)][static_cast<std::size_t>(p.digit(a, j))];
    x[a] = w * CMatrix::Identity(p.d, p.d);
  }
  return x;
}

ParentPovm expand_parent(const JmProblem& p, const std::vector<CMatrix>& x) {
  ParentPovm out(p.d, p.original_radix);
  OutcomeTuple t(static_cast<std::size_t>(p.n));
  for (std::size_t a = 0; a < p.tuples; ++a) {
    for (int j = 0; j < p.n; ++j)
      t[static_cast<std::size_t>(j)] = p.kept[static_cast<std::size_t>(j)][static_cast<std::size_t>(p.digit(a, j))];
    out.at(t) = x[a];
  }
  return out;
}

}  // namespace lossjm::detail
