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

#include "lossjm/compat.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "compat/problem.hpp"
#include "lossjm/fock.hpp"

namespace lossjm {

ParentPovm::ParentPovm(int dim, std::vector<int> outcome_counts)
    : dim_(dim), radix_(std::move(outcome_counts)) {
  std::size_t total = 1;
  for (int k : radix_) {
    if (k < 1) throw std::invalid_argument("ParentPovm: outcome counts must be positive");
    total *= static_cast<std::size_t>(k);
  }
  elements_.assign(total, CMatrix::Zero(dim, dim));
}

std::size_t ParentPovm::index(const OutcomeTuple& t) const {
  if (t.size() != radix_.size()) throw std::out_of_range("ParentPovm: tuple arity mismatch");
  std::size_t i = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] < 0 || t[j] >= radix_[j]) throw std::out_of_range("ParentPovm: outcome out of range");
    i = i * static_cast<std::size_t>(radix_[j]) + static_cast<std::size_t>(t[j]);
  }
  return i;
}

OutcomeTuple ParentPovm::tuple(std::size_t index) const {
  if (index >= elements_.size()) throw std::out_of_range("ParentPovm: index out of range");
  OutcomeTuple t(radix_.size());
  for (std::size_t j = radix_.size(); j-- > 0;) {
    const auto k = static_cast<std::size_t>(radix_[j]);
    t[j] = static_cast<int>(index % k);
    index /= k;
  }
  return t;
}

Povm marginal(const ParentPovm& parent, int j) {
  if (j < 0 || j >= parent.arity()) throw std::out_of_range("marginal: measurement index out of range");
  const auto ju = static_cast<std::size_t>(j);
  Povm out;
  out.elements.assign(static_cast<std::size_t>(parent.outcome_counts()[ju]),
                      CMatrix::Zero(parent.dim(), parent.dim()));
  for (std::size_t a = 0; a < parent.size(); ++a)
    out.elements[static_cast<std::size_t>(parent.tuple(a)[ju])] += parent[a];
  return out;
}

double marginal_residual(const ParentPovm& parent, const MeasurementSet& set) {
  if (static_cast<std::size_t>(parent.arity()) != set.size())
    throw std::invalid_argument("marginal_residual: arity does not match the set");
  double worst = 0;
  for (int j = 0; j < parent.arity(); ++j) {
    const Povm mj = marginal(parent, j);
    const Povm& target = set[static_cast<std::size_t>(j)];
    if (mj.outcomes() != target.outcomes())
      throw std::invalid_argument("marginal_residual: outcome count mismatch");
    for (std::size_t b = 0; b < mj.outcomes(); ++b)
      worst = std::max(worst, max_abs(CMatrix(mj[b] - target[b])));
  }
  return worst;
}

double psd_residual(const ParentPovm& parent) {
  double worst = 0;
  for (const auto& g : parent.elements())
    worst = std::max(worst, lossjm::psd_residual(CMatrix((g + g.adjoint()) / 2.0)));
  return worst;
}

MeasurementSet depolarize(const MeasurementSet& set, double eta) {
  validate_shape(set);
  const int d = set.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  MeasurementSet out;
  for (const auto& p : set.povms) {
    Povm q;
    for (const auto& e : p.elements) q.elements.push_back(eta * e + (1 - eta) * (e.trace().real() / d) * id);
    out.povms.push_back(std::move(q));
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kCompatible: return "COMPATIBLE";
    case Verdict::kIncompatible: return "INCOMPATIBLE";
    case Verdict::kUndetermined: return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

JmResult jm_feasibility(const MeasurementSet& set, double tol, int max_iter) {
  const detail::JmProblem p = detail::make_problem(set);
  detail::DykstraOutcome run = detail::dykstra(p, p.m, tol, max_iter);
  JmResult r;
  r.parent = detail::expand_parent(p, run.parent);
  r.marginal_residual = marginal_residual(*r.parent, set);
  r.psd_residual = psd_residual(*r.parent);
  r.iterations = run.iterations;
  r.feasible = r.marginal_residual <= tol && r.psd_residual <= tol;
  r.eta_star = r.feasible ? 1.0 : 0.0;
  r.eta_upper = 1.0;
  r.verdict = r.feasible ? Verdict::kCompatible : Verdict::kUndetermined;
  return r;
}

namespace {

Verdict decide(double lower, double upper, double margin) {
  if (upper < 1 - margin) return Verdict::kIncompatible;
  if (lower >= 1 - margin) return Verdict::kCompatible;
  return Verdict::kUndetermined;
}

JmResult robustness_bisection(const MeasurementSet& set, const detail::JmProblem& p,
                              const RobustnessOptions& opt) {
  JmResult r;
  double lo = 0;
  double hi = 1;
  std::vector<CMatrix> best = detail::trivial_parent(p);
  auto probe = [&](double eta) {
    detail::DykstraOutcome run =
        detail::dykstra(p, detail::noisy_targets(p, eta), opt.feasibility_tol, opt.feasibility_max_iter);
    r.iterations += run.iterations;
    if (run.converged) best = std::move(run.parent);
    return run.converged;
  };
  if (probe(1.0)) {
    lo = 1.0;
  } else {
    while (hi - lo > opt.bisection_width) {
      const double mid = (lo + hi) / 2;
      if (probe(mid))
        lo = mid;
      else
        hi = mid;
    }
  }
  r.eta_star = lo;
  r.eta_upper = hi;
  r.parent = detail::expand_parent(p, best);
  r.marginal_residual = marginal_residual(*r.parent, depolarize(set, lo));
  r.psd_residual = psd_residual(*r.parent);
  return r;
}

JmResult robustness_interior_point(const MeasurementSet& set, const detail::JmProblem& p,
                                   const RobustnessOptions& opt) {
  detail::IpmOutcome run = detail::interior_point(p, opt.ipm_max_iter, opt.ipm_gap_tol);
  JmResult r;
  r.eta_star = run.eta_lower;
  r.eta_upper = std::max(run.eta_upper, run.eta_lower);
  r.iterations = run.iterations;
  r.parent = detail::expand_parent(p, run.parent);
  r.marginal_residual = marginal_residual(*r.parent, depolarize(set, r.eta_star));
  r.psd_residual = psd_residual(*r.parent);
  return r;
}

}  // namespace

JmResult robustness(const MeasurementSet& set, const RobustnessOptions& opt) {
  const detail::JmProblem p = detail::make_problem(set);
  JmResult r = opt.method == RobustnessMethod::kBisection ? robustness_bisection(set, p, opt)
                                                          : robustness_interior_point(set, p, opt);
  r.verdict = decide(r.eta_star, r.eta_upper, opt.margin);
  r.feasible = r.verdict == Verdict::kCompatible;
  return r;
}

TableRowVerdict decide_table_row(const DisplacedFamilyParams& p, int d_sub,
                                 const RobustnessOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  TableRowVerdict out;
  out.params = p;
  out.d_sub = d_sub;
  out.result = robustness(project_set(symmetric_family(p), d_sub), opt);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace lossjm
