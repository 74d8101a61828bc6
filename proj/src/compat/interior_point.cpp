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

// Primal-dual path following (HKM direction, Mehrotra predictor-corrector) for
//
//   max eta  s.t.  sum_{a_j = b} G_a - eta (M^j_b - t^j_b I) = t^j_b I,
//                  eta + s = 1,  G_a >= 0,  eta, s >= 0,
//
// in standard form min c.x, A x = b. Hermitian blocks are expressed in an
// orthonormal real basis of d^2 coordinates. One marginal row per measurement
// (beyond the first) is implied by the others and dropped.
//
// Every iterate is turned into a certified bracket:
//  - lower: project G onto the marginal subspace at eta, then mix with the
//    product parent until PSD;
//  - upper: weak duality with the dual slack's negative part bounded through
//    sum_a tr G_a = d, eta <= 1, s <= 1.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "compat/problem.hpp"

namespace lossjm::detail {

namespace {

class HermitianBasis {
 public:
  explicit HermitianBasis(int d) : d_(d), size_(d * d) {
    for (int c = 0; c < size_; ++c) {
      CMatrix e = hmat(Eigen::VectorXd::Unit(size_, c));
      basis_.push_back(std::move(e));
    }
  }

  int size() const { return size_; }
  const CMatrix& operator[](int c) const { return basis_[static_cast<std::size_t>(c)]; }

  /// Re tr(E_c W) for every basis element; the coordinates of (W + W^dagger)/2.
  Eigen::VectorXd hvec(const CMatrix& w) const {
    Eigen::VectorXd v(size_);
    int c = 0;
    for (int i = 0; i < d_; ++i) v(c++) = w(i, i).real();
    for (int i = 0; i < d_; ++i) {
      for (int j = i + 1; j < d_; ++j) {
        v(c++) = (w(i, j).real() + w(j, i).real()) * kInvSqrt2;
        v(c++) = (w(j, i).imag() - w(i, j).imag()) * kInvSqrt2;
      }
    }
    return v;
  }

  template <typename Derived>
  CMatrix hmat(const Eigen::MatrixBase<Derived>& v) const {
    CMatrix m = CMatrix::Zero(d_, d_);
    int c = 0;
    for (int i = 0; i < d_; ++i) m(i, i) = v(c++);
    for (int i = 0; i < d_; ++i) {
      for (int j = i + 1; j < d_; ++j) {
        const cplx e(v(c) * kInvSqrt2, -v(c + 1) * kInvSqrt2);
        m(i, j) = e;
        m(j, i) = std::conj(e);
        c += 2;
      }
    }
    return m;
  }

 private:
  static constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
  int d_;
  int size_;
  std::vector<CMatrix> basis_;
};

CMatrix herm(const CMatrix& w) { return (w + w.adjoint()) / 2.0; }

double trace_product(const CMatrix& x, const CMatrix& z) {
  return x.cwiseProduct(z.conjugate()).sum().real();
}

/// Reduced constraint system in the real coordinates.
class System {
 public:
  explicit System(const JmProblem& p) : basis_(p.d) {
    row_of_.resize(static_cast<std::size_t>(p.n));
    const CMatrix id = CMatrix::Identity(p.d, p.d);
    for (int j = 0; j < p.n; ++j) {
      const int k = p.radix[static_cast<std::size_t>(j)];
      for (int b = 0; b < k; ++b) {
        const bool keep = j == 0 || b < k - 1;
        row_of_[static_cast<std::size_t>(j)].push_back(keep ? rows_ : -1);
        if (!keep) continue;
        const auto ju = static_cast<std::size_t>(j);
        const auto bu = static_cast<std::size_t>(b);
        row_m_.push_back(p.m[ju][bu]);
        row_t_.push_back(p.t[ju][bu]);
        ++rows_;
      }
    }
    const int dd = basis_.size();
    m_ = rows_ * dd + 1;
    b_ = Eigen::VectorXd::Zero(m_);
    a_eta_ = Eigen::VectorXd::Zero(m_);
    for (int r = 0; r < rows_; ++r) {
      const auto ru = static_cast<std::size_t>(r);
      b_.segment(r * dd, dd) = basis_.hvec(row_t_[ru] * id);
      a_eta_.segment(r * dd, dd) = -basis_.hvec(CMatrix(row_m_[ru] - row_t_[ru] * id));
    }
    b_(m_ - 1) = 1;
    a_eta_(m_ - 1) = 1;
    touch_.resize(p.tuples);
    for (std::size_t a = 0; a < p.tuples; ++a)
      for (int j = 0; j < p.n; ++j) {
        const int r = row_of_[static_cast<std::size_t>(j)][static_cast<std::size_t>(p.digit(a, j))];
        if (r >= 0) touch_[a].push_back(r);
      }
  }

  int m() const { return m_; }
  int coords() const { return basis_.size(); }
  const HermitianBasis& basis() const { return basis_; }
  const Eigen::VectorXd& b() const { return b_; }
  const Eigen::VectorXd& a_eta() const { return a_eta_; }
  const std::vector<int>& touch(std::size_t a) const { return touch_[a]; }

  Eigen::VectorXd apply(const std::vector<CMatrix>& x, double xe, double xs) const {
    const int dd = coords();
    Eigen::VectorXd out = a_eta_ * xe;
    out(m_ - 1) += xs;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const Eigen::VectorXd g = basis_.hvec(x[a]);
      for (int r : touch_[a]) out.segment(r * dd, dd) += g;
    }
    return out;
  }

  /// Block part of A^T y.
  std::vector<CMatrix> adjoint_blocks(const Eigen::VectorXd& y) const {
    const int dd = coords();
    std::vector<CMatrix> out(touch_.size());
    Eigen::VectorXd acc(dd);
    for (std::size_t a = 0; a < touch_.size(); ++a) {
      acc.setZero();
      for (int r : touch_[a]) acc += y.segment(r * dd, dd);
      out[a] = basis_.hmat(acc);
    }
    return out;
  }

  double adjoint_eta(const Eigen::VectorXd& y) const { return a_eta_.dot(y); }
  double adjoint_slack(const Eigen::VectorXd& y) const { return y(m_ - 1); }

 private:
  HermitianBasis basis_;
  std::vector<std::vector<int>> row_of_;
  std::vector<CMatrix> row_m_;
  std::vector<double> row_t_;
  std::vector<std::vector<int>> touch_;
  int rows_ = 0;
  int m_ = 0;
  Eigen::VectorXd b_;
  Eigen::VectorXd a_eta_;
};

struct Lower {
  double eta = 0;
  std::vector<CMatrix> parent;
};

Lower certify_lower(const JmProblem& p, const std::vector<CMatrix>& trivial, double tau_min,
                    const std::vector<CMatrix>& x, double eta) {
  Lower out;
  eta = std::clamp(eta, 0.0, 1.0);
  std::vector<CMatrix> g(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) g[a] = herm(x[a]);
  project_affine(p, noisy_targets(p, eta), g);
  for (auto& e : g) e = herm(e);
  const double lambda = min_eigenvalue(g);
  if (lambda >= 0) {
    out.eta = eta;
    out.parent = std::move(g);
    return out;
  }
  // (1 - s) g + s T is PSD once (1 - s) lambda + s tau_min >= 0.
  const double s = std::min(1.0, -lambda / (tau_min - lambda) * (1 + 1e-12));
  out.eta = (1 - s) * eta;
  for (std::size_t a = 0; a < g.size(); ++a) g[a] = (1 - s) * g[a] + s * trivial[a];
  out.parent = std::move(g);
  return out;
}

double certify_upper(const JmProblem& p, const System& sys, const Eigen::VectorXd& y) {
  std::vector<CMatrix> z = sys.adjoint_blocks(y);
  for (auto& e : z) e = -e;
  const double lam = min_eigenvalue(z);
  const double z_eta = -1.0 - sys.adjoint_eta(y);
  const double z_slack = -sys.adjoint_slack(y);
  const double up = -sys.b().dot(y) - p.d * std::min(0.0, lam) - std::min(0.0, z_eta) -
                    std::min(0.0, z_slack);
  return std::min(1.0, up);
}

/// Largest alpha with x + alpha dx >= 0 blockwise and in the scalars;
/// +inf when unbounded, 0 when x itself is not positive definite.
double max_step(const std::vector<CMatrix>& x, const std::vector<CMatrix>& dx,
                std::initializer_list<std::pair<double, double>> scalars) {
  double alpha = std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMatrix> es;
  for (std::size_t a = 0; a < x.size(); ++a) {
    Eigen::LLT<CMatrix> llt(x[a]);
    if (llt.info() != Eigen::Success) return 0;
    const CMatrix left = llt.matrixL().solve(dx[a]);
    const CMatrix both = llt.matrixL().solve(CMatrix(left.adjoint()));
    es.compute(herm(both), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
  }
  for (const auto& [v, dv] : scalars) {
    if (v <= 0) return 0;
    if (dv < 0) alpha = std::min(alpha, -v / dv);
  }
  return alpha;
}

struct Direction {
  std::vector<CMatrix> dx;
  std::vector<CMatrix> dz;
  Eigen::VectorXd dy;
  double dxe = 0, dxs = 0, dze = 0, dzs = 0;
};

}  // namespace

IpmOutcome interior_point(const JmProblem& p, int max_iter, double gap_tol) {
  const System sys(p);
  const std::size_t nb = p.tuples;
  const int m = sys.m();
  const int dd = sys.coords();
  const CMatrix id = CMatrix::Identity(p.d, p.d);

  const std::vector<CMatrix> trivial = trivial_parent(p);
  double tau_min = std::numeric_limits<double>::infinity();
  for (const auto& e : trivial) tau_min = std::min(tau_min, e(0, 0).real());

  std::vector<CMatrix> x(nb, id), z(nb, id);
  double xe = 0.5, xs = 0.5, ze = 1.0, zs = 1.0;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  const double nu = static_cast<double>(nb) * p.d + 2;

  IpmOutcome out;
  out.eta_lower = 0;
  out.parent = trivial;
  out.eta_upper = 1;

  auto certify = [&]() {
    Lower lo = certify_lower(p, trivial, tau_min, x, xe);
    if (lo.eta > out.eta_lower) {
      out.eta_lower = lo.eta;
      out.parent = std::move(lo.parent);
    }
    out.eta_upper = std::min(out.eta_upper, certify_upper(p, sys, y));
  };

  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it;
    std::vector<CMatrix> aty = sys.adjoint_blocks(y);
    std::vector<CMatrix> rd(nb);
    for (std::size_t a = 0; a < nb; ++a) rd[a] = -aty[a] - z[a];
    const double rde = -1.0 - sys.adjoint_eta(y) - ze;
    const double rds = -sys.adjoint_slack(y) - zs;
    const Eigen::VectorXd rp = sys.b() - sys.apply(x, xe, xs);

    double gap = xe * ze + xs * zs;
    for (std::size_t a = 0; a < nb; ++a) gap += trace_product(x[a], z[a]);
    const double mu = gap / nu;
    double dual_inf = std::max(std::abs(rde), std::abs(rds));
    for (const auto& r : rd) dual_inf = std::max(dual_inf, max_abs(r));

    certify();
    if (out.eta_upper - out.eta_lower <= gap_tol) break;
    if (mu < gap_tol && rp.lpNorm<Eigen::Infinity>() < 1e-12 && dual_inf < 1e-12) break;

    std::vector<CMatrix> zi(nb);
    bool ok = true;
    for (std::size_t a = 0; a < nb && ok; ++a) {
      Eigen::LLT<CMatrix> llt(z[a]);
      ok = llt.info() == Eigen::Success;
      if (ok) zi[a] = herm(llt.solve(id));
    }
    if (!ok) break;

    // Schur complement M_{ik} = <A_i, X A_k Z^{-1}>.
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd k(dd, dd);
    for (std::size_t a = 0; a < nb; ++a) {
      for (int c = 0; c < dd; ++c) k.col(c) = sys.basis().hvec(CMatrix(x[a] * sys.basis()[c] * zi[a]));
      for (int r1 : sys.touch(a))
        for (int r2 : sys.touch(a)) schur.block(r1 * dd, r2 * dd, dd, dd) += k;
    }
    schur += (xe / ze) * sys.a_eta() * sys.a_eta().transpose();
    schur(m - 1, m - 1) += xs / zs;
    schur = (schur + schur.transpose()).eval() / 2.0;

    Eigen::LLT<Eigen::MatrixXd> llt(schur);
    std::optional<Eigen::LDLT<Eigen::MatrixXd>> ldlt;
    if (llt.info() != Eigen::Success) {
      ldlt.emplace(schur);
      if (ldlt->info() != Eigen::Success) break;
    }
    auto solve = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
      return ldlt ? Eigen::VectorXd(ldlt->solve(rhs)) : Eigen::VectorXd(llt.solve(rhs));
    };

    auto direction = [&](double sigma, const Direction* corr) {
      Direction dir;
      std::vector<CMatrix> base(nb);
      for (std::size_t a = 0; a < nb; ++a) {
        CMatrix w = sigma * mu * zi[a] - x[a] - x[a] * rd[a] * zi[a];
        if (corr) w -= corr->dx[a] * corr->dz[a] * zi[a];
        base[a] = herm(w);
      }
      double be = sigma * mu / ze - xe - xe * rde / ze;
      double bs = sigma * mu / zs - xs - xs * rds / zs;
      if (corr) {
        be -= corr->dxe * corr->dze / ze;
        bs -= corr->dxs * corr->dzs / zs;
      }
      dir.dy = solve(rp - sys.apply(base, be, bs));
      const std::vector<CMatrix> atd = sys.adjoint_blocks(dir.dy);
      const double ated = sys.adjoint_eta(dir.dy);
      const double atsd = sys.adjoint_slack(dir.dy);
      dir.dx.resize(nb);
      dir.dz.resize(nb);
      for (std::size_t a = 0; a < nb; ++a) {
        dir.dz[a] = rd[a] - atd[a];
        dir.dx[a] = herm(CMatrix(base[a] + x[a] * atd[a] * zi[a]));
      }
      dir.dze = rde - ated;
      dir.dzs = rds - atsd;
      dir.dxe = be + xe * ated / ze;
      dir.dxs = bs + xs * atsd / zs;
      return dir;
    };

    const Direction aff = direction(0.0, nullptr);
    const double ap_aff = std::min(1.0, max_step(x, aff.dx, {{xe, aff.dxe}, {xs, aff.dxs}}));
    const double ad_aff = std::min(1.0, max_step(z, aff.dz, {{ze, aff.dze}, {zs, aff.dzs}}));
    double gap_aff = (xe + ap_aff * aff.dxe) * (ze + ad_aff * aff.dze) +
                     (xs + ap_aff * aff.dxs) * (zs + ad_aff * aff.dzs);
    for (std::size_t a = 0; a < nb; ++a)
      gap_aff += trace_product(CMatrix(x[a] + ap_aff * aff.dx[a]), CMatrix(z[a] + ad_aff * aff.dz[a]));
    const double sigma = std::pow(std::clamp(gap_aff / nu / mu, 0.0, 1.0), 3);

    const Direction dir = direction(sigma, &aff);
    const double ap = std::min(1.0, 0.98 * max_step(x, dir.dx, {{xe, dir.dxe}, {xs, dir.dxs}}));
    const double ad = std::min(1.0, 0.98 * max_step(z, dir.dz, {{ze, dir.dze}, {zs, dir.dzs}}));
    if (ap < 1e-12 && ad < 1e-12) break;

    for (std::size_t a = 0; a < nb; ++a) {
      x[a] += ap * dir.dx[a];
      z[a] += ad * dir.dz[a];
    }
    xe += ap * dir.dxe;
    xs += ap * dir.dxs;
    y += ad * dir.dy;
    ze += ad * dir.dze;
    zs += ad * dir.dzs;
    out.iterations = it + 1;
  }
  certify();
  return out;
}

}  // namespace lossjm::detail
