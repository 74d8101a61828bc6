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

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "lossjm/fock.hpp"
#include "test_util.hpp"

namespace lossjm {
namespace {

using testing::random_amplitude;

// Independent product state on the lexicographic grid, mode 0 most significant.
CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index k = 0; k < b.size(); ++k) out(i * b.size() + k) = a(i) * b(k);
  return out;
}

double fidelity(const CVector& a, const CVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

std::vector<std::size_t> indices_below(const FockCutoff& c, int photons) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < c.dimension(); ++i)
    if (total_photons(i, c) < photons) idx.push_back(i);
  return idx;
}

CMatrix restrict(const CMatrix& m, const std::vector<std::size_t>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      out(i, k) = m(static_cast<Eigen::Index>(idx[i]), static_cast<Eigen::Index>(idx[k]));
  return out;
}

TEST(FockIndex, RoundTripsLexicographically) {
  const FockCutoff c{3, 3};
  for (std::size_t i = 0; i < c.dimension(); ++i) EXPECT_EQ(fock_index(fock_occupation(i, c), c), i);
  const std::vector<int> occ{1, 0, 2};
  EXPECT_EQ(fock_index(occ, c), 1u * 9 + 0 * 3 + 2);
  EXPECT_THROW(fock_occupation(27, c), std::out_of_range);
  EXPECT_THROW((FockCutoff{2, 5}.validate()), std::invalid_argument);
}

TEST(CoherentKet, Vacuum) {
  const CVector k = coherent_ket<double>(0.0, 4);
  EXPECT_EQ(k(0), cplx(1));
  for (int m = 1; m < 4; ++m) EXPECT_EQ(k(m), cplx(0));
}

TEST(CoherentKet, GroundAmplitude) {
  EXPECT_NEAR(coherent_ket<double>(1.0, 8)(0).real(), 0.6065306597, 1e-10);
}

TEST(CoherentKet, NormMatchesPoissonTail) {
  const double mu2 = 0.25;
  const CVector k = coherent_ket<double>(0.5, 20);
  double head = 0;
  double term = std::exp(-mu2);
  for (int m = 0; m < 20; ++m) {
    head += term;
    term *= mu2 / (m + 1);
  }
  EXPECT_LT(1 - head, 1e-12);
  EXPECT_NEAR(k.squaredNorm(), head, 1e-15);
  EXPECT_NEAR(k.squaredNorm(), 1.0, 1e-12);
}

TEST(CoherentKet, NormGrowsWithCutoff) {
  for (cplx mu : {cplx(0.3, 0.1), cplx(1.2, -0.4), cplx(-2.0, 0.5)}) {
    double prev = 0;
    for (int d = 1; d <= 30; ++d) {
      const double n = coherent_ket<double>(mu, d).squaredNorm();
      EXPECT_GE(n, prev);
      EXPECT_LE(n, 1 + 1e-15);
      prev = n;
    }
  }
}

TEST(Overlap, VacuumAndCoherentPair) {
  const CVector v = coherent_ket<double>(0.0, 3);
  EXPECT_NEAR(std::abs(overlap(v, v) - cplx(1)), 0, 1e-15);
  const cplx o = overlap(coherent_ket<double>(0.1, 30), coherent_ket<double>(-0.1, 30));
  EXPECT_NEAR(std::norm(o), std::exp(-0.04), 1e-10);
  EXPECT_NEAR(std::norm(o), 0.9607894392, 1e-10);
}

TEST(Overlap, ConjugateSymmetric) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const CVector a = testing::random_matrix(6, rng).col(0);
    const CVector b = testing::random_matrix(6, rng).col(0);
    EXPECT_NEAR(std::abs(overlap(a, b) - std::conj(overlap(b, a))), 0, 1e-13);
  }
}

TEST(BeamSplitter, FullTransmissionIsIdentity) {
  const CMatrix u = bs_unitary(1.0, FockCutoff{5, 2});
  EXPECT_LT(max_abs(u - CMatrix::Identity(25, 25)), 1e-15);
}

TEST(BeamSplitter, SinglePhotonBalanced) {
  const FockCutoff c{3, 2};
  const CMatrix u = bs_unitary(0.5, c);
  CVector in = CVector::Zero(9);
  in(fock_index(std::vector<int>{1, 0}, c)) = 1;
  CVector expect = CVector::Zero(9);
  expect(fock_index(std::vector<int>{1, 0}, c)) = std::sqrt(0.5);
  expect(fock_index(std::vector<int>{0, 1}, c)) = std::sqrt(0.5);
  EXPECT_LT(max_abs(CMatrix(u * in - expect)), 1e-15);
}

TEST(BeamSplitter, SplitsCoherentState) {
  const int d = 16;
  const CMatrix u = bs_unitary(0.5, FockCutoff{d, 2});
  const CVector vac = coherent_ket<double>(0.0, d);
  const CVector out = u * kron(coherent_ket<double>(0.3, d), vac);
  const double a = 0.3 / std::sqrt(2.0);
  const CVector expect = kron(coherent_ket<double>(a, d), coherent_ket<double>(a, d));
  EXPECT_GE(fidelity(out, expect), 1 - 1e-10);
}

TEST(BeamSplitter, PhotonNumberBlocksAreUnitary) {
  for (int d : {2, 4, 7}) {
    const FockCutoff c{d, 2};
    for (double eta : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      const CMatrix u = bs_unitary(eta, c);
      for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index k = 0; k < u.cols(); ++k)
          if (total_photons(static_cast<std::size_t>(i), c) != total_photons(static_cast<std::size_t>(k), c)) {
            EXPECT_EQ(u(i, k), cplx(0));
          }
      for (int n = 0; n < d; ++n) {
        std::vector<std::size_t> block;
        for (std::size_t i = 0; i < c.dimension(); ++i)
          if (total_photons(i, c) == n) block.push_back(i);
        EXPECT_LT(unitarity_residual(restrict(u, block)), 1e-12) << "d=" << d << " n=" << n;
      }
    }
  }
}

TEST(BeamSplitter, RejectsBadArguments) {
  EXPECT_THROW(bs_unitary(1.5, FockCutoff{3, 2}), std::invalid_argument);
  EXPECT_THROW(bs_unitary(0.5, FockCutoff{3, 1}), std::invalid_argument);
}

TEST(LonUnitary, TwoModeTransferMatchesBeamSplitter) {
  for (double eta : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    CMatrix t(2, 2);
    t << std::sqrt(eta), std::sqrt(1 - eta), -std::sqrt(1 - eta), std::sqrt(eta);
    const FockCutoff c{6, 2};
    EXPECT_LT(max_abs(CMatrix(lon_unitary(t, c) - bs_unitary(eta, c))), 1e-10);
  }
}

TEST(LonUnitary, IdentityTransfer) {
  const FockCutoff c{4, 3};
  const CMatrix u = lon_unitary(CMatrix::Identity(3, 3), c);
  EXPECT_LT(max_abs(CMatrix(u - CMatrix::Identity(64, 64))), 1e-15);
}

TEST(LonUnitary, BalancedThreeModeSplitsCoherentState) {
  const int d = 10;
  CVector row = CVector::Constant(3, 1 / std::sqrt(3.0));
  const CMatrix t = complete_unitary(row);
  const CMatrix u = lon_unitary(t, FockCutoff{d, 3});
  const cplx mu(0.4, -0.2);
  const CVector vac = coherent_ket<double>(0.0, d);
  const CVector out = u * kron(kron(coherent_ket<double>(mu, d), vac), vac);
  // Output amplitude of mode k is sum_j T(j, k) alpha_j.
  const CVector b0 = coherent_ket<double>(t(0, 0) * mu, d);
  const CVector b1 = coherent_ket<double>(t(0, 1) * mu, d);
  const CVector b2 = coherent_ket<double>(t(0, 2) * mu, d);
  EXPECT_GE(fidelity(out, kron(kron(b0, b1), b2)), 1 - 1e-8);
}

TEST(LonUnitary, CompositionOnExactBlocks) {
  std::mt19937_64 rng(5);
  for (int m = 1; m <= 3; ++m) {
    for (int d : {3, 5, 8}) {
      if (m == 3 && d == 8) continue;
      const FockCutoff c{d, m};
      const CMatrix a = testing::random_unitary(m, rng);
      const CMatrix b = testing::random_unitary(m, rng);
      // Creation operators compose in reverse order: F(A) F(B) = F(B A).
      const CMatrix lhs = lon_unitary(a, c) * lon_unitary(b, c);
      const CMatrix rhs = lon_unitary(CMatrix(b * a), c);
      const auto idx = indices_below(c, d);
      EXPECT_LT(max_abs(CMatrix(restrict(lhs, idx) - restrict(rhs, idx))), 1e-10) << "m=" << m << " d=" << d;
      EXPECT_LT(unitarity_residual(restrict(rhs, idx)), 1e-10);
    }
  }
}

TEST(LonUnitary, PhaseConventionDoesNotChangeCounts) {
  // Two beam-splitter phase conventions give the same photon-count statistics
  // for a signal entering with a vacuum ancilla.
  const double eta = 0.3;
  const int d = 8;
  CMatrix t1(2, 2), t2(2, 2);
  t1 << std::sqrt(eta), std::sqrt(1 - eta), std::sqrt(1 - eta), -std::sqrt(eta);
  t2 << std::sqrt(eta), cplx(0, 1) * std::sqrt(1 - eta), cplx(0, 1) * std::sqrt(1 - eta), std::sqrt(eta);
  const FockCutoff c{d, 2};
  const CVector in = kron(coherent_ket<double>(cplx(0.5, 0.1), d), coherent_ket<double>(0.0, d));
  const CVector o1 = lon_unitary(t1, c) * in;
  const CVector o2 = lon_unitary(t2, c) * in;
  const auto idx = indices_below(c, d);
  for (std::size_t i : idx) {
    const auto e = static_cast<Eigen::Index>(i);
    EXPECT_NEAR(std::norm(o1(e)), std::norm(o2(e)), 1e-14);
  }
}

TEST(CompleteUnitary, TrivialRow) {
  CVector row(1);
  row << 1.0;
  const CMatrix u = complete_unitary(row);
  ASSERT_EQ(u.rows(), 1);
  EXPECT_EQ(u(0, 0), cplx(1));
}

TEST(CompleteUnitary, BalancedTwoMode) {
  CVector row(2);
  row << std::sqrt(0.5), std::sqrt(0.5);
  const CMatrix u = complete_unitary(row);
  CMatrix expect(2, 2);
  expect << std::sqrt(0.5), std::sqrt(0.5), std::sqrt(0.5), -std::sqrt(0.5);
  EXPECT_LT(max_abs(CMatrix(u - expect)), 1e-15);
}

TEST(CompleteUnitary, DeficitAddsMode) {
  CVector row(2);
  row << std::sqrt(0.2), std::sqrt(0.3);
  const CMatrix u = complete_unitary(row);
  ASSERT_EQ(u.rows(), 3);
  EXPECT_LT(unitarity_residual(u), 1e-12);
  EXPECT_NEAR(std::norm(u(0, 2)), 0.5, 1e-15);
}

TEST(CompleteUnitary, FirstRowIsStoredVerbatim) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<int> size(1, 4);
    const int n = size(rng);
    CVector row = testing::random_matrix(n, rng).col(0);
    row *= std::uniform_real_distribution<double>(0.1, 1.0)(rng) / row.norm();
    const CMatrix u = complete_unitary(row);
    for (int k = 0; k < n; ++k) EXPECT_EQ(u(0, k), row(k));
    EXPECT_LE(unitarity_residual(u), 1e-12);
  }
}

TEST(CompleteUnitary, RejectsOverlongRow) {
  CVector row(2);
  row << 0.8, 0.8;
  EXPECT_THROW(complete_unitary(row), std::domain_error);
}

TEST(PsdResidual, Examples) {
  EXPECT_EQ(psd_residual(CMatrix::Identity(3, 3)), 0);
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -0.25;
  EXPECT_NEAR(psd_residual(m), 0.25, 1e-15);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) EXPECT_LE(psd_residual(testing::random_psd(5, rng)), 1e-12);
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1;
  EXPECT_THROW(psd_residual(bad), std::invalid_argument);
}

TEST(PhaseRotation, RotatesCoherentAmplitude) {
  const double phi = 0.7;
  const cplx mu(0.3, 0.2);
  const CVector a = phase_rotation(phi, 12) * coherent_ket<double>(mu, 12);
  const CVector b = coherent_ket<double>(mu * std::polar(1.0, phi), 12);
  EXPECT_LT(max_abs(CMatrix(a - b)), 1e-15);
}

TEST(Templates, LongDoubleScalar) {
  const auto k = coherent_ket<long double>(std::complex<long double>(0.5L), 30);
  EXPECT_NEAR(static_cast<double>(k.squaredNorm()), 1.0, 1e-15);
  const auto u = bs_unitary<long double>(0.25L, FockCutoff{4, 2});
  EXPECT_EQ(u.rows(), 16);
}

}  // namespace
}  // namespace lossjm
