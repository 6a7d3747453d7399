// Copyright 2026 The qabacus Authors
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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qabacus/barrier.hpp"
#include "qabacus/error.hpp"
#include "qabacus/spectral.hpp"
#include "test_support.hpp"

namespace qabacus {
namespace {

Mat2 diag_phase(double a, double b) {
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::polar(1.0, a);
  d(1, 1) = std::polar(1.0, b);
  return d;
}

TEST(UnitaryMatrix2, RejectsNonUnitary) {
  Mat2 m;
  m << 1.0, 0.1, 0.0, 1.0;
  EXPECT_THROW(UnitaryMatrix2{m}, std::invalid_argument);
  EXPECT_NO_THROW(UnitaryMatrix2::nearest(m));
  EXPECT_LT(unitarity_defect(UnitaryMatrix2::nearest(m).matrix()), 1e-14);
}

TEST(UnitaryMatrix2, NamedConstants) {
  const Mat2 h = UnitaryMatrix2::hadamard().matrix();
  EXPECT_NEAR(std::abs(h(0, 0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 1) + 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_LT(max_abs(UnitaryMatrix2::pauli_x().matrix() * UnitaryMatrix2::pauli_x().matrix() - Mat2::Identity()),
            1e-15);
}

TEST(ComposeU, DiagonalIdentityCollapses) {
  for (double mu : {0.0, 0.7, 2.0, kPi}) {
    for (double nu : {0.0, 1.0, 4.0}) {
      EXPECT_LT(max_abs(compose_u({0.0, 0.0, mu, nu}).matrix() - Mat2::Identity()), 1e-14);
    }
  }
}

TEST(ComposeU, MinusIdentity) {
  EXPECT_LT(max_abs(compose_u({kPi, kPi, 0.0, 0.0}).matrix() + Mat2::Identity()), 1e-14);
}

TEST(ComposeU, FreePointIsPauliX) {
  EXPECT_LT(max_abs(compose_u({0.0, kPi, kPi / 2.0, 0.0}).matrix() - UnitaryMatrix2::pauli_x().matrix()), 1e-14);
}

TEST(ComposeU, MatchesExplicitSandwich) {
  const double tp = 0.4, tm = 2.9, mu = 1.1, nu = 0.3;
  const double c = std::cos(mu / 2.0), s = std::sin(mu / 2.0);
  Mat2 sig;
  sig << c, std::polar(s, nu), std::polar(s, -nu), -c;
  EXPECT_LT(max_abs(compose_u({tp, tm, mu, nu}).matrix() - sig * diag_phase(tp, tm) * sig), 1e-14);
}

TEST(ComposeU, SigmaInvolutionOnGrid) {
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const Mat2 s = sigma_matrix(kPi * i / 15.0, kTwoPi * j / 16.0);
      EXPECT_LT(max_abs(s * s - Mat2::Identity()), 1e-14);
    }
  }
}

TEST(DecomposeU, PauliX) {
  const auto p = decompose_u(UnitaryMatrix2::pauli_x());
  EXPECT_NEAR(p.theta_plus, 0.0, 1e-12);
  EXPECT_NEAR(p.theta_minus, kPi, 1e-12);
  EXPECT_NEAR(p.mu, kPi / 2.0, 1e-12);
  EXPECT_NEAR(p.nu, 0.0, 1e-12);
}

TEST(DecomposeU, DegenerateCanonical) {
  const auto p = decompose_u(UnitaryMatrix2::diagonal(kPi / 3.0, kPi / 3.0));
  EXPECT_NEAR(p.theta_plus, kPi / 3.0, 1e-12);
  EXPECT_NEAR(p.theta_minus, kPi / 3.0, 1e-12);
  EXPECT_EQ(p.mu, 0.0);
  EXPECT_EQ(p.nu, 0.0);
}

TEST(DecomposeU, HadamardRoundTrip) {
  const auto h = UnitaryMatrix2::hadamard();
  const auto p = decompose_u(h);
  EXPECT_NEAR(p.theta_plus, 0.0, 1e-12);
  EXPECT_NEAR(p.theta_minus, kPi, 1e-12);
  // sigma(mu, nu) diagonalizes H: sigma H sigma = diag(1, -1)
  const Mat2 s = sigma_matrix(p.mu, p.nu);
  EXPECT_LT(max_abs(s * h.matrix() * s - diag_phase(0.0, kPi)), 1e-12);
  EXPECT_LT(max_abs(compose_u(p).matrix() - h.matrix()), 1e-12);
}

TEST(DecomposeU, RandomRoundTripAndRanges) {
  std::mt19937_64 rng(testing::test_seed(1));
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto u = testing::random_unitary(rng);
    const auto p = decompose_u(u);
    worst = std::max(worst, max_abs(compose_u(p).matrix() - u.matrix()));
    EXPECT_GE(p.mu, 0.0);
    EXPECT_LE(p.mu, kPi);
    EXPECT_GE(p.nu, 0.0);
    EXPECT_LT(p.nu, kTwoPi);
    EXPECT_GE(p.theta_plus, 0.0);
    EXPECT_LT(p.theta_minus, kTwoPi);
    // eigenphases of U are exactly {theta+, theta-}
    const cplx tr = u.matrix().trace();
    EXPECT_NEAR(std::abs(tr - (std::polar(1.0, p.theta_plus) + std::polar(1.0, p.theta_minus))), 0.0, 1e-10);
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(BarrierParams, CanonicalWrapsAndClamps) {
  const auto p = BarrierParams{-0.5, kTwoPi + 0.25, 0.3, -1.0}.canonical();
  EXPECT_NEAR(p.theta_plus, kTwoPi - 0.5, 1e-14);
  EXPECT_NEAR(p.theta_minus, 0.25, 1e-14);
  EXPECT_NEAR(p.nu, kTwoPi - 1.0, 1e-14);
  const auto d = BarrierParams{1.0, 1.0, 0.7, 2.0}.canonical();
  EXPECT_EQ(d.mu, 0.0);
  EXPECT_EQ(d.nu, 0.0);
}

TEST(BoundaryResidual, NeumannWall) {
  BoundaryData bd{cplx(0.3, 1.0), cplx(-2.0, 0.5), 0.0, 0.0};
  EXPECT_LT(boundary_residual(UnitaryMatrix2::identity(), bd).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BoundaryResidual, DirichletWall) {
  BoundaryData bd{0.0, 0.0, cplx(0.3, 1.0), cplx(-2.0, 0.5)};
  EXPECT_LT(boundary_residual(UnitaryMatrix2::diagonal(kPi, kPi), bd).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BoundaryResidual, FreePointContinuity) {
  const cplx a(0.4, -0.2), b(1.5, 0.7);
  EXPECT_LT(boundary_residual(UnitaryMatrix2::pauli_x(), BoundaryData{a, a, b, b}).cwiseAbs().maxCoeff(), 1e-15);
  // a kink is not allowed at the free point
  EXPECT_GT(boundary_residual(UnitaryMatrix2::pauli_x(), BoundaryData{a, a, b, -b}).cwiseAbs().maxCoeff(), 0.1);
}

TEST(BoundaryResidual, VanishesOnSigmaEigenfunctions) {
  for (double mu : {0.3, kPi / 2.0, 2.0, kPi}) {
    for (double nu : {0.0, 1.0, kPi}) {
      const UnitaryMatrix2 u(sigma_matrix(mu, nu));
      const cplx lambda = lambda_param(mu, nu);
      for (int n = 0; n < 10; ++n) {
        const auto bd = sigma_eigenfunction_boundary(lambda, n, 1.3);
        EXPECT_LT(boundary_residual(u, bd).cwiseAbs().maxCoeff(), 1e-12) << "mu=" << mu << " n=" << n;
      }
    }
  }
}

TEST(LambdaParam, ClosedForms) {
  EXPECT_NEAR(std::abs(lambda_param(kPi / 2.0, 0.0) - (1.0 + std::sqrt(2.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(lambda_param(kPi, 0.0) - 1.0), 0.0, 1e-15);
  const cplx l = lambda_param(1.0, 0.8);
  EXPECT_NEAR(std::arg(l), 0.8, 1e-15);
  EXPECT_NEAR(std::abs(l), std::sqrt((1.0 + std::cos(0.5)) / (1.0 - std::cos(0.5))), 1e-13);
  EXPECT_THROW(lambda_param(0.0, 0.0), DegenerateDecoupled);
}

TEST(LambdaParam, RatioOfPlusOneEigenvector) {
  // the +1 eigenvector of sigma(mu, nu) is proportional to (lambda, 1)
  for (double mu : {0.4, 1.3, 2.8}) {
    const cplx l = lambda_param(mu, 0.6);
    const Vec2 v(l, 1.0);
    EXPECT_LT((sigma_matrix(mu, 0.6) * v - v).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Scattering, HadamardHalfTransmission) {
  for (double k : {0.5, 1.0, 5.0, 20.0}) {
    const auto s = scattering_coefficients(UnitaryMatrix2::hadamard(), k);
    EXPECT_NEAR(std::norm(s.t_left), 0.5, 1e-12);
    EXPECT_NEAR(std::norm(s.t_right), 0.5, 1e-12);
  }
}

TEST(Scattering, FreePointAndWall) {
  const auto f = scattering_coefficients(UnitaryMatrix2::pauli_x(), 2.0);
  EXPECT_NEAR(std::abs(f.t_left - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.r_left), 0.0, 1e-14);
  const auto w = scattering_coefficients(UnitaryMatrix2::identity(), 2.0);
  EXPECT_NEAR(std::abs(w.r_left), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(w.t_left), 0.0, 1e-14);
}

TEST(Scattering, SigmaFamilyIsScaleInvariant) {
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double mu = kPi * i / 8.0, nu = kTwoPi * j / 4.0;
      const UnitaryMatrix2 u(sigma_matrix(mu, nu));
      const double expect = std::pow(std::sin(mu / 2.0), 2);
      for (double k : {0.5, 1.0, 5.0, 20.0}) {
        const auto s = scattering_coefficients(u, k);
        EXPECT_NEAR(std::norm(s.t_left), expect, 1e-12);
        EXPECT_NEAR(std::norm(s.t_right), expect, 1e-12);
      }
    }
  }
}

TEST(Scattering, UnitarityForRandomBarriers) {
  std::mt19937_64 rng(testing::test_seed(2));
  for (int i = 0; i < 200; ++i) {
    const auto u = testing::random_unitary(rng);
    const double k = 0.1 + 10.0 * std::uniform_real_distribution<double>()(rng);
    const auto s = scattering_coefficients(u, k);
    EXPECT_NEAR(std::norm(s.r_left) + std::norm(s.t_left), 1.0, 1e-12);
    EXPECT_NEAR(std::norm(s.r_right) + std::norm(s.t_right), 1.0, 1e-12);
  }
}

TEST(Scattering, SatisfiesConnectionCondition) {
  // left incidence: psi = e^{ikx} + r e^{-ikx} (x<0), t e^{ikx} (x>0)
  const UnitaryMatrix2 u = UnitaryMatrix2::nearest(compose_u({0.7, 2.2, 1.0, 0.4}).matrix());
  const double k = 1.7;
  const auto s = scattering_coefficients(u, k);
  const cplx ik = kI * k;
  BoundaryData bd{s.t_left, 1.0 + s.r_left, ik * s.t_left, ik * (1.0 - s.r_left)};
  EXPECT_LT(boundary_residual(u, bd).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RobinWall, EndpointsAreNeumannAndDirichlet) {
  EXPECT_LT(max_abs(robin_wall(0.0, 0.0).matrix() - Mat2::Identity()), 1e-15);
  EXPECT_LT(max_abs(robin_wall(kPi, kPi).matrix() + Mat2::Identity()), 1e-15);
  // psi'(0) = tan(theta/2) psi(0) on each side solves the condition
  const double tr = 0.8, tl = 4.0;
  const auto u = robin_wall(tr, tl);
  const cplx a(1.0, 0.2), b(-0.4, 0.9);
  BoundaryData bd{a, b, std::tan(tr / 2.0) * a, -std::tan(tl / 2.0) * b};
  EXPECT_LT(boundary_residual(u, bd).cwiseAbs().maxCoeff(), 1e-14);
}

}  // namespace
}  // namespace qabacus
