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
#include <sstream>
#include <string>

#include "qabacus/barrier.hpp"
#include "qabacus/error.hpp"
#include "qabacus/oracle.hpp"
#include "qabacus/spectral.hpp"
#include "test_support.hpp"

namespace qabacus {
namespace {

GridState sampled(const Grid& g, const std::function<cplx(double)>& f) {
  GridState s{g, std::vector<cplx>(static_cast<std::size_t>(g.size()))};
  for (int j = 0; j < g.size(); ++j) s.values[j] = f(g.node(j));
  s.normalize();
  return s;
}

double mean_position(const GridState& s) {
  double m = 0.0;
  for (int j = 0; j < s.grid.size(); ++j) m += s.grid.node(j) * std::norm(s.values[j]);
  return m * s.grid.spacing();
}

double mass_right(const GridState& s) {
  double m = 0.0;
  for (int j = s.grid.first_right(); j < s.grid.size(); ++j) m += std::norm(s.values[j]);
  return m * s.grid.spacing();
}

TEST(Grid, StraddlesTheOrigin) {
  const Grid g(5.0, 100);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.1);
  EXPECT_NEAR(g.node(g.first_right()), 0.05, 1e-15);
  EXPECT_NEAR(g.node(g.first_right() - 1), -0.05, 1e-15);
  for (int j = 0; j < g.size(); ++j) EXPECT_NEAR(g.node(j), -g.node(g.size() - 1 - j), 1e-13);
  EXPECT_THROW(Grid(5.0, 101), std::invalid_argument);
  EXPECT_THROW(Grid(-1.0, 100), std::invalid_argument);
}

TEST(BuildHamiltonian, FreePointIsUnbrokenOscillator) {
  const Grid g = Grid::standard(1.0, 512);
  const auto h = build_hamiltonian(g, PotentialSpec{}, UnitaryMatrix2::pauli_x());
  const double h2 = g.spacing() * g.spacing();
  for (int j = 0; j < g.size(); ++j) EXPECT_NEAR(h.diag[j], 1.0 / h2 + 0.5 * g.node(j) * g.node(j), 1e-9);
  for (const auto& u : h.upper) EXPECT_NEAR(std::abs(u - cplx(-0.5 / h2)), 0.0, 1e-9);
}

TEST(BuildHamiltonian, HermitianForRandomBarriers) {
  std::mt19937_64 rng(testing::test_seed(11));
  std::normal_distribution<double> n01;
  const Grid g = Grid::standard(1.0, 256 * 2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = testing::random_unitary(rng);
    const auto h = build_hamiltonian(g, PotentialSpec{}, u);
    std::vector<cplx> a(g.size()), b(g.size());
    for (int j = 0; j < g.size(); ++j) {
      a[j] = cplx(n01(rng), n01(rng));
      b[j] = cplx(n01(rng), n01(rng));
    }
    const auto ha = h.apply(a), hb = h.apply(b);
    const cplx lhs = grid_overlap(a, hb, 1.0), rhs = grid_overlap(ha, b, 1.0);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9 * std::abs(lhs));
  }
}

TEST(BuildHamiltonian, ResolutionGuards) {
  EXPECT_THROW(build_hamiltonian(Grid(4.0, 2048), PotentialSpec{}, UnitaryMatrix2::pauli_x()), ResolutionError);
  EXPECT_THROW(build_hamiltonian(Grid::standard(1.0, 128), PotentialSpec{}, UnitaryMatrix2::pauli_x()),
               ResolutionError);
}

TEST(StationarySpectrum, FreeOscillator) {
  const auto e = stationary_spectrum(Grid::standard(1.0, 2048), PotentialSpec{}, UnitaryMatrix2::pauli_x(), 6);
  for (int n = 0; n < 6; ++n) EXPECT_NEAR(e[n], n + 0.5, 1e-4 * (n + 0.5));
}

TEST(StationarySpectrum, NeumannAndDirichletBlocks) {
  const Grid g = Grid::standard(1.0, 2048);
  const auto neu = stationary_spectrum(g, PotentialSpec{}, UnitaryMatrix2::identity(), 2);
  const auto dir = stationary_spectrum(g, PotentialSpec{}, UnitaryMatrix2::diagonal(kPi, kPi), 2);
  // each block contributes one copy of the half-line ground level
  EXPECT_NEAR(neu[0], 0.5, 1e-4);
  EXPECT_NEAR(neu[1], 0.5, 1e-4);
  EXPECT_NEAR(dir[0], 1.5, 1e-4);
  EXPECT_NEAR(dir[1], 1.5, 1e-4);
}

TEST(StationarySpectrum, MixedWallInterleaves) {
  const auto e = stationary_spectrum(Grid::standard(1.0, 2048), PotentialSpec{}, robin_wall(0.0, kPi), 6);
  for (int n = 0; n < 6; ++n) EXPECT_NEAR(e[n], n + 0.5, 1e-4 * (n + 0.5));
}

TEST(StationarySpectrum, IsospectralSphere) {
  const Grid g = Grid::standard(1.0, 2048);
  const auto ref = stationary_spectrum(g, PotentialSpec{}, compose_u({0.0, kPi, 0.0, 0.0}), 6);
  for (double mu : {0.3, kPi / 2.0, 2.5, kPi}) {
    for (double nu : {0.0, 2.0}) {
      const auto e = stationary_spectrum(g, PotentialSpec{}, compose_u({0.0, kPi, mu, nu}), 6);
      for (int n = 0; n < 6; ++n) EXPECT_NEAR(e[n], ref[n], 1e-6 * ref[n]);
    }
  }
}

TEST(StationarySpectrum, CountGuard) {
  EXPECT_THROW(stationary_spectrum(Grid::standard(1.0, 512), PotentialSpec{}, UnitaryMatrix2::pauli_x(), 13),
               std::invalid_argument);
}

TEST(Propagate, GroundStateIsStationary) {
  const Grid g = Grid::standard(1.0, 2048);
  const auto s = sampled(g, [](double x) { return cplx(ho_eigenfunction(0, 1.0, x)); });
  const auto h = build_hamiltonian(g, PotentialSpec{}, UnitaryMatrix2::pauli_x());
  const auto out = propagate(s, h, kPi, kTwoPi / 4096);
  EXPECT_GT(std::abs(grid_overlap(s.values, out.values, g.spacing())), 1.0 - 1e-4);
}

TEST(Propagate, NormConservation) {
  const Grid g = Grid::standard(1.0, 1024);
  auto s = sampled(g, [](double x) { return std::exp(-(x - 1.5) * (x - 1.5)) * std::polar(1.0, 0.7 * x); });
  const auto h = build_hamiltonian(g, PotentialSpec{}, UnitaryMatrix2(sigma_matrix(1.0, 0.5)));
  const double dt = kTwoPi / 2048;
  double worst_step = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double before = s.norm_squared();
    s = propagate(s, h, dt, dt);
    worst_step = std::max(worst_step, std::abs(s.norm_squared() - before));
  }
  EXPECT_LT(worst_step, 1e-12);
  const auto full = propagate(s, h, kTwoPi, dt);
  EXPECT_LT(std::abs(full.norm_squared() - 1.0), 1e-9);
}

TEST(Propagate, NotBarrierMirrorsThePacket) {
  const Grid g = Grid::standard(1.0, 2048);
  const auto s = sampled(g, [](double x) { return cplx(std::exp(-(x - 2.5) * (x - 2.5) / 2.0)); });
  EXPECT_GT(mean_position(s), 2.0);
  const auto out =
      propagate(s, build_hamiltonian(g, PotentialSpec{}, UnitaryMatrix2(sigma_matrix(kPi, 0.0))), kPi, kTwoPi / 4096);
  EXPECT_LT(mean_position(out), -2.0);
}

TEST(Propagate, HadamardBarrierSplitsEvenly) {
  const Grid g = Grid::standard(1.0, 2048);
  const auto env = Envelope::standard();
  GridState s{g, sample_envelope(g, env, Side::Right)};
  const auto out = propagate(s, build_hamiltonian(g, PotentialSpec{}, UnitaryMatrix2(sigma_matrix(kPi / 2.0, 0.0))),
                             kPi, kTwoPi / 4096);
  EXPECT_NEAR(mass_right(out), 0.5, 1e-3);
}

TEST(Propagate, InterfaceResidualStaysSmall) {
  std::mt19937_64 rng(testing::test_seed(12));
  const Grid g = Grid::standard(1.0, 2048);
  const double h = g.spacing();
  for (int trial = 0; trial < 3; ++trial) {
    const auto u = testing::random_unitary(rng);
    const auto ham = build_hamiltonian(g, PotentialSpec{}, u);
    auto s = sampled(g, [](double x) { return cplx(x > 0 ? std::pow(x, 4) * std::exp(-0.5 * x * x) : 0.0); });
    const double dt = kTwoPi / 4096;
    double worst = 0.0;
    for (int step = 0; step < 300; ++step) {
      s = propagate(s, ham, dt, dt);
      worst = std::max(worst, boundary_residual(u, interface_extrapolants(s)).cwiseAbs().maxCoeff());
    }
    EXPECT_LT(worst, 10.0 * h) << "trial " << trial;
  }
}

TEST(InterfaceExtrapolants, ExactForQuadratics) {
  const Grid g(4.0, 64);
  GridState s{g, std::vector<cplx>(64)};
  for (int j = 0; j < 64; ++j) {
    const double x = g.node(j);
    s.values[j] = x > 0 ? cplx(1.0 + 2.0 * x + 3.0 * x * x) : cplx(-0.5 + 0.25 * x - x * x);
  }
  const auto bd = interface_extrapolants(s);
  EXPECT_NEAR(std::abs(bd.psi_plus - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(bd.dpsi_plus - 2.0), 0.0, 1e-11);
  EXPECT_NEAR(std::abs(bd.psi_minus + 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(bd.dpsi_minus - 0.25), 0.0, 1e-11);
}

TEST(WavepacketScatter, HadamardHalf) {
  const auto p = wavepacket_scatter(UnitaryMatrix2::hadamard(), 5.0);
  EXPECT_NEAR(p.transmission, 0.5, 1e-2);
  EXPECT_NEAR(p.transmission + p.reflection, 1.0, 1e-3);
}

TEST(WavepacketScatter, FreePointAndWall) {
  EXPECT_NEAR(wavepacket_scatter(UnitaryMatrix2::pauli_x(), 2.0).transmission, 1.0, 1e-2);
  EXPECT_NEAR(wavepacket_scatter(UnitaryMatrix2::identity(), 2.0).transmission, 0.0, 1e-2);
}

TEST(WavepacketScatter, MatchesClosedFormForGenericBarrier) {
  const UnitaryMatrix2 u = compose_u({0.4, 2.0, 1.1, 0.6});
  for (double k : {1.5, 3.0}) {
    const auto p = wavepacket_scatter(u, k);
    EXPECT_NEAR(p.transmission, std::norm(scattering_coefficients(u, k).t_left), 1e-2) << k;
  }
}

TEST(WavepacketScatter, RejectsNarrowPackets) {
  EXPECT_THROW(wavepacket_scatter(UnitaryMatrix2::hadamard(), 0.5), ResolutionError);
}

TEST(ConvergenceReport, FreeGroundEnergyIsSecondOrder) {
  const int pts[] = {512, 1024, 2048};
  const auto r = convergence_report(ConvergenceScenario::FreeGroundEnergy, pts);
  ASSERT_EQ(r.order.size(), 2u);
  for (double o : r.order) {
    EXPECT_GE(o, 1.8);
    EXPECT_LE(o, 2.2);
  }
}

TEST(ConvergenceReport, HadamardGateIsMonotone) {
  const int pts[] = {512, 1024, 2048};
  const auto r = convergence_report(ConvergenceScenario::HadamardGate, pts);
  EXPECT_TRUE(r.monotone());
  EXPECT_GE(r.min_order(), 0.8);
}

TEST(ConvergenceReport, WallPhaseGateShrinks) {
  const int pts[] = {512, 1024, 2048};
  const auto r = convergence_report(ConvergenceScenario::WallPhaseGate, pts);
  EXPECT_TRUE(r.monotone());
  EXPECT_LT(r.error.back(), 1e-3);
}

TEST(ConvergenceReport, RejectsBadSequences) {
  const int short_seq[] = {512, 1024};
  const int uneven[] = {512, 1000, 2000};
  EXPECT_THROW(convergence_report(ConvergenceScenario::FreeGroundEnergy, short_seq), std::invalid_argument);
  EXPECT_THROW(convergence_report(ConvergenceScenario::FreeGroundEnergy, uneven), std::invalid_argument);
}

TEST(WriteCsv, RowsPerNode) {
  const Grid g(4.0, 16);
  const auto s = sampled(g, [](double x) { return std::polar(1.0, x); });
  std::ostringstream os;
  write_csv(os, s);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,re_psi,im_psi");
  int rows = 0;
  while (std::getline(in, line)) {
    double x, re, im;
    char c1, c2;
    std::istringstream ls(line);
    ls >> x >> c1 >> re >> c2 >> im;
    EXPECT_EQ(x, g.node(rows));
    EXPECT_EQ(re, s.values[rows].real());
    ++rows;
  }
  EXPECT_EQ(rows, 16);
}

}  // namespace
}  // namespace qabacus
