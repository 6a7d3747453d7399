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


/*
 * verify.hpp: runs pulse schedules on the finite-difference grid and compares
 * them with the analytic maps.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <variant>

#include "qabacus/barrier.hpp"
#include "qabacus/evolve.hpp"
#include "qabacus/gatelab.hpp"
#include "qabacus/oracle.hpp"

namespace qabacus {

struct OracleSettings {
  int points = 2048;
  int steps_per_half_period = 2048;  ///< dt = T / 4096
};

/// Barrier matrix and potential a pulse switches on.
inline std::pair<UnitaryMatrix2, PotentialSpec> pulse_physics(const Pulse& p, double omega) {
  PotentialSpec pot;
  pot.omega = omega;
  if (const auto* s = std::get_if<SigmaPulse>(&p.kind)) return {UnitaryMatrix2(sigma_matrix(s->mu, s->nu)), pot};
  if (std::holds_alternative<FreePulse>(p.kind)) return {UnitaryMatrix2::pauli_x(), pot};
  const auto& w = std::get<WallPulse>(p.kind);
  pot.v_add_right = w.v_plus;
  pot.v_add_left = w.v_minus;
  return {robin_wall(w.theta_plus, w.theta_minus), pot};
}

/// Grid propagation of a whole schedule. The state carries the absolute
/// phase; decoded amplitudes are rotated back by i^k below.
inline GridState oracle_run(const PulseSchedule& schedule, const GridState& initial,
                            const OracleSettings& settings = {}) {
  schedule.validate();
  const double half = kPi / schedule.omega;
  const double dt = half / settings.steps_per_half_period;
  GridState s = initial;
  for (const auto& p : schedule.pulses) {
    const auto [u, pot] = pulse_physics(p, schedule.omega);
    const auto ham = build_hamiltonian(s.grid, pot, u);
    s = propagate(s, ham, half * static_cast<double>(p.half_periods), dt);
  }
  return s;
}

/// i^k, the inverse of the free ground-state phase after k half-periods.
inline cplx ground_phase_inverse(std::int64_t k) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

inline Decoded oracle_decode(const PulseSchedule& schedule, const QubitState& in, const OracleSettings& settings = {}) {
  const Grid grid = Grid::standard(schedule.omega, settings.points);
  const GridState out = oracle_run(schedule, encode(in, grid), settings);
  Decoded d = decode(out, in.envelope());
  const cplx ph = ground_phase_inverse(schedule.total_half_periods());
  d.alpha0 *= ph;
  d.alpha1 *= ph;
  return d;
}

inline GateMatrix oracle_effective_gate(const PulseSchedule& schedule, const Envelope& env,
                                        const OracleSettings& settings = {}) {
  GateMatrix g;
  for (int col = 0; col < 2; ++col) {
    const QubitState in(col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0, env);
    const Decoded d = oracle_decode(schedule, in, settings);
    g.matrix(0, col) = d.alpha0;
    g.matrix(1, col) = d.alpha1;
    g.leakage = std::max(g.leakage, d.leakage);
  }
  return g;
}

struct VerifyReport {
  GateMatrix analytic;
  GateMatrix oracle;
  double max_deviation = 0.0;  ///< largest entrywise |analytic - oracle|
  double fidelity = 0.0;       ///< gate_fidelity(analytic, oracle)
};

inline VerifyReport verify_schedule(const PulseSchedule& schedule, const Envelope& env,
                                    const OracleSettings& settings = {}) {
  VerifyReport r;
  r.analytic = effective_gate(schedule, env);
  r.oracle = oracle_effective_gate(schedule, env, settings);
  r.max_deviation = max_abs(r.analytic.matrix - r.oracle.matrix);
  r.fidelity = gate_fidelity(r.analytic, r.oracle);
  return r;
}

}  // namespace qabacus
