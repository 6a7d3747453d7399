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
 * evolve.hpp: exact evolution by whole half-periods.
 *
 * Phases are quoted relative to the free ground state, i.e. the common factor
 * exp(-i pi k / 2) of k half-periods is dropped everywhere.
 *
 * sigma(mu, nu) barrier: the even sector of the reflection keeps its phase and
 * the odd sector flips sign, so each half-period applies the 2x2 matrix
 * sigma(mu, nu) pointwise to the pair of half-line profiles (right, left).
 * The placement of e^{+i nu} in the upper-right corner was fixed against the
 * grid oracle (the conjugate placement is off by O(1) at mu = nu = pi/2).
 *
 * Wall: the two sides decouple into Robin half-lines. theta = 0 keeps the
 * profile, theta = pi multiplies it by (-1)^k, and a constant offset v adds
 * exp(-i v k pi / omega). Any other theta is evolved in its own eigenbasis:
 * with R_n the Robin functions and N_m the Neumann functions carrying the
 * state,
 *
 *     <R_n|N_m> = tan(theta/2) R_n(0) N_m(0) / (2 (E_n - omega (2m + 1/2)))
 *
 * (Wronskian identity), and the result is projected back onto the N_m.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qabacus/barrier.hpp"
#include "qabacus/error.hpp"
#include "qabacus/gatelab.hpp"
#include "qabacus/spectral.hpp"

namespace qabacus {

struct SigmaPulse {
  double mu = 0.0;
  double nu = 0.0;
};

struct WallPulse {
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double v_plus = 0.0;   ///< constant energy offset on x > 0
  double v_minus = 0.0;  ///< constant energy offset on x < 0
};

/// No barrier at all; acts as sigma(pi, 0).
struct FreePulse {};

struct Pulse {
  std::variant<SigmaPulse, WallPulse, FreePulse> kind;
  std::int64_t half_periods = 1;

  static Pulse sigma(double mu, double nu, std::int64_t k = 1) { return Pulse{SigmaPulse{mu, nu}, k}; }
  static Pulse wall(double theta_plus, double theta_minus, double v_plus, double v_minus, std::int64_t k = 1) {
    return Pulse{WallPulse{theta_plus, theta_minus, v_plus, v_minus}, k};
  }
  static Pulse free(std::int64_t k = 1) { return Pulse{FreePulse{}, k}; }

  void validate() const {
    if (half_periods < 1) throw std::invalid_argument("pulse duration must be >= 1 half-period");
    if (const auto* s = std::get_if<SigmaPulse>(&kind)) {
      if (!std::isfinite(s->mu) || !std::isfinite(s->nu)) throw std::invalid_argument("sigma angles must be finite");
    }
    if (const auto* w = std::get_if<WallPulse>(&kind)) {
      for (double a : {w->theta_plus, w->theta_minus}) {
        if (!(a >= 0.0 && a < kTwoPi)) throw std::invalid_argument("wall angles must lie in [0, 2pi)");
      }
      if (!std::isfinite(w->v_plus) || !std::isfinite(w->v_minus)) {
        throw std::invalid_argument("wall offsets must be finite");
      }
    }
  }
};

struct PulseSchedule {
  static constexpr std::int64_t kMaxHalfPeriods = 1000000;

  double omega = 1.0;
  std::vector<Pulse> pulses;

  std::int64_t total_half_periods() const {
    std::int64_t t = 0;
    for (const auto& p : pulses) t += p.half_periods;
    return t;
  }

  void validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive");
    if (pulses.empty()) throw std::invalid_argument("schedule has no pulses");
    for (const auto& p : pulses) p.validate();
    if (total_half_periods() > kMaxHalfPeriods) throw std::invalid_argument("schedule exceeds 1e6 half-periods");
  }
};

/// State after one pulse of a run.
struct Snapshot {
  std::size_t pulse_index = 0;
  cplx alpha0;
  cplx alpha1;
  double leakage = 0.0;
};

/// One side of a generic-theta wall in its Robin eigenbasis.
struct WallExpansion {
  std::size_t pulse_index = 0;
  Side side = Side::Right;
  double theta = 0.0;
  std::vector<double> levels;
  std::vector<cplx> coefficients;  ///< before the phases were applied
};

struct EvolutionResult {
  HalfLineState state;
  cplx alpha0;
  cplx alpha1;
  double leakage = 0.0;
  std::vector<Snapshot> trajectory;
  std::vector<WallExpansion> wall_expansions;
};

inline constexpr double kLeakageOverflow = 0.5;

inline std::pair<cplx, cplx> sigma_half_period(cplx alpha0, cplx alpha1, double mu, double nu) {
  if (std::abs(std::norm(alpha0) + std::norm(alpha1) - 1.0) > 1e-10) {
    throw std::invalid_argument("qubit amplitudes are not normalized");
  }
  const Vec2 out = sigma_matrix(mu, nu) * Vec2(alpha0, alpha1);
  return {out(0), out(1)};
}

namespace detail {

inline constexpr int kRobinChunk = 256;
inline constexpr int kRobinMaxLevels = 8192;
inline constexpr double kRobinCompleteness = 1e-13;

/// exp(-i pi x k), reduced in extended precision so that long schedules at
/// high levels keep their phase.
inline cplx half_turns_phase(double x, std::int64_t k) {
  const long double turns = std::fmod(static_cast<long double>(x) * static_cast<long double>(k), 2.0L);
  return std::polar(1.0, -kPi * static_cast<double>(turns));
}

inline bool is_angle(double theta, double target) { return std::abs(theta - target) < 1e-12; }

/// Evolves one half-line profile (Neumann coefficients) through k
/// half-periods behind a wall at angle theta with offset v.
inline std::vector<cplx> wall_side(const std::vector<cplx>& f, double theta, double v, double omega,
                                   std::int64_t k, WallExpansion* record) {
  const cplx offset = half_turns_phase(v / omega, k);
  if (is_angle(theta, 0.0)) {
    std::vector<cplx> out(f);
    for (auto& c : out) c *= offset;
    return out;
  }
  if (is_angle(theta, kPi)) {
    std::vector<cplx> out(f);
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    for (auto& c : out) c *= sign * offset;
    return out;
  }

  const std::size_t count = f.size();
  const auto n0 = neumann_values_at_origin(static_cast<int>(count), omega);
  double target = 0.0;
  for (const auto& c : f) target += std::norm(c);
  std::vector<cplx> out(count);
  if (target == 0.0) return out;

  const double t = std::tan(theta / 2.0);
  const double sign_t = t > 0.0 ? 1.0 : -1.0;
  double captured = 0.0;
  int have = 0;
  while (captured < target * (1.0 - kRobinCompleteness) && have < kRobinMaxLevels) {
    const auto levels = robin_levels(theta, omega, have, kRobinChunk);
    for (double e : levels) {
      const double w = sign_t * robin_boundary_weight(e, theta, omega);
      std::vector<double> row(count);
      cplx c{};
      for (std::size_t m = 0; m < count; ++m) {
        row[m] = 0.5 * w * n0[m] / (e - omega * (2.0 * m + 0.5));
        c += row[m] * f[m];
      }
      captured += std::norm(c);
      // exp(-i E k pi / omega) * i^k, reduced mod 2 pi in two pieces
      const cplx phase = half_turns_phase(e / omega - 0.5, k) * offset;
      for (std::size_t m = 0; m < count; ++m) out[m] += row[m] * phase * c;
      if (record) {
        record->levels.push_back(e);
        record->coefficients.push_back(c);
      }
    }
    have += kRobinChunk;
  }
  return out;
}

inline HalfLineState apply_pulse(const HalfLineState& s, const Pulse& p, double omega, std::size_t index,
                                 std::vector<WallExpansion>* expansions) {
  HalfLineState out = s;
  auto apply_sigma = [&](const Mat2& m) {
    if (p.half_periods % 2 == 0) return;  // sigma squares to I
    for (std::size_t j = 0; j < s.right.size(); ++j) {
      out.right[j] = m(0, 0) * s.right[j] + m(0, 1) * s.left[j];
      out.left[j] = m(1, 0) * s.right[j] + m(1, 1) * s.left[j];
    }
  };
  if (const auto* sp = std::get_if<SigmaPulse>(&p.kind)) {
    apply_sigma(sigma_matrix(sp->mu, sp->nu));
  } else if (std::holds_alternative<FreePulse>(p.kind)) {
    apply_sigma(sigma_matrix(kPi, 0.0));
  } else {
    const auto& w = std::get<WallPulse>(p.kind);
    WallExpansion rec_r{index, Side::Right, w.theta_plus, {}, {}};
    WallExpansion rec_l{index, Side::Left, w.theta_minus, {}, {}};
    out.right = wall_side(s.right, w.theta_plus, w.v_plus, omega, p.half_periods, &rec_r);
    out.left = wall_side(s.left, w.theta_minus, w.v_minus, omega, p.half_periods, &rec_l);
    if (expansions) {
      if (!rec_r.levels.empty()) expansions->push_back(std::move(rec_r));
      if (!rec_l.levels.empty()) expansions->push_back(std::move(rec_l));
    }
  }
  return out;
}

}  // namespace detail

/// One wall pulse of k half-periods on a two-sided state.
inline EvolutionResult wall_half_period(const HalfLineState& state, const Envelope& env, const WallPulse& wall,
                                        double omega, std::int64_t half_periods = 1) {
  const Pulse p{wall, half_periods};
  p.validate();
  EvolutionResult r;
  r.state = detail::apply_pulse(state, p, omega, 0, &r.wall_expansions);
  const Decoded d = decode(r.state, env);
  r.alpha0 = d.alpha0;
  r.alpha1 = d.alpha1;
  r.leakage = d.leakage;
  r.trajectory.push_back(Snapshot{0, d.alpha0, d.alpha1, d.leakage});
  return r;
}

inline EvolutionResult run_schedule(const PulseSchedule& schedule, const HalfLineState& initial,
                                    const Envelope& env) {
  schedule.validate();
  if (std::abs(env.basis().omega - schedule.omega) > 1e-12 * schedule.omega) {
    throw std::invalid_argument("envelope and schedule use different omega");
  }
  EvolutionResult r;
  r.state = initial;
  for (std::size_t i = 0; i < schedule.pulses.size(); ++i) {
    r.state = detail::apply_pulse(r.state, schedule.pulses[i], schedule.omega, i, &r.wall_expansions);
    const Decoded d = decode(r.state, env);
    r.trajectory.push_back(Snapshot{i, d.alpha0, d.alpha1, d.leakage});
    if (d.leakage > kLeakageOverflow) {
      throw LeakageOverflow("leakage " + std::to_string(d.leakage) + " after pulse " + std::to_string(i));
    }
  }
  const auto& last = r.trajectory.back();
  r.alpha0 = last.alpha0;
  r.alpha1 = last.alpha1;
  r.leakage = last.leakage;
  return r;
}

inline EvolutionResult run_schedule(const PulseSchedule& schedule, const QubitState& initial) {
  return run_schedule(schedule, encode(initial), initial.envelope());
}

/// Columns are the decoded outputs for inputs |0> and |1>; leakage is the
/// larger of the two runs.
inline GateMatrix effective_gate(const PulseSchedule& schedule, const Envelope& env) {
  GateMatrix g;
  for (int col = 0; col < 2; ++col) {
    const QubitState in(col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0, env);
    const auto r = run_schedule(schedule, in);
    g.matrix(0, col) = r.alpha0;
    g.matrix(1, col) = r.alpha1;
    g.leakage = std::max(g.leakage, r.leakage);
  }
  return g;
}

}  // namespace qabacus
