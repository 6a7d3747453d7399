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
 * compiler.hpp: pulse synthesis for arbitrary single-qubit gates.
 *
 * Target G = e^{i gamma} Rz(alpha) Ry(beta) Rz(delta) with
 * Rz(phi) = diag(e^{-i phi/2}, e^{i phi/2}). The primitives are
 *
 *     Ry(beta) = sigma(beta, 0) sigma(0, 0)        (two reflections)
 *     Rz(phi) ~ diag(e^{-i phi}, 1) = Wall{pi, pi, v+ = omega phi / pi, 0}
 *
 * so a general gate costs at most four pulses. Reflections (traceless G) and
 * diagonal G take one pulse.
 */

#pragma once

#include <cmath>
#include <complex>
#include <variant>

#include "qabacus/barrier.hpp"
#include "qabacus/error.hpp"
#include "qabacus/evolve.hpp"
#include "qabacus/gatelab.hpp"

namespace qabacus {

struct EulerAngles {
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

inline Mat2 rz(double phi) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, -phi / 2.0);
  m(1, 1) = std::polar(1.0, phi / 2.0);
  return m;
}

inline Mat2 ry(double beta) {
  Mat2 m;
  m << std::cos(beta / 2.0), -std::sin(beta / 2.0), std::sin(beta / 2.0), std::cos(beta / 2.0);
  return m;
}

inline Mat2 recompose(const EulerAngles& e) {
  return std::polar(1.0, e.gamma) * rz(e.alpha) * ry(e.beta) * rz(e.delta);
}

inline EulerAngles euler_decompose(const UnitaryMatrix2& g) {
  const Mat2& m = g.matrix();
  // SU(2) representative [[a, -conj(b)], [b, conj(a)]]
  const cplx root = std::sqrt(m.determinant());
  const cplx a = m(0, 0) / root;
  const cplx b = m(1, 0) / root;
  EulerAngles e;
  e.beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  constexpr double gimbal = 1e-13;
  if (std::abs(b) < gimbal) {
    e.beta = 0.0;
    e.alpha = -2.0 * std::arg(a);
  } else if (std::abs(a) < gimbal) {
    e.beta = kPi;
    e.alpha = 2.0 * std::arg(b);
  } else {
    e.alpha = std::arg(b) - std::arg(a);
    e.delta = -(std::arg(a) + std::arg(b));
  }
  e.alpha = wrap_angle(e.alpha);
  e.delta = wrap_angle(e.delta);
  const Mat2 r = rz(e.alpha) * ry(e.beta) * rz(e.delta);
  e.gamma = std::arg((r.adjoint() * m).trace());
  return e;
}

/// Wall pulse realizing diag(e^{-i phi}, 1) up to global phase.
inline Pulse phase_wall(double phi, double omega) {
  double v = omega * wrap_angle(phi) / kPi;
  if (v >= 2.0 * omega) v = 0.0;
  return Pulse::wall(kPi, kPi, v, 0.0);
}

inline PulseSchedule compile_gate(const UnitaryMatrix2& g, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  const Mat2& m = g.matrix();
  constexpr double tol = 1e-12;
  PulseSchedule s;
  s.omega = omega;

  // traceless: G = e^{i phi} sigma(mu, nu), one reflection
  if (std::abs(m.trace()) < tol) {
    Mat2 r = m * std::polar(1.0, -0.5 * std::arg(-m.determinant()));
    if (r(0, 0).real() < 0.0) r = -r;
    const double c = std::clamp(r(0, 0).real(), 0.0, 1.0);
    const double mu = 2.0 * std::acos(c);
    const double nu = std::abs(r(0, 1)) < tol ? 0.0 : wrap_angle(std::arg(r(0, 1)));
    s.pulses.push_back(Pulse::sigma(mu, nu));
    return s;
  }
  // diagonal: one phase wall (also covers the identity)
  if (std::abs(m(0, 1)) < tol && std::abs(m(1, 0)) < tol) {
    s.pulses.push_back(phase_wall(std::arg(m(1, 1)) - std::arg(m(0, 0)), omega));
    return s;
  }
  const EulerAngles e = euler_decompose(g);
  auto is_zero_angle = [](double a) { return std::abs(a) < tol || std::abs(a - kTwoPi) < tol; };
  if (!is_zero_angle(e.delta)) s.pulses.push_back(phase_wall(e.delta, omega));
  s.pulses.push_back(Pulse::sigma(0.0, 0.0));
  s.pulses.push_back(Pulse::sigma(e.beta, 0.0));
  if (!is_zero_angle(e.alpha)) s.pulses.push_back(phase_wall(e.alpha, omega));
  return s;
}

/// Product of the ideal per-pulse matrices. Walls must sit at theta 0 or pi.
inline GateMatrix schedule_matrix(const PulseSchedule& s) {
  s.validate();
  Mat2 total = Mat2::Identity();
  for (const auto& p : s.pulses) {
    Mat2 step = Mat2::Identity();
    const bool odd = p.half_periods % 2 != 0;
    if (const auto* sp = std::get_if<SigmaPulse>(&p.kind)) {
      if (odd) step = sigma_matrix(sp->mu, sp->nu);
    } else if (std::holds_alternative<FreePulse>(p.kind)) {
      if (odd) step = sigma_matrix(kPi, 0.0);
    } else {
      const auto& w = std::get<WallPulse>(p.kind);
      auto side = [&](double theta, double v) {
        double sign = 1.0;
        if (detail::is_angle(theta, kPi)) {
          sign = odd ? -1.0 : 1.0;
        } else if (!detail::is_angle(theta, 0.0)) {
          throw NotQubitExact("wall at theta = " + format_double(theta) + " has no exact qubit matrix");
        }
        return sign * detail::half_turns_phase(v / s.omega, p.half_periods);
      };
      step(0, 0) = side(w.theta_plus, w.v_plus);
      step(1, 1) = side(w.theta_minus, w.v_minus);
    }
    total = step * total;
  }
  return GateMatrix{total, 0.0, Basis::Locational};
}

}  // namespace qabacus
