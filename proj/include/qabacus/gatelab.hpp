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
 * gatelab.hpp: the locational qubit.
 *
 * |0> is the envelope S on x > 0 and |1> its mirror on x < 0, with no extra
 * phase. Amplitudes are overlaps with those two states; whatever weight is
 * left over is leakage out of the qubit subspace.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qabacus/barrier.hpp"
#include "qabacus/oracle.hpp"
#include "qabacus/spectral.hpp"

namespace qabacus {

enum class Basis { Locational, SymAntisym };

class QubitState {
 public:
  static constexpr double kNormTolerance = 1e-10;

  QubitState(cplx alpha0, cplx alpha1, Envelope envelope)
      : alpha0_(alpha0), alpha1_(alpha1), envelope_(std::move(envelope)) {
    const double n2 = std::norm(alpha0) + std::norm(alpha1);
    if (std::abs(n2 - 1.0) > kNormTolerance) throw std::invalid_argument("qubit amplitudes are not normalized");
  }

  cplx alpha0() const { return alpha0_; }
  cplx alpha1() const { return alpha1_; }
  const Envelope& envelope() const { return envelope_; }

 private:
  cplx alpha0_;
  cplx alpha1_;
  Envelope envelope_;
};

struct GateMatrix {
  Mat2 matrix = Mat2::Identity();
  double leakage = 0.0;
  Basis basis = Basis::Locational;
};

struct Decoded {
  cplx alpha0;
  cplx alpha1;
  double leakage = 0.0;
};

inline HalfLineState encode(const QubitState& q) {
  const auto& env = q.envelope();
  HalfLineState s = HalfLineState::zero(env.basis());
  for (std::size_t m = 0; m < s.right.size(); ++m) {
    s.right[m] = q.alpha0() * env.coefficients()[m];
    s.left[m] = q.alpha1() * env.coefficients()[m];
  }
  return s;
}

inline OscCoeffs encode(const QubitState& q, cplx lambda) {
  const OscCoeffs r = expand_localized(q.envelope(), Side::Right, lambda);
  const OscCoeffs l = expand_localized(q.envelope(), Side::Left, lambda);
  OscCoeffs out = r;
  for (std::size_t n = 0; n < out.amplitudes.size(); ++n) {
    out.amplitudes[n] = q.alpha0() * r.amplitudes[n] + q.alpha1() * l.amplitudes[n];
  }
  return out;
}

inline GridState encode(const QubitState& q, const Grid& grid) {
  const auto r = sample_envelope(grid, q.envelope(), Side::Right);
  const auto l = sample_envelope(grid, q.envelope(), Side::Left);
  GridState s{grid, std::vector<cplx>(r.size())};
  for (std::size_t j = 0; j < r.size(); ++j) s.values[j] = q.alpha0() * r[j] + q.alpha1() * l[j];
  return s;
}

namespace detail {

inline Decoded finish_decode(cplx a0, cplx a1) {
  return Decoded{a0, a1, 1.0 - std::norm(a0) - std::norm(a1)};
}

}  // namespace detail

inline Decoded decode(const HalfLineState& psi, const Envelope& env) {
  if (!(psi.basis == env.basis())) throw std::invalid_argument("state and envelope use different bases");
  cplx a0{};
  cplx a1{};
  for (std::size_t m = 0; m < psi.right.size(); ++m) {
    a0 += env.coefficients()[m] * psi.right[m];
    a1 += env.coefficients()[m] * psi.left[m];
  }
  return detail::finish_decode(a0, a1);
}

inline Decoded decode(const OscCoeffs& psi, const Envelope& env) { return decode(psi.to_sides(), env); }

inline Decoded decode(const GridState& psi, const Envelope& env) {
  const double h = psi.grid.spacing();
  return detail::finish_decode(grid_overlap(sample_envelope(psi.grid, env, Side::Right), psi.values, h),
                               grid_overlap(sample_envelope(psi.grid, env, Side::Left), psi.values, h));
}

/// |Tr(A^dagger B)| / 2, clipped to 1 against rounding.
inline double gate_fidelity(const Mat2& a, const Mat2& b) {
  return std::min(1.0, std::abs((a.adjoint() * b).trace()) / 2.0);
}

/// Conjugation by the Hadamard matrix, which maps the left/right basis to the
/// symmetric/antisymmetric one and back.
inline GateMatrix change_basis(const GateMatrix& g, Basis to) {
  if (g.basis == to) return g;
  const Mat2& h = UnitaryMatrix2::hadamard().matrix();
  return GateMatrix{h * g.matrix * h, g.leakage, to};
}

inline double gate_fidelity(const GateMatrix& a, const GateMatrix& b) {
  return gate_fidelity(a.matrix, change_basis(b, a.basis).matrix);
}

}  // namespace qabacus
