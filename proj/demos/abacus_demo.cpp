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


// Walks one qubit through the gate set: NOT, Hadamard, the offset phase wall,
// a generic Robin wall that corrupts the envelope, and a compiled T gate.

#include <cstdio>

#include "qabacus.hpp"

using namespace qabacus;

namespace {

void show(const char* label, const GateMatrix& g) {
  std::printf("%s  (leakage %.3g)\n", label, g.leakage);
  for (int r = 0; r < 2; ++r) {
    std::printf("    [% .6f%+.6fi  % .6f%+.6fi]\n", g.matrix(r, 0).real(), g.matrix(r, 0).imag(),
                g.matrix(r, 1).real(), g.matrix(r, 1).imag());
  }
}

}  // namespace

int main() {
  const double omega = 1.0;
  const Envelope env = Envelope::standard(HOBasisSpec{omega, 64});

  show("sigma(pi, 0), NOT", effective_gate(PulseSchedule{omega, {Pulse::sigma(kPi, 0.0)}}, env));
  show("sigma(pi/2, 0), Hadamard", effective_gate(PulseSchedule{omega, {Pulse::sigma(kPi / 2.0, 0.0)}}, env));
  show("Dirichlet walls, v+ = omega/4",
       effective_gate(PulseSchedule{omega, {Pulse::wall(kPi, kPi, 0.25 * omega, 0.0)}}, env));
  show("Robin walls at theta = pi/2",
       effective_gate(PulseSchedule{omega, {Pulse::wall(kPi / 2.0, kPi / 2.0, 0.0, 0.0)}}, env));

  const auto t_gate = compile_gate(UnitaryMatrix2::diagonal(0.0, kPi / 4.0), omega);
  std::printf("\ncompiled T gate:\n%s", emit_schedule(t_gate).c_str());
  const auto report = verify_schedule(t_gate, env);
  std::printf("analytic vs grid: max deviation %.3g, fidelity %.12f\n", report.max_deviation, report.fidelity);

  std::printf("\nRobin levels at theta = pi/2:");
  for (double e : robin_spectrum(kPi / 2.0, omega, 6).levels) std::printf(" %.6f", e);
  std::printf("\n");
  return 0;
}
