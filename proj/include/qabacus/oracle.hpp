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
 * oracle.hpp: brute-force finite-difference ground truth.
 *
 * Nodes sit at x_j = -L + (j + 1/2) h, so the origin falls midway between
 * nodes m = n/2 - 1 and p = n/2 and no node ever sees 1/x^2 at 0. The outer
 * boundary is a hard wall one half-spacing beyond the last node.
 *
 * Interface. Each side is continued by one ghost value across the origin,
 * g_R at x = -h/2 (right function) and g_L at x = +h/2 (left function). With
 * u = (psi_p, psi_m) and v = (g_R, g_L) the centered two-point formulas
 *
 *     Psi  = (u + v) / 2,    Psi' = (u - v) / h
 *
 * are second-order at x = 0, and the connection condition becomes linear in
 * v:  v = K u,  K = -[a (U - I) - i (U + I)]^-1 [a (U - I) + i (U + I)],
 * a = h/2. In the eigenbasis of U, K has real eigenvalues
 * (cos(phi/2) + a sin(phi/2)) / (cos(phi/2) - a sin(phi/2)), so K is
 * Hermitian and the discrete Hamiltonian stays Hermitian and tridiagonal.
 * For every sigma(mu, nu), K = sigma(mu, nu) exactly, so the discrete problem
 * splits into Neumann and Dirichlet halves just like the continuum one.
 */

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qabacus/barrier.hpp"
#include "qabacus/error.hpp"
#include "qabacus/format.hpp"
#include "qabacus/spectral.hpp"

namespace qabacus {

class Grid {
 public:
  Grid(double half_width, int points) : half_width_(half_width), n_(points) {
    if (!(half_width > 0.0)) throw std::invalid_argument("grid half-width must be positive");
    if (points < 8 || points % 2 != 0) throw std::invalid_argument("grid point count must be even and >= 8");
  }

  /// L = 10 / sqrt(omega).
  static Grid standard(double omega, int points = 2048) {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    return Grid(10.0 / std::sqrt(omega), points);
  }

  double half_width() const { return half_width_; }
  int size() const { return n_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  double node(int j) const { return -half_width_ + (j + 0.5) * spacing(); }
  /// First node with x > 0.
  int first_right() const { return n_ / 2; }

 private:
  double half_width_;
  int n_;
};

struct GridState {
  Grid grid;
  std::vector<cplx> values;

  double norm_squared() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return s * grid.spacing();
  }

  void normalize() {
    const double n = std::sqrt(norm_squared());
    if (!(n > 0.0)) throw std::invalid_argument("cannot normalize a zero grid state");
    for (auto& v : values) v /= n;
  }
};

/// Hermitian tridiagonal operator; the sub-diagonal is conj(upper).
struct TridiagonalHamiltonian {
  Grid grid;
  std::vector<double> diag;
  std::vector<cplx> upper;

  std::vector<cplx> apply(const std::vector<cplx>& psi) const {
    const std::size_t n = diag.size();
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = diag[j] * psi[j];
      if (j + 1 < n) s += upper[j] * psi[j + 1];
      if (j > 0) s += std::conj(upper[j - 1]) * psi[j - 1];
      out[j] = s;
    }
    return out;
  }
};

/// Ghost-elimination matrix K for barrier u at spacing h (see file comment).
inline Mat2 interface_ghost_matrix(const UnitaryMatrix2& u, double h) {
  const Mat2 id = Mat2::Identity();
  const double a = 0.5 * h;
  const Mat2 lhs = a * (u.matrix() - id) - kI * (u.matrix() + id);
  const Mat2 rhs = a * (u.matrix() - id) + kI * (u.matrix() + id);
  const auto lu = lhs.fullPivLu();
  if (std::abs(lhs.determinant()) < 1e-12) {
    throw ResolutionError("attractive wall strength ~2/h; refine the grid");
  }
  Mat2 k = -lu.solve(rhs);
  return 0.5 * (k + k.adjoint());
}

inline TridiagonalHamiltonian build_hamiltonian(const Grid& grid, const PotentialSpec& pot,
                                                const UnitaryMatrix2& u) {
  if (pot.omega < 0.0) throw std::invalid_argument("omega must be non-negative");
  const int n = grid.size();
  const double h = grid.spacing();
  if (pot.omega > 0.0 && grid.half_width() < 8.0 / std::sqrt(pot.omega)) {
    throw ResolutionError("grid half-width below 8/sqrt(omega) cuts the oscillator tails");
  }
  TridiagonalHamiltonian ham{grid, std::vector<double>(n), std::vector<cplx>(n - 1, cplx(-0.5 / (h * h)))};
  double vmax = 0.0;
  for (int j = 0; j < n; ++j) {
    const double v = pot(grid.node(j));
    vmax = std::max(vmax, std::abs(v));
    ham.diag[j] = 1.0 / (h * h) + v;
  }
  if (h * std::sqrt(vmax) >= 0.5) {
    throw ResolutionError("h * sqrt(max|V|) = " + format_double(h * std::sqrt(vmax)) + " >= 0.5");
  }
  const Mat2 k = interface_ghost_matrix(u, h);
  const int p = grid.first_right();
  const int m = p - 1;
  ham.diag[p] += -0.5 * k(0, 0).real() / (h * h);
  ham.diag[m] += -0.5 * k(1, 1).real() / (h * h);
  ham.upper[m] = -0.5 * k(1, 0) / (h * h);
  return ham;
}

/// Crank-Nicolson: (1 + i dt H / 2) psi' = (1 - i dt H / 2) psi. The step
/// count is ceil(t_total / dt) and dt is shrunk to land on t_total exactly.
inline GridState propagate(const GridState& state, const TridiagonalHamiltonian& ham, double t_total,
                           double dt) {
  if (!(dt > 0.0) || t_total < 0.0) throw std::invalid_argument("invalid time step or duration");
  if (state.values.size() != ham.diag.size()) throw std::invalid_argument("state and Hamiltonian sizes differ");
  const std::size_t n = ham.diag.size();
  const long steps = t_total == 0.0 ? 0 : static_cast<long>(std::ceil(t_total / dt - 1e-9));
  if (steps == 0) return state;
  const double tau = t_total / static_cast<double>(steps);
  const cplx z = 0.5 * kI * tau;

  // Thomas factorization of the implicit matrix, reused every step.
  std::vector<cplx> sup(n - 1);
  std::vector<cplx> sub(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    sup[j] = z * ham.upper[j];
    sub[j] = z * std::conj(ham.upper[j]);
  }
  std::vector<cplx> cprime(n);
  std::vector<cplx> inv_pivot(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx piv = 1.0 + z * ham.diag[j];
    if (j > 0) piv -= sub[j - 1] * cprime[j - 1];
    if (std::abs(piv) < 1e-300) throw LinearSolveError("singular Crank-Nicolson step matrix");
    inv_pivot[j] = 1.0 / piv;
    if (j + 1 < n) cprime[j] = sup[j] * inv_pivot[j];
  }

  GridState out = state;
  std::vector<cplx> rhs(n);
  auto& psi = out.values;
  for (long s = 0; s < steps; ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx r = (1.0 - z * ham.diag[j]) * psi[j];
      if (j + 1 < n) r -= sup[j] * psi[j + 1];
      if (j > 0) r -= sub[j - 1] * psi[j - 1];
      rhs[j] = r;
    }
    // forward sweep then back substitution
    rhs[0] *= inv_pivot[0];
    for (std::size_t j = 1; j < n; ++j) rhs[j] = (rhs[j] - sub[j - 1] * rhs[j - 1]) * inv_pivot[j];
    for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= cprime[j] * rhs[j + 1];
    psi.swap(rhs);
  }
  return out;
}

/// Lowest `count` (<= 12) eigenvalues of the discrete Hamiltonian.
inline std::vector<double> stationary_spectrum(const Grid& grid, const PotentialSpec& pot,
                                               const UnitaryMatrix2& u, int count) {
  if (count < 1 || count > 12) throw std::invalid_argument("count must be in [1, 12]");
  const auto ham = build_hamiltonian(grid, pot, u);
  const int n = grid.size();
  Eigen::VectorXd d(n);
  Eigen::VectorXd e(n - 1);
  for (int j = 0; j < n; ++j) d(j) = ham.diag[j];
  // a diagonal phase similarity makes the off-diagonal real and non-negative
  for (int j = 0; j + 1 < n; ++j) e(j) = std::abs(ham.upper[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolve failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + count};
}

/// Same as stationary_spectrum evaluated on grids with n and 2n points and
/// Richardson-extrapolated for an O(h^2) scheme.
inline std::vector<double> stationary_spectrum_extrapolated(double half_width, int points,
                                                            const PotentialSpec& pot,
                                                            const UnitaryMatrix2& u, int count) {
  const auto coarse = stationary_spectrum(Grid(half_width, points), pot, u, count);
  const auto fine = stationary_spectrum(Grid(half_width, 2 * points), pot, u, count);
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

/// Quadratic one-sided extrapolants of psi and psi' at 0+ and 0- from the
/// three nodes nearest the origin on each side.
inline BoundaryData interface_extrapolants(const GridState& s) {
  const double h = s.grid.spacing();
  const int p = s.grid.first_right();
  const auto& v = s.values;
  BoundaryData bd;
  bd.psi_plus = (15.0 * v[p] - 10.0 * v[p + 1] + 3.0 * v[p + 2]) / 8.0;
  bd.dpsi_plus = (-2.0 * v[p] + 3.0 * v[p + 1] - v[p + 2]) / h;
  bd.psi_minus = (15.0 * v[p - 1] - 10.0 * v[p - 2] + 3.0 * v[p - 3]) / 8.0;
  bd.dpsi_minus = (2.0 * v[p - 1] - 3.0 * v[p - 2] + v[p - 3]) / h;
  return bd;
}

/// The envelope placed on one side of the grid, normalized in the discrete
/// norm.
inline std::vector<cplx> sample_envelope(const Grid& grid, const Envelope& env, Side side) {
  std::vector<cplx> out(static_cast<std::size_t>(grid.size()));
  double n2 = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    const bool right = x > 0.0;
    if (right != (side == Side::Right)) continue;
    const double v = env.value(x);
    out[j] = v;
    n2 += v * v;
  }
  const double scale = 1.0 / std::sqrt(n2 * grid.spacing());
  for (auto& v : out) v *= scale;
  return out;
}

inline cplx grid_overlap(const std::vector<cplx>& bra, const std::vector<cplx>& ket, double h) {
  cplx s{};
  for (std::size_t j = 0; j < bra.size(); ++j) s += std::conj(bra[j]) * ket[j];
  return s * h;
}

/// Writes "x,re_psi,im_psi" rows with a header.
inline void write_csv(std::ostream& os, const GridState& s) {
  os << "x,re_psi,im_psi\n";
  for (int j = 0; j < s.grid.size(); ++j) {
    os << format_double(s.grid.node(j)) << ',' << format_double(s.values[j].real()) << ','
       << format_double(s.values[j].imag()) << '\n';
  }
}

struct PacketSetup {
  double width = 4.0;    ///< position standard deviation
  double start = -20.0;  ///< initial center, left of the barrier
};

struct ScatterProbabilities {
  double transmission = 0.0;
  double reflection = 0.0;
};

/// Sends a Gaussian packet with carrier k0 from the left through u on the
/// free line and measures the probability on each side once the packet has
/// split. Stepping resolves the carrier with k0 h <= 0.1.
inline ScatterProbabilities wavepacket_scatter(const UnitaryMatrix2& u, double k0,
                                               const PacketSetup& setup = {}) {
  if (!(k0 > 0.0)) throw std::invalid_argument("carrier wavenumber must be positive");
  if (setup.width * k0 < 5.0) throw ResolutionError("packet width must be >> 1/k0");
  if (!(setup.start < 0.0)) throw std::invalid_argument("packet must start left of the barrier");
  const double distance = -setup.start;
  const double t_total = 2.0 * distance / k0;
  const double sigma = setup.width;
  const double spread = sigma * std::sqrt(1.0 + std::pow(t_total / (2.0 * sigma * sigma), 2));
  const double half_width = distance + 8.0 * spread + 10.0;
  const double h_target = std::min(0.05, 0.1 / k0);
  int n = static_cast<int>(std::ceil(2.0 * half_width / h_target));
  n += n % 2;
  const Grid grid(half_width, n);
  PotentialSpec free_line;
  free_line.omega = 0.0;
  const auto ham = build_hamiltonian(grid, free_line, u);

  GridState s{grid, std::vector<cplx>(static_cast<std::size_t>(n))};
  for (int j = 0; j < n; ++j) {
    const double x = grid.node(j);
    const double d = (x - setup.start) / (2.0 * sigma);
    s.values[j] = std::exp(-d * d) * std::polar(1.0, k0 * x);
  }
  s.normalize();
  const double dt = std::min(0.02, 0.25 / (k0 * k0));
  const auto out = propagate(s, ham, t_total, dt);
  ScatterProbabilities pr;
  for (int j = 0; j < n; ++j) {
    (grid.node(j) > 0.0 ? pr.transmission : pr.reflection) += std::norm(out.values[j]) * grid.spacing();
  }
  return pr;
}

enum class ConvergenceScenario {
  FreeGroundEnergy,  ///< |E_0 - omega/2| / omega with the free point sigma_1
  HadamardGate,      ///< max amplitude error of one sigma(pi/2, 0) half-period
  WallPhaseGate,     ///< max amplitude error of Wall(theta = pi, v+ = omega/4)
};

struct ConvergenceReport {
  ConvergenceScenario scenario{};
  std::vector<int> points;
  std::vector<double> spacing;
  std::vector<double> error;
  /// order[i] = log2(error[i] / error[i + 1])
  std::vector<double> order;

  double min_order() const {
    double m = order.empty() ? 0.0 : order.front();
    for (double o : order) m = std::min(m, o);
    return m;
  }
  bool monotone() const {
    for (std::size_t i = 1; i < error.size(); ++i) {
      if (!(error[i] < error[i - 1])) return false;
    }
    return true;
  }
};

namespace detail {

/// Max amplitude error of a one-half-period pulse against the exact columns,
/// phases relative to the free ground state. dt = T / (2 n).
inline double gate_error_on_grid(int points, double omega, const UnitaryMatrix2& u, const PotentialSpec& pot,
                                 const Mat2& exact) {
  const Grid grid = Grid::standard(omega, points);
  const auto ham = build_hamiltonian(grid, pot, u);
  const Envelope env = Envelope::standard(HOBasisSpec{omega, 64});
  const double period = kTwoPi / omega;
  const std::vector<cplx> basis[2] = {sample_envelope(grid, env, Side::Right),
                                      sample_envelope(grid, env, Side::Left)};
  double err = 0.0;
  for (int col = 0; col < 2; ++col) {
    GridState s{grid, basis[col]};
    const auto out = propagate(s, ham, period / 2.0, period / (2.0 * points));
    for (int row = 0; row < 2; ++row) {
      const cplx amp = kI * grid_overlap(basis[row], out.values, grid.spacing());
      err = std::max(err, std::abs(amp - exact(row, col)));
    }
  }
  return err;
}

}  // namespace detail

/// Error-versus-spacing table over a point-count doubling sequence.
inline ConvergenceReport convergence_report(ConvergenceScenario scenario, std::span<const int> points,
                                            double omega = 1.0) {
  if (points.size() < 3) throw std::invalid_argument("need at least three grid levels");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] != 2 * points[i - 1]) throw std::invalid_argument("grid levels must halve h");
  }
  ConvergenceReport rep;
  rep.scenario = scenario;
  PotentialSpec pot;
  pot.omega = omega;
  for (int n : points) {
    const Grid grid = Grid::standard(omega, n);
    double err = 0.0;
    switch (scenario) {
      case ConvergenceScenario::FreeGroundEnergy: {
        const auto ev = stationary_spectrum(grid, pot, UnitaryMatrix2::pauli_x(), 1);
        err = std::abs(ev[0] - 0.5 * omega) / omega;
        break;
      }
      case ConvergenceScenario::HadamardGate: {
        const Mat2 exact = sigma_matrix(kPi / 2.0, 0.0);
        err = detail::gate_error_on_grid(n, omega, UnitaryMatrix2(exact), pot, exact);
        break;
      }
      case ConvergenceScenario::WallPhaseGate: {
        PotentialSpec wall = pot;
        wall.v_add_right = 0.25 * omega;
        Mat2 exact = Mat2::Zero();
        exact(0, 0) = -std::polar(1.0, -0.25 * kPi);
        exact(1, 1) = -1.0;
        err = detail::gate_error_on_grid(n, omega, robin_wall(kPi, kPi), wall, exact);
        break;
      }
    }
    rep.points.push_back(n);
    rep.spacing.push_back(grid.spacing());
    rep.error.push_back(err);
  }
  for (std::size_t i = 1; i < rep.error.size(); ++i) {
    rep.order.push_back(std::log2(rep.error[i - 1] / rep.error[i]));
  }
  return rep;
}

}  // namespace qabacus
