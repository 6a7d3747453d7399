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
 * barrier.hpp: the U(2) family of point interactions at the origin.
 *
 * Units: hbar = m = 1 and an implicit unit length in the boundary condition
 *
 *     (U - I) Psi + i (U + I) Psi' = 0,
 *     Psi  = (psi(0+),  psi(0-)),
 *     Psi' = (psi'(0+), -psi'(0-)),
 *
 * which adds values and derivatives, so every angle below is dimensionless.
 *
 * Every U factors as U = sigma(mu, nu) D sigma(mu, nu) with
 *
 *     D     = diag(e^{i theta+}, e^{i theta-})        (spectral torus)
 *     sigma = [[cos(mu/2),          e^{i nu} sin(mu/2)],
 *              [e^{-i nu} sin(mu/2), -cos(mu/2)      ]] (isospectral sphere)
 *
 * sigma is a Hermitian involution, so sigma D sigma = sigma D sigma^-1 and the
 * columns of sigma are eigenvectors of U.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qabacus/error.hpp"

namespace qabacus {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Reduces an angle to [0, 2*pi).
inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

inline double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

/// Distance of m from the unitary group, max-entry norm of m^dagger m - I.
inline double unitarity_defect(const Mat2& m) {
  return max_abs(m.adjoint() * m - Mat2::Identity());
}

/// A 2x2 matrix that is unitary to 1e-12 (checked on construction).
class UnitaryMatrix2 {
 public:
  static constexpr double kTolerance = 1e-12;

  UnitaryMatrix2() : m_(Mat2::Identity()) {}

  explicit UnitaryMatrix2(const Mat2& m) : m_(m) {
    if (!m.allFinite() || unitarity_defect(m) >= kTolerance) {
      throw std::invalid_argument("matrix is not unitary (defect " +
                                  std::to_string(unitarity_defect(m)) + ")");
    }
  }

  /// Closest unitary in the polar sense (W V^dagger of the SVD). Used for
  /// user-supplied matrices typed with finite precision.
  static UnitaryMatrix2 nearest(const Mat2& m) {
    Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().minCoeff() < 1e-8) {
      throw std::invalid_argument("matrix is singular; no unitary projection");
    }
    return UnitaryMatrix2(Mat2(svd.matrixU() * svd.matrixV().adjoint()));
  }

  static UnitaryMatrix2 identity() { return UnitaryMatrix2(); }
  static UnitaryMatrix2 pauli_x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return UnitaryMatrix2(m);
  }
  static UnitaryMatrix2 pauli_z() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return UnitaryMatrix2(m);
  }
  static UnitaryMatrix2 hadamard() {
    const double r = std::numbers::sqrt2 / 2.0;
    Mat2 m;
    m << r, r, r, -r;
    return UnitaryMatrix2(m);
  }
  static UnitaryMatrix2 diagonal(double phase0, double phase1) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::polar(1.0, phase0);
    m(1, 1) = std::polar(1.0, phase1);
    return UnitaryMatrix2(m);
  }

  const Mat2& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  UnitaryMatrix2 operator*(const UnitaryMatrix2& o) const {
    return UnitaryMatrix2(Mat2(m_ * o.m_));
  }
  UnitaryMatrix2 adjoint() const { return UnitaryMatrix2(Mat2(m_.adjoint())); }

 private:
  Mat2 m_;
};

/// A point (theta+, theta-, mu, nu) on torus x sphere.
struct BarrierParams {
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double mu = 0.0;
  double nu = 0.0;

  /// Angles mod 2*pi, mu clamped to [0, pi]. sigma(0, nu) does not depend on
  /// nu, and a degenerate D = e^{i theta} I hides sigma entirely; both cases
  /// canonicalize to mu = nu = 0 (the latter also resets mu).
  BarrierParams canonical() const {
    BarrierParams p;
    p.theta_plus = wrap_angle(theta_plus);
    p.theta_minus = wrap_angle(theta_minus);
    p.mu = std::clamp(mu, 0.0, kPi);
    p.nu = wrap_angle(nu);
    if (p.theta_plus == p.theta_minus) {
      p.mu = 0.0;
      p.nu = 0.0;
    }
    if (p.mu == 0.0) p.nu = 0.0;
    return p;
  }
};

/// sigma(mu, nu); Hermitian, unitary, squares to I.
inline Mat2 sigma_matrix(double mu, double nu) {
  const double c = std::cos(mu / 2.0);
  const double s = std::sin(mu / 2.0);
  Mat2 m;
  m << c, std::polar(s, nu), std::polar(s, -nu), -c;
  return m;
}

inline UnitaryMatrix2 compose_u(const BarrierParams& params) {
  const Mat2 sig = sigma_matrix(params.mu, params.nu);
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::polar(1.0, params.theta_plus);
  d(1, 1) = std::polar(1.0, params.theta_minus);
  return UnitaryMatrix2(Mat2(sig * d * sig));
}

/// Inverse of compose_u.
///
/// Ordering: the two eigenphases are reduced to [0, 2*pi) and theta+ is the
/// smaller one. Its eigenvector v is rephased so that v(0) is real and
/// non-negative; then v = (cos(mu/2), e^{-i nu} sin(mu/2)). When v(0) or
/// v(1) vanishes (mu = pi or mu = 0) U no longer depends on nu and nu = 0 is
/// returned. Eigenphases closer than 1e-13 give the canonical (theta, theta,
/// 0, 0).
inline BarrierParams decompose_u(const UnitaryMatrix2& u) {
  const Mat2& m = u.matrix();
  const cplx tr = m.trace();
  const cplx det = m.determinant();
  const cplx disc = std::sqrt(tr * tr - 4.0 * det);
  const cplx l1 = 0.5 * (tr + disc);
  const cplx l2 = 0.5 * (tr - disc);

  BarrierParams p;
  if (std::abs(l1 - l2) < 1e-13) {
    p.theta_plus = p.theta_minus = wrap_angle(std::arg(0.5 * tr));
    return p;
  }
  const double a1 = wrap_angle(std::arg(l1));
  const double a2 = wrap_angle(std::arg(l2));
  const cplx lp = a1 <= a2 ? l1 : l2;
  p.theta_plus = std::min(a1, a2);
  p.theta_minus = std::max(a1, a2);

  // Two candidate eigenvectors for lp; the longer one is better conditioned.
  Vec2 va(m(0, 1), lp - m(0, 0));
  Vec2 vb(lp - m(1, 1), m(1, 0));
  Vec2 v = va.norm() >= vb.norm() ? va : vb;
  v /= v.norm();

  constexpr double kTiny = 1e-15;
  if (std::abs(v(0)) > kTiny) {
    v *= std::conj(v(0)) / std::abs(v(0));
  }
  p.mu = 2.0 * std::atan2(std::abs(v(1)), std::abs(v(0)));
  if (std::abs(v(0)) > kTiny && std::abs(v(1)) > kTiny) {
    p.nu = wrap_angle(-std::arg(v(1)));
  }
  return p;
}

/// Boundary values of a wavefunction at both sides of the origin.
struct BoundaryData {
  cplx psi_plus{};
  cplx psi_minus{};
  cplx dpsi_plus{};
  cplx dpsi_minus{};

  Vec2 values() const { return Vec2(psi_plus, psi_minus); }
  /// Note the sign on the left derivative.
  Vec2 derivatives() const { return Vec2(dpsi_plus, -dpsi_minus); }
};

/// (U - I) Psi + i (U + I) Psi'; zero iff bd satisfies the connection
/// condition of U.
inline Vec2 boundary_residual(const UnitaryMatrix2& u, const BoundaryData& bd) {
  const Mat2 id = Mat2::Identity();
  return (u.matrix() - id) * bd.values() +
         kI * (u.matrix() + id) * bd.derivatives();
}

/// Connection parameter of the scale-invariant barrier sigma(mu, nu):
/// psi(0+) = lambda psi(0-), psi'(0+) = psi'(0-) / conj(lambda), with
/// |lambda| = sqrt((1 + cos(mu/2)) / (1 - cos(mu/2))) = cot(mu/4).
///
/// The cosine argument is mu/2. Reading it as (cos mu)/2 would not match the
/// eigenvector ratio of sigma(mu, nu); with mu/2 it does exactly.
inline cplx lambda_param(double mu, double nu) {
  if (!(mu > 0.0)) {
    throw DegenerateDecoupled(
        "lambda diverges at mu = 0: the barrier decouples the half-lines");
  }
  if (mu > kPi) throw std::invalid_argument("mu must lie in (0, pi]");
  const double c = std::cos(mu / 2.0);
  return std::polar(std::sqrt((1.0 + c) / (1.0 - c)), nu);
}

/// The U(2) realization of a hard wall with Robin angles (theta_right,
/// theta_left): psi'(0+) = tan(theta_right/2) psi(0+) on the right and
/// -psi'(0-) = tan(theta_left/2) psi(0-) on the left, i.e. the derivative
/// taken into each half-line. theta = 0 is Neumann, theta = pi Dirichlet, and
/// theta in (0, pi) interpolates with energies rising from the Neumann to the
/// Dirichlet level. In the D-parameterization this is D(-theta_right,
/// -theta_left).
inline UnitaryMatrix2 robin_wall(double theta_right, double theta_left) {
  return UnitaryMatrix2::diagonal(-theta_right, -theta_left);
}

/// Plane-wave amplitudes on the free line, hbar = m = 1, energy k^2/2.
/// "left" means incidence from x < 0 moving right.
struct ScatterCoeffs {
  cplx r_left{};
  cplx t_left{};
  cplx r_right{};
  cplx t_right{};
  double k = 0.0;
};

/// Solves the connection condition for e^{ikx} + r e^{-ikx} | t e^{ikx} and
/// its mirror. The outgoing amplitudes are S = -A^-1 B with
/// A = (1-k) U - (1+k) I, B = (1+k) U - (1-k) I acting on the incoming
/// (right, left) pair; eigenphase 0 or pi of U maps to S-eigenvalue +1 or -1
/// for every k, which is why the sigma barriers transmit |t|^2 = sin^2(mu/2)
/// at all energies.
inline ScatterCoeffs scattering_coefficients(const UnitaryMatrix2& u, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
  const Mat2 id = Mat2::Identity();
  const Mat2 a = (1.0 - k) * u.matrix() - (1.0 + k) * id;
  const Mat2 b = (1.0 + k) * u.matrix() - (1.0 - k) * id;
  const Mat2 s = -a.partialPivLu().solve(b);
  ScatterCoeffs out;
  out.k = k;
  out.r_right = s(0, 0);
  out.t_right = s(1, 0);
  out.t_left = s(0, 1);
  out.r_left = s(1, 1);
  return out;
}

}  // namespace qabacus
