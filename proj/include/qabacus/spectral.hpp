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
 * spectral.hpp: oscillator eigenbasis, the sigma-barrier eigenfunctions, the
 * half-line state representations used by the analytic propagator, and the
 * spectrum of the half-line oscillator with a Robin wall.
 *
 * Half-line profiles are expanded in the Neumann functions
 *
 *     N_m(x) = sqrt(2) chi_{2m}(x),   x > 0,   m = 0 .. n_max/2,
 *
 * which are orthonormal on (0, inf). A state of the cut oscillator is a pair
 * (f, g) of such profiles: psi(x) = f(x) for x > 0 and g(|x|) for x < 0.
 */

#pragma once

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qabacus/barrier.hpp"
#include "qabacus/error.hpp"

namespace qabacus {

/// Background potential omega^2 x^2 / 2 + g / x^2 plus a constant offset on
/// each side. omega = 0 selects the free line (used by scattering runs).
struct PotentialSpec {
  double omega = 1.0;
  double g = 0.0;
  double v_add_right = 0.0;
  double v_add_left = 0.0;

  double period() const {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    return kTwoPi / omega;
  }

  double operator()(double x) const {
    double v = 0.5 * omega * omega * x * x + (x > 0.0 ? v_add_right : v_add_left);
    if (g != 0.0) v += g / (x * x);
    return v;
  }
};

struct HOBasisSpec {
  double omega = 1.0;
  int n_max = 64;

  /// Number of Neumann profiles N_m per side.
  int profile_count() const { return n_max / 2 + 1; }

  void validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("basis omega must be positive");
    if (n_max < 2 || n_max % 2 != 0) {
      throw std::invalid_argument("n_max must be even and >= 2");
    }
  }
};

inline bool operator==(const HOBasisSpec& a, const HOBasisSpec& b) {
  return a.omega == b.omega && a.n_max == b.n_max;
}

/// chi_0 .. chi_{n_max} at x by the three-term recurrence
/// chi_k = sqrt(2/k) xi chi_{k-1} - sqrt((k-1)/k) chi_{k-2}, xi = sqrt(omega) x.
/// Beyond |xi| = 40 everything has underflowed and zeros are returned.
inline std::vector<double> ho_values(int n_max, double omega, double x) {
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  const double xi = std::sqrt(omega) * x;
  if (std::abs(xi) > 40.0) return out;
  out[0] = std::pow(omega / kPi, 0.25) * std::exp(-0.5 * xi * xi);
  if (n_max >= 1) out[1] = std::numbers::sqrt2 * xi * out[0];
  for (int k = 2; k <= n_max; ++k) {
    out[k] = std::sqrt(2.0 / k) * xi * out[k - 1] -
             std::sqrt((k - 1.0) / k) * out[k - 2];
  }
  return out;
}

inline double ho_eigenfunction(int n, double omega, double x) {
  if (n < 0) throw std::invalid_argument("negative oscillator index");
  return ho_values(n, omega, x)[n];
}

/// chi_n'(x) = sqrt(omega/2) (sqrt(n) chi_{n-1} - sqrt(n+1) chi_{n+1}).
inline double ho_eigenfunction_derivative(int n, double omega, double x) {
  if (n < 0) throw std::invalid_argument("negative oscillator index");
  const auto v = ho_values(n + 1, omega, x);
  const double lower = n > 0 ? std::sqrt(static_cast<double>(n)) * v[n - 1] : 0.0;
  return std::sqrt(omega / 2.0) * (lower - std::sqrt(n + 1.0) * v[n + 1]);
}

/// N_m(0) = sqrt(2) chi_{2m}(0) for m < count, from
/// chi_{2m}(0) = -sqrt((2m-1)/(2m)) chi_{2m-2}(0).
inline std::vector<double> neumann_values_at_origin(int count, double omega) {
  std::vector<double> out(static_cast<std::size_t>(count));
  double chi = std::pow(omega / kPi, 0.25);
  for (int m = 0; m < count; ++m) {
    if (m > 0) chi *= -std::sqrt((2.0 * m - 1.0) / (2.0 * m));
    out[m] = std::numbers::sqrt2 * chi;
  }
  return out;
}

/// Eigenfunctions of the oscillator cut by sigma(mu, nu), lambda =
/// lambda_param(mu, nu), normalization N = sqrt(2 / (|lambda|^2 + 1)):
///   even n: N [lambda chi_n(|x|) Theta(x) + chi_n(|x|) Theta(-x)]
///   odd n:  N [chi_n(|x|) Theta(x) - conj(lambda) chi_n(|x|) Theta(-x)]
/// Energies stay (n + 1/2) omega. x = 0 returns the right-hand limit.
inline cplx sigma_eigenfunction(cplx lambda, int n, double omega, double x) {
  if (!std::isfinite(std::abs(lambda)) || lambda == cplx{}) {
    throw std::invalid_argument("lambda must be finite and nonzero");
  }
  const double norm = std::sqrt(2.0 / (std::norm(lambda) + 1.0));
  const double chi = ho_eigenfunction(n, omega, std::abs(x));
  const bool right = x >= 0.0;
  if (n % 2 == 0) return norm * (right ? lambda * chi : cplx(chi));
  return norm * (right ? cplx(chi) : -std::conj(lambda) * chi);
}

/// d/dx of sigma_eigenfunction; x = 0 returns the right-hand limit.
inline cplx sigma_eigenfunction_derivative(cplx lambda, int n, double omega, double x) {
  if (!std::isfinite(std::abs(lambda)) || lambda == cplx{}) {
    throw std::invalid_argument("lambda must be finite and nonzero");
  }
  const double norm = std::sqrt(2.0 / (std::norm(lambda) + 1.0));
  // d/dx chi_n(|x|) = sign(x) chi_n'(|x|)
  const bool right = x >= 0.0;
  const double d = (right ? 1.0 : -1.0) * ho_eigenfunction_derivative(n, omega, std::abs(x));
  if (n % 2 == 0) return norm * (right ? lambda * d : cplx(d));
  return norm * (right ? cplx(d) : -std::conj(lambda) * d);
}

/// Boundary data of a sigma eigenfunction at 0+/0-.
inline BoundaryData sigma_eigenfunction_boundary(cplx lambda, int n, double omega) {
  const double tiny = std::numeric_limits<double>::denorm_min();
  BoundaryData bd;
  bd.psi_plus = sigma_eigenfunction(lambda, n, omega, 0.0);
  bd.psi_minus = sigma_eigenfunction(lambda, n, omega, -tiny);
  bd.dpsi_plus = sigma_eigenfunction_derivative(lambda, n, omega, 0.0);
  bd.dpsi_minus = sigma_eigenfunction_derivative(lambda, n, omega, -tiny);
  return bd;
}

/// The fixed half-line profile S(x) carrying the qubit, unit norm on (0, inf).
class Envelope {
 public:
  static constexpr double kNormTolerance = 1e-10;
  static constexpr double kTailBound = 1e-8;

  Envelope(HOBasisSpec basis, std::vector<double> coefficients)
      : basis_(basis), coeffs_(std::move(coefficients)) {
    basis_.validate();
    if (static_cast<int>(coeffs_.size()) != basis_.profile_count()) {
      throw std::invalid_argument("envelope needs n_max/2 + 1 coefficients");
    }
    double n2 = 0.0;
    for (double c : coeffs_) n2 += c * c;
    if (std::abs(n2 - 1.0) > kNormTolerance) {
      throw std::invalid_argument("envelope is not unit-normalized");
    }
    if (coeffs_.back() * coeffs_.back() >= kTailBound) {
      throw TruncationError("envelope has weight " + std::to_string(coeffs_.back() * coeffs_.back()) +
                            " in the last retained profile");
    }
  }

  /// Half-line restriction of the oscillator ground state.
  static Envelope ground(HOBasisSpec basis = {}) { return neumann_mode(basis, 0); }

  static Envelope neumann_mode(HOBasisSpec basis, int m) {
    basis.validate();
    if (m < 0 || m >= basis.profile_count()) throw std::invalid_argument("profile index out of range");
    std::vector<double> c(static_cast<std::size_t>(basis.profile_count()), 0.0);
    c[m] = 1.0;
    return Envelope(basis, std::move(c));
  }

  /// xi^{2p} exp(-xi^2 / 2), xi = sqrt(omega) x. Vanishes at the origin to
  /// order 2p, and its expansion stops at N_p.
  static Envelope bump(HOBasisSpec basis = {}, int power = 2) {
    if (power < 0) throw std::invalid_argument("bump power must be >= 0");
    const double w = basis.omega;
    return from_profile(basis, [w, power](double x) {
      const double xi2 = w * x * x;
      return std::pow(xi2, power) * std::exp(-0.5 * xi2);
    });
  }

  /// Default carrier profile (the p = 2 bump).
  static Envelope standard(HOBasisSpec basis = {}) { return bump(basis, 2); }

  /// Projects an arbitrary half-line profile onto the Neumann functions and
  /// normalizes. The even extension f(|x|) is integrated on the full line with
  /// the trapezoid rule, which is spectrally accurate for smooth integrands.
  static Envelope from_profile(HOBasisSpec basis, const std::function<double(double)>& profile) {
    basis.validate();
    const int count = basis.profile_count();
    const double scale = 1.0 / std::sqrt(basis.omega);
    const double step = 0.02 * scale;
    const int half = static_cast<int>(std::ceil(16.0 / 0.02));
    std::vector<double> c(static_cast<std::size_t>(count), 0.0);
    for (int j = -half; j <= half; ++j) {
      const double x = j * step;
      const double f = profile(std::abs(x));
      if (f == 0.0) continue;
      const auto chi = ho_values(2 * count - 2, basis.omega, x);
      for (int m = 0; m < count; ++m) c[m] += chi[2 * m] * f;
    }
    double n2 = 0.0;
    for (double& v : c) {
      v *= step / std::numbers::sqrt2;
      n2 += v * v;
    }
    if (!(n2 > 0.0)) throw std::invalid_argument("profile has no weight in the basis");
    for (double& v : c) v /= std::sqrt(n2);
    return Envelope(basis, std::move(c));
  }

  /// Profile value at |x|.
  double value(double x) const {
    const auto chi = ho_values(2 * basis_.profile_count() - 2, basis_.omega, std::abs(x));
    double s = 0.0;
    for (std::size_t m = 0; m < coeffs_.size(); ++m) s += coeffs_[m] * chi[2 * m];
    return std::numbers::sqrt2 * s;
  }

  const HOBasisSpec& basis() const { return basis_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  HOBasisSpec basis_;
  std::vector<double> coeffs_;
};

/// A state as two half-line profiles over the Neumann functions:
/// psi(x) = sum_m right[m] N_m(x) for x > 0, sum_m left[m] N_m(|x|) for x < 0.
struct HalfLineState {
  HOBasisSpec basis;
  std::vector<cplx> right;
  std::vector<cplx> left;

  static HalfLineState zero(HOBasisSpec b) {
    b.validate();
    const auto k = static_cast<std::size_t>(b.profile_count());
    return HalfLineState{b, std::vector<cplx>(k), std::vector<cplx>(k)};
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& c : right) s += std::norm(c);
    for (const auto& c : left) s += std::norm(c);
    return s;
  }

  cplx value(double x) const {
    const auto& side = x >= 0.0 ? right : left;
    const auto chi = ho_values(2 * basis.profile_count() - 2, basis.omega, std::abs(x));
    cplx s{};
    for (std::size_t m = 0; m < side.size(); ++m) s += side[m] * chi[2 * m];
    return std::numbers::sqrt2 * s;
  }
};

enum class Side { Right, Left };

/// Amplitudes A_n of a state over the sigma-barrier family with connection
/// parameter lambda, in the (right, left) sector decomposition
///
///     psi = sum_m A_{2m} chi^lambda_{2m} + sum_m A_{2m+1} xi^lambda_{2m+1},
///
/// where chi^lambda_{2m} is the even eigenfunction and
/// xi^lambda_{2m+1} = N [chi_{2m}(|x|) Theta(x) - conj(lambda) chi_{2m}(|x|) Theta(-x)]
/// spans the odd sector on the same profiles. All even members gain the
/// ground-state phase after a half period and all odd members the opposite
/// sign, so this basis reproduces the half-period dynamics exactly while
/// keeping envelopes with S(0) != 0 finitely representable.
/// amplitudes.size() == 2 * basis.profile_count().
struct OscCoeffs {
  HOBasisSpec basis;
  cplx lambda{1.0, 0.0};
  std::vector<cplx> amplitudes;

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
  }

  static OscCoeffs from_sides(const HalfLineState& s, cplx lambda) {
    check_lambda(lambda);
    const double l2 = std::norm(lambda);
    // sqrt(2) / N = sqrt(1 + |lambda|^2)
    const double scale = std::sqrt(1.0 + l2);
    OscCoeffs out{s.basis, lambda, std::vector<cplx>(2 * s.right.size())};
    for (std::size_t m = 0; m < s.right.size(); ++m) {
      const cplx a = (std::conj(lambda) * s.right[m] + s.left[m]) / (1.0 + l2);
      const cplx b = (s.right[m] - lambda * s.left[m]) / (1.0 + l2);
      out.amplitudes[2 * m] = scale * a;
      out.amplitudes[2 * m + 1] = scale * b;
    }
    return out;
  }

  HalfLineState to_sides() const {
    check_lambda(lambda);
    const double scale = 1.0 / std::sqrt(1.0 + std::norm(lambda));
    HalfLineState s = HalfLineState::zero(basis);
    for (std::size_t m = 0; m < s.right.size(); ++m) {
      const cplx a = scale * amplitudes[2 * m];
      const cplx b = scale * amplitudes[2 * m + 1];
      s.right[m] = lambda * a + b;
      s.left[m] = a - std::conj(lambda) * b;
    }
    return s;
  }

  cplx value(double x) const { return to_sides().value(x); }

  /// Evolution by whole half-periods, phases relative to the free ground
  /// state: the even sector is unchanged and the odd sector flips sign.
  OscCoeffs advanced(int half_periods) const {
    OscCoeffs out = *this;
    if (half_periods % 2 != 0) {
      for (std::size_t n = 1; n < out.amplitudes.size(); n += 2) out.amplitudes[n] = -out.amplitudes[n];
    }
    return out;
  }

 private:
  static void check_lambda(cplx lambda) {
    if (!std::isfinite(std::abs(lambda)) || lambda == cplx{}) {
      throw std::invalid_argument("lambda must be finite and nonzero");
    }
  }
};

/// Coefficients of Theta(x) S(x) (side Right) or Theta(-x) S(|x|) (side Left).
/// For Right the sector amplitudes obey A_{2m+1} = A_{2m} / conj(lambda),
/// i.e. M(x) = -S(x) / lambda; for Left, A_{2m+1} = -lambda A_{2m}, i.e.
/// S(x) = M(x) / conj(lambda).
inline OscCoeffs expand_localized(const Envelope& env, Side side, cplx lambda) {
  HalfLineState s = HalfLineState::zero(env.basis());
  auto& target = side == Side::Right ? s.right : s.left;
  for (std::size_t m = 0; m < target.size(); ++m) target[m] = env.coefficients()[m];
  OscCoeffs out = OscCoeffs::from_sides(s, lambda);
  const std::size_t n = out.amplitudes.size();
  const double tail = std::max(std::norm(out.amplitudes[n - 1]), std::norm(out.amplitudes[n - 2]));
  if (tail >= Envelope::kTailBound) {
    throw TruncationError("expansion tail " + std::to_string(tail) + " exceeds bound");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Half-line oscillator with a Robin wall, psi'(0) = tan(theta/2) psi(0).
//
// The decaying solution at energy E = omega * eps is U(-eps, sqrt(2 omega) x)
// with logarithmic derivative at the wall
//
//     L(E) = -2 sqrt(omega) Gamma(3/4 - eps/2) / Gamma(1/4 - eps/2).
//
// Levels solve sin(theta/2) / Gamma(3/4 - eps/2) + 2 sqrt(omega) cos(theta/2)
// / Gamma(1/4 - eps/2) = 0; the function below is that expression times a
// positive factor chosen per regime so that no Gamma overflows.
// ---------------------------------------------------------------------------

namespace detail {

inline double robin_characteristic(double energy, double theta, double omega) {
  using boost::math::lgamma;
  using boost::math::sin_pi;
  const double eps = energy / omega;
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);
  const double rw = 2.0 * std::sqrt(omega);
  if (eps < 0.0) {
    // divided by 1/Gamma(1/4 - eps/2) > 0
    return s * std::exp(lgamma(0.25 - eps / 2.0) - lgamma(0.75 - eps / 2.0)) + rw * c;
  }
  // reflection formula, divided by Gamma(1/4 + eps/2) / pi > 0
  const double rho = std::exp(lgamma(0.75 + eps / 2.0) - lgamma(0.25 + eps / 2.0));
  return s * sin_pi(0.75 - eps / 2.0) + rw * c * sin_pi(0.25 - eps / 2.0) * rho;
}

enum class RobinKind { Neumann, Dirichlet, Repulsive, Attractive };

inline RobinKind robin_kind(double theta) {
  theta = wrap_angle(theta);
  if (theta == 0.0) return RobinKind::Neumann;
  if (theta == kPi) return RobinKind::Dirichlet;
  return theta < kPi ? RobinKind::Repulsive : RobinKind::Attractive;
}

/// Lowest `count` levels, without the public size cap.
inline std::vector<double> robin_levels(double theta, double omega, int first, int count) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  theta = wrap_angle(theta);
  const RobinKind kind = robin_kind(theta);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  auto neumann = [omega](int n) { return omega * (2.0 * n + 0.5); };
  auto dirichlet = [omega](int n) { return omega * (2.0 * n + 1.5); };
  const double t = std::tan(theta / 2.0);
  auto f = [theta, omega](double e) { return robin_characteristic(e, theta, omega); };

  for (int n = first; n < first + count; ++n) {
    if (kind == RobinKind::Neumann) {
      out.push_back(neumann(n));
      continue;
    }
    if (kind == RobinKind::Dirichlet) {
      out.push_back(dirichlet(n));
      continue;
    }
    double lo = 0.0;
    double hi = 0.0;
    if (kind == RobinKind::Repulsive) {
      lo = neumann(n);
      hi = dirichlet(n);
    } else {
      // the bound state sits above -t^2/2, the pure-Robin free-line value
      lo = n == 0 ? -0.5 * t * t - omega : dirichlet(n - 1);
      hi = neumann(n);
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) {
      out.push_back(lo);
      continue;
    }
    if (fhi == 0.0) {
      out.push_back(hi);
      continue;
    }
    if ((flo > 0.0) == (fhi > 0.0)) {
      throw ConvergenceError("Robin level " + std::to_string(n) + " is not bracketed");
    }
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50), iters);
    const double root = 0.5 * (r.first + r.second);
    if (!(r.second - r.first <= 1e-10 * std::max(std::abs(root), omega))) {
      throw ConvergenceError("Robin level " + std::to_string(n) + " did not converge");
    }
    out.push_back(root);
  }
  return out;
}

/// tan(theta/2) * phi_n(0) for the unit-normalized eigenfunction phi_n at the
/// level `energy`. The normalization follows from the Neumann resolvent:
/// phi_n(0)^2 = 2 / L'(E_n) with L' = -t/(2 omega) * Delta, Delta the digamma
/// difference psi(3/4 - eps/2) - psi(1/4 - eps/2). Positive sign convention.
inline double robin_boundary_weight(double energy, double theta, double omega) {
  using boost::math::digamma;
  const double eps = energy / omega;
  const double t = std::tan(wrap_angle(theta) / 2.0);
  double delta = 0.0;
  if (eps < 0.0) {
    delta = digamma(0.75 - eps / 2.0) - digamma(0.25 - eps / 2.0);
  } else {
    delta = digamma(0.25 + eps / 2.0) - digamma(0.75 + eps / 2.0) +
            2.0 * kPi / boost::math::cos_pi(eps);
  }
  const double w2 = -4.0 * omega * t / delta;
  if (!(w2 > 0.0) || !std::isfinite(w2)) {
    throw ConvergenceError("Robin eigenfunction normalization failed at E = " + std::to_string(energy));
  }
  return std::sqrt(w2);
}

}  // namespace detail

struct RobinSpectrum {
  double theta = 0.0;
  double omega = 1.0;
  std::vector<double> levels;
};

/// Lowest `count` (<= 64) levels of the half-line oscillator with Robin
/// angle theta. theta in (0, pi) puts level n strictly between the Neumann
/// and Dirichlet values omega (2n + 1/2) and omega (2n + 3/2); theta in
/// (pi, 2pi) is attractive and level 0 may be deeply bound.
inline RobinSpectrum robin_spectrum(double theta, double omega, int count) {
  if (count < 1 || count > 64) throw std::invalid_argument("count must be in [1, 64]");
  RobinSpectrum s;
  s.theta = wrap_angle(theta);
  s.omega = omega;
  s.levels = detail::robin_levels(theta, omega, 0, count);
  return s;
}

/// Phase fraction gained by a Robin wall in one half-period, relative to the
/// Neumann wall: eta = (E_0(theta) - omega/2) / omega, 0 at theta = 0, 1 at pi.
inline double eta_of_theta(double theta, double omega) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::invalid_argument("theta must lie in [0, pi]");
  const double e0 = detail::robin_levels(theta, omega, 0, 1).front();
  return (e0 - 0.5 * omega) / omega;
}

}  // namespace qabacus
