#pragma once

#include <limits>
#include <vector>

#include "splitgap/model.hpp"

namespace splitgap {

/// Rotor-chain parameters: the shared ModelParams plus the semiclassical
/// parameter g (plays the role of hbar; the g -> 0 limit is the controlled one).
struct RotorParams {
  ModelParams base;
  double g = 0.1;

  void validate() const;
};

/// Everything the closed semiclassical formula produces.
struct RotorSemiclassics {
  double m0 = 0.0;                 // effective mass 1/(1 + 2 lambda sum_r f(r))
  std::vector<double> m_k;         // mode masses
  double action = 0.0;             // L pi^2 sqrt(m0) / 4
  double log_det_ratio = 0.0;      // log of the fluctuation determinant ratio
  double det_ratio = 0.0;          // exp of the above (may overflow to inf for large L)
  double log_delta = 0.0;          // full semiclassical log splitting
  double log_delta_leading = 0.0;  // -L pi^2 sqrt(m0) / (4g)
};

/// m0 = 1/(1 + 2 lambda sum_r f(r)). Throws NonPositiveMass.
double effective_mass(const RotorParams& params);

/// The translationally symmetric instanton theta(tau) =
/// (pi/2) sgn(tau - tau_star) (1 - e^{-|tau - tau_star|/sqrt(m0)}).
double rotor_instanton_theta(const RotorParams& params, double tau, double tau_star);

/// Double-well potential U(theta) = (|theta| - pi/2)^2 / 2 on [-pi, pi],
/// extended periodically.
double rotor_potential(double theta);

/// Closed-form instanton action L pi^2 sqrt(m0) / 4.
double rotor_action(const RotorParams& params);

/// Same action by quadrature of L int sqrt(2 m0 U(theta)) dtheta over
/// [-pi/2, pi/2] (cross-check for tests).
double rotor_action_quadrature(const RotorParams& params);

/// Closed determinant ratio
///   Delta = 2 prod_{k=1}^{L-1} (1 - sqrt(m0/m_k) / sqrt(1 + 4 sin^2(pi k/L)))^{-1},
/// accumulated in log space. Throws FactorOutOfRange when a factor's argument
/// leaves (0, 1).
double det_ratio_closed(const RotorParams& params);
double log_det_ratio_closed(const RotorParams& params);

/// Full semiclassical formula
///   log delta = -L pi^2 sqrt(m0)/(4g) + (1/2) log(4 L pi/(g sqrt(m0)))
///               - (1/2) sum_{k>=1} log(1 - sqrt(m0/m_k)/sqrt(1+4 sin^2(pi k/L))).
RotorSemiclassics log_delta_rotor(const RotorParams& params);

struct AsymptoticOptions {
  long long series_truncation = 100000;  // r-cutoff of sum_r cos(2 pi r x)/r^alpha
  int quad_nodes = 24;                   // Gauss-Legendre nodes per panel
  int quad_levels = 48;                  // geometric panel levels toward the endpoint
  double cauchy_tol = 1e-8;              // two-refinement relative agreement
  // The x-integral depends only on (lambda, alpha); setting this to a finite
  // value (from asymptotic_fluctuation_integral) skips the quadrature, which
  // matters when scanning many L at fixed couplings.
  double precomputed_integral = std::numeric_limits<double>::quiet_NaN();
};

/// Large-L three-term formula (power-law coupling only, 0 < alpha < 1):
///   -L^{(1+a)/2} pi^2/(4 g sqrt(2 l)) + (1/2) log(4 L^{(3-a)/2} pi sqrt(2 l)/g)
///   + L^{(1+a)/2}/(2 sqrt(2 l)) * int_0^1 sqrt((1 + 4 l c_a S(x))/(1+4 sin^2 pi x)) dx,
/// with S(x) = sum_{r>=1} cos(2 pi r x)/r^alpha. The integrand has an
/// integrable x^{(alpha-1)/2} endpoint singularity; panels refine
/// geometrically into it. Throws QuadratureNotConverged if doubling the node
/// count moves the integral by more than cauchy_tol relative.
double log_delta_rotor_asymptotic(const RotorParams& params,
                                  const AsymptoticOptions& options = {});

/// The x-integral above by itself (it is independent of L and g).
double asymptotic_fluctuation_integral(double lambda, double alpha,
                                       const AsymptoticOptions& options = {});

/// Finite-beta assembly of the fluctuation determinant from the transcendental
/// even-mode equation tan(Omega beta / 2) = Omega m_k / sqrt(m0).
struct AppendixDReport {
  double beta = 0.0;
  int n_max = 0;
  std::vector<std::vector<double>> omega_roots;  // [k][n-1], real roots per mode
  std::vector<double> complex_root;              // sqrt(m0)/m_k per mode
  double log_delta_numeric = 0.0;                // log of the assembled ratio
  double log_delta_closed = 0.0;                 // log det_ratio_closed
  double delta_numeric = 0.0;
  double delta_closed = 0.0;
  double rel_error = 0.0;  // |Delta_numeric - Delta_closed| / Delta_closed
};

/// Solves every (k, n <= n_max) root by bisection in its bracket
/// [2 pi n/beta, 2 pi (n+1/2)/beta], assembles the determinant ratio as a sum
/// of paired log-ratios, and corrects the n > n_max tail with the
/// Euler-Maclaurin integral of the exact implicit root equation.
AppendixDReport appendix_d_verify(const RotorParams& params, double beta, int n_max);

}  // namespace splitgap
