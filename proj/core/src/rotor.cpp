#include "splitgap/rotor.hpp"

#include <cmath>
#include <stdexcept>

#include "splitgap/errors.hpp"
#include "splitgap/numerics.hpp"

namespace splitgap {

void RotorParams::validate() const {
  base.validate();
  if (!(g > 0.0)) throw std::invalid_argument("rotor: g must be positive");
  if (!check_positive_definite(base))
    throw NonPositiveMass("rotor: mass matrix not positive-definite at these parameters");
}

double effective_mass(const RotorParams& params) {
  params.validate();
  const double inv = 1.0 + 2.0 * params.base.lambda * coupling_sum(params.base);
  if (!(inv > 0.0)) throw NonPositiveMass("effective_mass: 1/m0 <= 0");
  return 1.0 / inv;
}

double rotor_potential(double theta) {
  theta = std::remainder(theta, 2.0 * M_PI);  // reduce to [-pi, pi]
  const double d = std::abs(theta) - M_PI_2;
  return 0.5 * d * d;
}

double rotor_instanton_theta(const RotorParams& params, double tau, double tau_star) {
  const double m0 = effective_mass(params);
  const double u = (tau - tau_star) / std::sqrt(m0);
  const double sgn = u >= 0.0 ? 1.0 : -1.0;
  return M_PI_2 * sgn * (1.0 - std::exp(-std::abs(u)));
}

double rotor_action(const RotorParams& params) {
  const double m0 = effective_mass(params);
  return params.base.L * M_PI * M_PI * std::sqrt(m0) / 4.0;
}

double rotor_action_quadrature(const RotorParams& params) {
  const double m0 = effective_mass(params);
  const auto f = [m0](double th) { return std::sqrt(2.0 * m0 * rotor_potential(th)); };
  // |theta| kink at 0: integrate the halves separately
  const double half = integrate_gl(f, 0.0, M_PI_2, 64);
  return params.base.L * 2.0 * half;
}

namespace {

// log(1 - sqrt(m0/m_k)/sqrt(1 + 4 sin^2(pi k/L))) for k = 1..L-1,
// the shared core of the closed product and the full formula.
std::vector<double> closed_factor_logs(const RotorParams& params, double m0,
                                       const std::vector<double>& m_k) {
  const int L = params.base.L;
  std::vector<double> logs(L - 1);
  for (int k = 1; k < L; ++k) {
    const double s = std::sin(M_PI * k / L);
    const double arg = std::sqrt(m0 / m_k[k]) / std::sqrt(1.0 + 4.0 * s * s);
    if (!(arg > 0.0 && arg < 1.0))
      throw FactorOutOfRange("determinant factor argument " + std::to_string(arg) +
                             " outside (0, 1) at k=" + std::to_string(k));
    logs[k - 1] = std::log1p(-arg);
  }
  return logs;
}

}  // namespace

double log_det_ratio_closed(const RotorParams& params) {
  const double m0 = effective_mass(params);
  const auto m_k = fourier_masses(params.base);
  double sum = 0.0;
  for (double lg : closed_factor_logs(params, m0, m_k)) sum += lg;
  return std::log(2.0) - sum;
}

double det_ratio_closed(const RotorParams& params) {
  return std::exp(log_det_ratio_closed(params));
}

RotorSemiclassics log_delta_rotor(const RotorParams& params) {
  RotorSemiclassics out;
  out.m0 = effective_mass(params);
  out.m_k = fourier_masses(params.base);
  out.action = rotor_action(params);

  double factor_sum = 0.0;
  for (double lg : closed_factor_logs(params, out.m0, out.m_k)) factor_sum += lg;
  out.log_det_ratio = std::log(2.0) - factor_sum;
  out.det_ratio = std::exp(out.log_det_ratio);

  const double L = params.base.L;
  out.log_delta_leading = -out.action / params.g;
  out.log_delta = out.log_delta_leading +
                  0.5 * std::log(4.0 * L * M_PI / (params.g * std::sqrt(out.m0))) -
                  0.5 * factor_sum;
  return out;
}

double asymptotic_fluctuation_integral(double lambda, double alpha,
                                       const AsymptoticOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("asymptotic formula requires 0 < alpha < 1");
  if (!(lambda > 0.0))
    throw std::invalid_argument("asymptotic formula requires lambda > 0 "
                                "(the mass asymptotics assume it)");
  const double c_alpha = power_law_c_alpha(alpha);

  // integrand of int_0^1 sqrt((1 + 4 lambda c_a S(x)) / (1 + 4 sin^2 pi x)) dx
  const auto integrand = [&](double x) {
    const double s = cos_power_series(x, alpha, options.series_truncation);
    const double num = 1.0 + 4.0 * lambda * c_alpha * s;
    const double sp = std::sin(M_PI * x);
    if (!(num > 0.0))
      throw std::domain_error("asymptotic integrand: negative argument under the root");
    return std::sqrt(num / (1.0 + 4.0 * sp * sp));
  };

  // x -> u^p regularizes the x^{(alpha-1)/2} endpoint singularity; the
  // integrand is symmetric about 1/2, so only [0, 1/2] is integrated.
  const double p = 2.0 / (1.0 + alpha);
  const double upper = std::pow(0.5, 1.0 / p);
  const auto sub = [&](double u) {
    return integrand(std::pow(u, p)) * p * std::pow(u, p - 1.0);
  };

  const auto run = [&](int nodes) {
    return 2.0 * integrate_geometric(sub, 0.0, upper, nodes, options.quad_levels);
  };
  const double coarse = run(options.quad_nodes);
  const double fine = run(2 * options.quad_nodes);
  if (std::abs(fine - coarse) > options.cauchy_tol * std::abs(fine))
    throw QuadratureNotConverged(
        "asymptotic fluctuation integral: refinements differ by " +
        std::to_string(std::abs(fine - coarse)));
  return fine;
}

double log_delta_rotor_asymptotic(const RotorParams& params,
                                  const AsymptoticOptions& options) {
  params.validate();
  if (params.base.coupling != CouplingKind::PeriodicPowerLaw)
    throw std::invalid_argument("asymptotic formula is for the power-law coupling");
  const double alpha = params.base.alpha;
  const double lambda = params.base.lambda;
  const double g = params.g;
  const double L = params.base.L;
  const double integral = std::isfinite(options.precomputed_integral)
                              ? options.precomputed_integral
                              : asymptotic_fluctuation_integral(lambda, alpha, options);
  const double l_pow = std::pow(L, 0.5 * (1.0 + alpha));
  return -l_pow * M_PI * M_PI / (4.0 * g * std::sqrt(2.0 * lambda)) +
         0.5 * std::log(4.0 * std::pow(L, 0.5 * (3.0 - alpha)) * M_PI *
                        std::sqrt(2.0 * lambda) / g) +
         l_pow / (2.0 * std::sqrt(2.0 * lambda)) * integral;
}

namespace {

// tau_k(u) + 1 = u^2 m_k + 4 sin^2(pi k / L) + 1
struct ModeEigen {
  double m_k;
  double c_k;  // 1 + 4 sin^2(pi k / L)
  double eval(double u) const { return u * u * m_k + c_k; }
};

}  // namespace

AppendixDReport appendix_d_verify(const RotorParams& params, double beta, int n_max) {
  params.validate();
  if (!(beta >= 20.0))
    throw std::invalid_argument("appendix_d_verify: beta must be >= 20");
  if (n_max < 1000) throw std::invalid_argument("appendix_d_verify: n_max must be >= 1000");

  const int L = params.base.L;
  const double m0 = effective_mass(params);
  const double sqrt_m0 = std::sqrt(m0);
  const auto m_k = fourier_masses(params.base);

  AppendixDReport report;
  report.beta = beta;
  report.n_max = n_max;
  report.omega_roots.resize(L);
  report.complex_root.resize(L);

  const double eps = 1e-9 * (2.0 * M_PI / beta);
  double log_delta = 0.0;

  for (int k = 0; k < L; ++k) {
    const double s = std::sin(M_PI * k / L);
    const ModeEigen mode{m_k[k], 1.0 + 4.0 * s * s};
    report.complex_root[k] = sqrt_m0 / m_k[k];

    // even ladder of H^(1) starts at n = 0: the first factor pairs with the
    // complex root of H^(2) (k >= 1) or stands alone (k = 0, zero mode removed)
    const double first = mode.eval(M_PI / beta);
    if (k == 0) {
      log_delta += std::log(first);
    } else {
      const double denom = mode.eval(0.0) - m0 / m_k[k];  // tau_k(i sqrt(m0)/m_k) + 1
      if (!(denom > 0.0))
        throw FactorOutOfRange("appendix_d_verify: complex-root factor <= 0 at k=" +
                               std::to_string(k));
      log_delta += std::log(first) - std::log(denom);
    }

    // real roots: tan(Omega beta/2) = Omega m_k / sqrt(m0), one per bracket
    const auto root_fn = [&](double omega) {
      return std::tan(0.5 * omega * beta) - omega * m_k[k] / sqrt_m0;
    };
    auto& roots = report.omega_roots[k];
    roots.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
      const double lo = 2.0 * M_PI * n / beta + eps;
      const double hi = 2.0 * M_PI * (n + 0.5) / beta - eps;
      double root;
      try {
        root = bisect(root_fn, lo, hi, 1e-13);
      } catch (const RootNotBracketed&) {
        throw RootNotBracketed("appendix_d_verify: no root in bracket k=" +
                               std::to_string(k) + " n=" + std::to_string(n));
      }
      roots.push_back(root);
      log_delta += std::log(mode.eval(2.0 * M_PI * (n + 0.5) / beta)) -
                   std::log(mode.eval(root));
    }

    // n > n_max tail: log-ratio summand converted to an integral (midpoint
    // Euler-Maclaurin), with the root equation solved implicitly:
    // Omega(x) = x - (2/beta) arctan(sqrt(m0) / (m_k Omega)).
    const double x_lo = 2.0 * M_PI * (n_max + 1) / beta;
    const auto tail_fn = [&](double x) {
      double omega = x - (2.0 / beta) * std::atan(sqrt_m0 / (m_k[k] * x));
      omega = x - (2.0 / beta) * std::atan(sqrt_m0 / (m_k[k] * omega));
      return std::log(mode.eval(x) / mode.eval(omega));
    };
    // substitute x = x_lo / t to map [x_lo, inf) onto (0, 1]
    const auto tail_sub = [&](double t) {
      const double x = x_lo / t;
      return tail_fn(x) * x / t;
    };
    log_delta += (beta / (2.0 * M_PI)) * integrate_gl(tail_sub, 0.0, 1.0, 64);
  }

  report.log_delta_numeric = log_delta;
  report.log_delta_closed = log_det_ratio_closed(params);
  report.delta_numeric = std::exp(log_delta);
  report.delta_closed = std::exp(report.log_delta_closed);
  report.rel_error = std::abs(std::expm1(log_delta - report.log_delta_closed));
  return report;
}

}  // namespace splitgap
