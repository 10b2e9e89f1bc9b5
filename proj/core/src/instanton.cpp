#include "splitgap/instanton.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "splitgap/errors.hpp"

namespace splitgap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_profile(const InstantonProfile& p, double beta) {
  if (p.tau.size() != p.theta.size() || p.tau.size() < 3)
    throw std::invalid_argument("profile: grids must match and hold >= 3 nodes");
  for (std::size_t i = 1; i < p.tau.size(); ++i)
    if (!(p.tau[i] > p.tau[i - 1]))
      throw std::invalid_argument("profile: tau grid must be strictly increasing");
  const double tol = 1e-9 * beta;
  if (std::abs(p.tau.front()) > tol || std::abs(p.tau.back() - beta) > tol)
    throw std::invalid_argument("profile: tau grid must span [0, beta]");
}

// Action of the piecewise-linear interpolant through a subsampled grid
// (every `stride`-th node). stride must divide the interval count.
ActionBreakdown action_on_stride(const InstantonProfile& p, const ModelParams& params,
                                 double beta, std::size_t stride) {
  const double tanhb = std::tanh(beta);
  const double kin_coef = std::pow(static_cast<double>(params.L), params.alpha) /
                          (4.0 * params.lambda);
  const std::size_t n = p.tau.size();
  double pot = 0.0, kin = 0.0;
  for (std::size_t i = 0; i + stride < n; i += stride) {
    const std::size_t j = i + stride;
    const double dt = p.tau[j] - p.tau[i];
    const double si = std::sin(p.theta[i]), sj = std::sin(p.theta[j]);
    pot += 0.5 * dt * (si * si + sj * sj);
    const double dth = p.theta[j] - p.theta[i];
    kin += dth * dth / dt;
  }
  ActionBreakdown a;
  a.potential_term = params.L * tanhb * pot;
  a.kinetic_term = kin_coef * kin;
  a.total = a.potential_term + a.kinetic_term;
  a.error_estimate = kNaN;
  return a;
}

}  // namespace

ActionBreakdown reduced_action(const InstantonProfile& profile, const ModelParams& params,
                               double beta, std::optional<double> rel_tol) {
  params.validate();
  if (!(params.lambda > 0.0))
    throw std::invalid_argument("reduced_action: lambda must be positive");
  check_profile(profile, beta);

  ActionBreakdown fine = action_on_stride(profile, params, beta, 1);
  const std::size_t intervals = profile.tau.size() - 1;
  if (intervals % 4 == 0) {
    const ActionBreakdown half = action_on_stride(profile, params, beta, 2);
    // trapezoid is O(h^2): one halving gives the Richardson error estimate
    fine.error_estimate = std::abs(fine.total - half.total) / 3.0;
  }
  if (rel_tol) {
    if (std::isnan(fine.error_estimate))
      throw GridTooCoarse("reduced_action: interval count not divisible by 4, "
                          "cannot certify the requested tolerance");
    if (fine.error_estimate > *rel_tol * std::max(std::abs(fine.total), 1e-300))
      throw GridTooCoarse("reduced_action: grid refinement error estimate exceeds tolerance");
  }
  return fine;
}

double instanton_rate(const ModelParams& params, double beta) {
  return 2.0 * std::sqrt(params.lambda * std::tanh(beta)) *
         std::pow(static_cast<double>(params.L), 0.5 * (1.0 - params.alpha));
}

InstantonProfile analytic_instanton(const ModelParams& params, double beta,
                                    double tau_star, int grid_size) {
  params.validate();
  if (!(params.lambda > 0.0))
    throw std::invalid_argument("analytic_instanton: lambda must be positive");
  if (!(tau_star > 0.0 && tau_star < beta))
    throw std::invalid_argument("analytic_instanton: tau_star must lie in (0, beta)");
  if (grid_size < 4) throw std::invalid_argument("analytic_instanton: grid too small");

  const double rate = instanton_rate(params, beta);
  InstantonProfile p;
  p.tau.resize(grid_size + 1);
  p.theta.resize(grid_size + 1);
  const double h = beta / grid_size;
  for (int i = 0; i <= grid_size; ++i) {
    const double t = i * h;
    p.tau[i] = t;
    // 2 arctan(e^u) evaluated without overflow for large |u|
    const double u = rate * (t - tau_star);
    p.theta[i] = u > 0.0 ? M_PI - 2.0 * std::atan(std::exp(-u))
                         : 2.0 * std::atan(std::exp(u));
  }
  p.tau_star = tau_star;
  p.width = std::pow(static_cast<double>(params.L), 0.5 * (params.alpha - 1.0)) /
            std::sqrt(params.lambda);
  return p;
}

namespace {

// Discrete reduced action and gradient on the uniform grid, interior nodes only.
struct DiscreteAction {
  double pot_coef;  // L tanh(beta) * h
  double kin_coef;  // L^alpha / (4 lambda h)
  double h;

  double value(const std::vector<double>& th) const {
    double pot = 0.0;
    for (std::size_t i = 1; i + 1 < th.size(); ++i) {
      const double s = std::sin(th[i]);
      pot += s * s;
    }
    const double s0 = std::sin(th.front()), sn = std::sin(th.back());
    pot += 0.5 * (s0 * s0 + sn * sn);
    double kin = 0.0;
    for (std::size_t i = 0; i + 1 < th.size(); ++i) {
      const double d = th[i + 1] - th[i];
      kin += d * d;
    }
    return pot_coef * pot + kin_coef * kin;
  }

  void gradient(const std::vector<double>& th, std::vector<double>& g) const {
    g.front() = 0.0;
    g.back() = 0.0;
    for (std::size_t i = 1; i + 1 < th.size(); ++i) {
      g[i] = pot_coef * std::sin(2.0 * th[i]) +
             2.0 * kin_coef * (2.0 * th[i] - th[i - 1] - th[i + 1]);
    }
  }
};

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Solves (T + mu) d = -g on the interior nodes, T the tridiagonal Hessian of
// the discrete action. Thomas algorithm; returns false on a pivot breakdown.
bool damped_newton_step(const DiscreteAction& action, const std::vector<double>& th,
                        const std::vector<double>& g, double mu,
                        std::vector<double>& d) {
  const std::size_t n = th.size();
  const std::size_t m = n - 2;
  const double off = -2.0 * action.kin_coef;
  std::vector<double> diag(m), rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    diag[i] = 4.0 * action.kin_coef + 2.0 * action.pot_coef * std::cos(2.0 * th[i + 1]) + mu;
    rhs[i] = -g[i + 1];
  }
  for (std::size_t i = 1; i < m; ++i) {
    if (std::abs(diag[i - 1]) < 1e-300) return false;
    const double w = off / diag[i - 1];
    diag[i] -= w * off;
    rhs[i] -= w * rhs[i - 1];
  }
  if (std::abs(diag[m - 1]) < 1e-300) return false;
  d.assign(n, 0.0);
  d[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) d[i + 1] = (rhs[i] - off * d[i + 2]) / diag[i];
  return true;
}

}  // namespace

MinimizeOutcome minimize_reduced_action(const ModelParams& params, double beta,
                                        int grid_size, const MinimizeOptions& options,
                                        const InstantonProfile* start) {
  params.validate();
  if (!(params.lambda > 0.0))
    throw std::invalid_argument("minimize_reduced_action: lambda must be positive");
  if (grid_size < 8 || grid_size % 4 != 0)
    throw std::invalid_argument("minimize_reduced_action: grid_size must be >= 8 and divisible by 4");
  if (std::isinf(beta))
    throw std::invalid_argument("minimize_reduced_action: beta must be finite");

  const int n = grid_size + 1;
  const double h = beta / grid_size;
  DiscreteAction action{params.L * std::tanh(beta) * h,
                        std::pow(static_cast<double>(params.L), params.alpha) /
                            (4.0 * params.lambda * h),
                        h};

  std::vector<double> th(n);
  if (start) {
    check_profile(*start, beta);
    if (static_cast<int>(start->theta.size()) != n)
      throw std::invalid_argument("minimize_reduced_action: start profile grid mismatch");
    th = start->theta;
  } else {
    for (int i = 0; i < n; ++i) th[i] = M_PI * i / grid_size;
  }
  th.front() = 0.0;
  th.back() = M_PI;

  std::vector<double> g(n), d(n), trial(n);
  action.gradient(th, g);
  double f = action.value(th);
  double grad_norm = sup_norm(g);

  // Damped Newton on the tridiagonal Hessian. Large mu turns the step into
  // a short gradient step, so descent is always available; near the minimum
  // mu -> 0 and convergence is quadratic. Plain gradient descent stalls here:
  // the kinetic term conditions the Hessian like 1/h^2.
  double mu = 0.0;
  const double mu_seed = 1e-3 * (8.0 * action.kin_coef + 2.0 * action.pot_coef);
  int iter = 0;

  while (grad_norm >= options.grad_tolerance && iter < options.max_iterations) {
    ++iter;
    const double slack =
        8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f));
    bool accepted = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      if (damped_newton_step(action, th, g, mu, d)) {
        double descent = 0.0;
        for (int i = 1; i + 1 < n; ++i) descent += g[i] * d[i];
        if (descent < 0.0) {
          for (int i = 0; i < n; ++i) trial[i] = th[i] + d[i];
          trial.front() = 0.0;
          trial.back() = M_PI;
          const double f_new = action.value(trial);
          if (f_new <= f + slack) {
            th = trial;
            f = f_new;
            accepted = true;
            break;
          }
        }
      }
      mu = mu == 0.0 ? mu_seed : 8.0 * mu;
    }
    if (!accepted) break;  // step rejected at every damping level: stationary
    mu *= 0.25;
    if (mu < 1e-12 * mu_seed) mu = 0.0;
    action.gradient(th, g);
    grad_norm = sup_norm(g);
  }

  MinimizeOutcome out;
  out.iterations = iter;
  out.grad_norm = grad_norm;
  out.converged = grad_norm < options.grad_tolerance;

  InstantonProfile prof;
  prof.tau.resize(n);
  for (int i = 0; i < n; ++i) prof.tau[i] = i * h;
  prof.theta = th;
  // kink center: interpolated pi/2 crossing; width from the slope there
  prof.tau_star = kNaN;
  prof.width = kNaN;
  for (int i = 0; i + 1 < n; ++i) {
    if ((th[i] - M_PI_2) * (th[i + 1] - M_PI_2) <= 0.0 && th[i + 1] != th[i]) {
      const double frac = (M_PI_2 - th[i]) / (th[i + 1] - th[i]);
      prof.tau_star = prof.tau[i] + frac * h;
      const double slope = (th[i + 1] - th[i]) / h;
      prof.width = slope > 0.0 ? 2.0 * std::sqrt(std::tanh(beta)) / slope : kNaN;
      break;
    }
  }
  out.action = reduced_action(prof, params, beta);
  out.profile = std::move(prof);

  if (!out.converged)
    throw NotConverged("minimize_reduced_action: gradient sup norm " +
                           std::to_string(grad_norm) + " after " + std::to_string(iter) +
                           " iterations",
                       out.action.total, grad_norm, iter);
  return out;
}

double predict_log_sbeta(const ModelParams& params, double beta) {
  params.validate();
  if (!(params.lambda > 0.0))
    throw std::invalid_argument("predict_log_sbeta: lambda must be positive");
  return -2.0 * std::pow(static_cast<double>(params.L), 0.5 * (1.0 + params.alpha)) *
         std::sqrt(std::tanh(beta) / params.lambda);
}

double predict_log_delta_chain(const ModelParams& params) {
  return predict_log_sbeta(params, std::numeric_limits<double>::infinity());
}

HessianModeTable hessian_vd_check(int L, double beta, int grid_size, int modes,
                                  double lambda, double alpha) {
  if (grid_size < 64) throw std::invalid_argument("hessian_vd_check: grid_size must be >= 64");
  if (modes < 1 || 2 * modes + 1 > grid_size)
    throw std::invalid_argument("hessian_vd_check: modes out of range");
  if (!(beta > 0.0) || std::isinf(beta))
    throw std::invalid_argument("hessian_vd_check: beta must be finite and positive");

  const int n = grid_size;
  const double h = beta / n;
  const double c2b = std::cosh(beta) * std::cosh(beta);

  // K_ij = h * V_d(tau_i, tau_j); circulant, so build from the first row.
  std::vector<double> row(n);
  for (int j = 0; j < n; ++j) {
    const double d = std::min(j * h, beta - j * h);
    const double c = std::cosh(beta - 2.0 * d);
    row[j] = h * 0.25 * L * c * c / c2b;
  }
  Eigen::MatrixXd kernel(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) kernel(i, j) = row[(j - i + n) % n];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel, Eigen::EigenvaluesOnly);
  // descending order: closed-form v_k decreases with |k| and v_0 is the top
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), std::greater<double>());

  HessianModeTable table;
  table.beta = beta;
  table.L = L;
  const double shift = std::pow(static_cast<double>(L), alpha) / (2.0 * lambda);
  double pair_gap = 0.0;
  for (int k = 0; k <= modes; ++k) {
    const double omega = 2.0 * M_PI * k / beta;
    double closed = (L / c2b) * std::sinh(2.0 * beta) / (16.0 + omega * omega);
    if (k == 0) closed += (L / c2b) * beta / 8.0;
    double numeric;
    if (k == 0) {
      numeric = ev[0];
    } else {
      numeric = 0.5 * (ev[2 * k - 1] + ev[2 * k]);  // +-k pair
      pair_gap = std::max(pair_gap, std::abs(ev[2 * k - 1] - ev[2 * k]));
    }
    table.k.push_back(k);
    table.omega.push_back(omega);
    table.v_closed.push_back(closed);
    table.v_numeric.push_back(numeric);
    table.h_k.push_back(closed + shift);
    table.rel_deviation.push_back(std::abs(numeric - closed) / closed);
  }
  table.max_rel_deviation =
      *std::max_element(table.rel_deviation.begin(), table.rel_deviation.end());
  table.pair_degeneracy_gap = pair_gap;
  return table;
}

}  // namespace splitgap
