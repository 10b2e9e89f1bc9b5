#pragma once

#include <optional>
#include <vector>

#include "splitgap/model.hpp"

namespace splitgap {

/// Discretized tunneling path theta(tau) on [0, beta].
struct InstantonProfile {
  std::vector<double> tau;    // strictly increasing grid spanning [0, beta]
  std::vector<double> theta;  // path values at the grid nodes
  double tau_star = 0.0;      // kink center
  double width = 0.0;         // characteristic kink width
};

/// Reduced action L tanh(beta) int sin^2(theta) + (L^alpha / 4 lambda) int theta_dot^2,
/// split into its two pieces.
struct ActionBreakdown {
  double potential_term = 0.0;
  double kinetic_term = 0.0;
  double total = 0.0;
  double error_estimate = 0.0;  // Richardson estimate from two grid halvings; NaN if unavailable
};

/// Evaluates the reduced action on a sampled path: trapezoid for the
/// potential, exact piecewise-linear integral for the kinetic term.
/// When rel_tol is given and the Richardson error estimate exceeds
/// rel_tol * |total|, throws GridTooCoarse. Requires lambda > 0.
ActionBreakdown reduced_action(const InstantonProfile& profile, const ModelParams& params,
                               double beta,
                               std::optional<double> rel_tol = std::nullopt);

/// The closed-form minimal path theta(tau) = 2 arctan(exp(rate (tau - tau_star)))
/// with rate = 2 sqrt(lambda tanh beta) L^{(1-alpha)/2}, sampled on a uniform grid
/// with grid_size intervals (grid_size + 1 nodes).
InstantonProfile analytic_instanton(const ModelParams& params, double beta,
                                    double tau_star, int grid_size);

/// Kink steepness of the analytic instanton.
double instanton_rate(const ModelParams& params, double beta);

struct MinimizeOptions {
  int max_iterations = 500;
  double grad_tolerance = 1e-10;  // on the sup norm of the discrete gradient
};

struct MinimizeOutcome {
  InstantonProfile profile;
  ActionBreakdown action;
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

/// Minimizes the discretized reduced action over paths pinned to theta(0) = 0,
/// theta(beta) = pi. Descent direction comes from a Levenberg-damped Newton
/// solve of the tridiagonal Hessian (O(grid) per step); heavy damping reduces
/// to a short gradient step, so progress never depends on the Hessian being
/// definite. Starts from a linear ramp unless a start profile is supplied.
/// Throws NotConverged when the iteration cap is hit first.
MinimizeOutcome minimize_reduced_action(const ModelParams& params, double beta,
                                        int grid_size,
                                        const MinimizeOptions& options = {},
                                        const InstantonProfile* start = nullptr);

/// Saddle-point prediction log(s_beta / beta) = -2 L^{(1+alpha)/2} sqrt(tanh beta / lambda).
double predict_log_sbeta(const ModelParams& params, double beta);

/// Leading asymptotic log delta = -(2/sqrt(lambda)) L^{(1+alpha)/2}
/// (the beta -> infinity limit of predict_log_sbeta, shared code path).
double predict_log_delta_chain(const ModelParams& params);

/// Closed-form vs discretized spectrum of the quadratic-fluctuation kernel
/// V_d(t1, t2) = (L/4) cosh^2(beta - 2 d(t1,t2)) / cosh^2 beta on the periodic
/// grid, d = periodic distance.
struct HessianModeTable {
  double beta = 0.0;
  int L = 0;
  std::vector<int> k;            // mode index, 0, 1, ..., modes
  std::vector<double> omega;     // 2 pi k / beta
  std::vector<double> v_closed;  // (L/cosh^2 b)(sinh 2b/(16+w^2) + b/8 delta_k0)
  std::vector<double> v_numeric;
  std::vector<double> h_k;       // v_closed + L^alpha / (2 lambda)
  std::vector<double> rel_deviation;
  double max_rel_deviation = 0.0;
  double pair_degeneracy_gap = 0.0;  // max |v(+k) - v(-k)| over compared modes
};

/// Diagonalizes the discretized kernel (grid_size nodes) and compares the
/// lowest |k| <= modes eigenvalues against the closed form. lambda and alpha
/// only fill the shifted h_k column.
HessianModeTable hessian_vd_check(int L, double beta, int grid_size, int modes,
                                  double lambda = 1.0, double alpha = 0.5);

}  // namespace splitgap
