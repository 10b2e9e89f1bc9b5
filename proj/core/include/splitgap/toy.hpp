#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "splitgap/model.hpp"

namespace splitgap {

enum class ToyOperatorKind { SigmaX, SigmaXX, Mixed, CustomDense };

/// Local operator family O_j entering P = sum_j O_j.
///
/// Mixed is O_j = s^x_j + gamma s^x_j s^x_{j+1} with gamma = p/q in lowest
/// terms and q odd. Its norm is 1 + |gamma| > 1; `rescale` divides every O_j
/// by (1 + |gamma|) to restore the norm condition. The closed asymptotic
/// formulas are stated for the unrescaled operator, so both conventions are
/// available and results record which one was used.
///
/// CustomDense is a two-site real-symmetric 4x4 block in the x basis
/// (ordering ++, +-, -+, --), applied at every bond; it must commute with
/// the parity of its two sites.
struct OperatorChoice {
  ToyOperatorKind kind = ToyOperatorKind::SigmaX;
  int gamma_num = 0;
  int gamma_den = 1;
  bool rescale = false;
  Eigen::Matrix4d custom = Eigen::Matrix4d::Zero();

  static OperatorChoice sigma_x() { return {ToyOperatorKind::SigmaX, 0, 1, false, {}}; }
  static OperatorChoice sigma_xx() { return {ToyOperatorKind::SigmaXX, 0, 1, false, {}}; }
  static OperatorChoice mixed(int p, int q, bool rescale = false);
  static OperatorChoice custom_dense(const Eigen::Matrix4d& block);

  double gamma() const { return static_cast<double>(gamma_num) / gamma_den; }
  std::string name() const;
};

/// Spectrum of P restricted to one parity sector, weighted by the uniform
/// cat-state amplitudes: f_pm needs only sum_i w_i h(p_i).
struct ToySpectrum {
  std::vector<double> p;       // distinct P eigenvalues, ascending by key
  std::vector<double> weight;  // cat-state weights, sum = 1
};

/// Builds the sector spectrum. SigmaX uses binomial closed forms (L <= 40);
/// SigmaXX and Mixed enumerate x-basis strings (L <= 24); CustomDense
/// diagonalizes the sector block densely (L <= 14).
ToySpectrum toy_spectrum(const OperatorChoice& choice, int L, int sector);

/// f_pm(eta) = 1 - L <psi_pm| (A + L eta)^{-1} |psi_pm>, A = (lambda/L^alpha) P^2.
double secular_eval(const OperatorChoice& choice, const ModelParams& params, double eta,
                    int sector);

enum class ToyRoute { Secular, TimeDomain, DenseOracle };

struct ToyResult {
  double eta_plus = 0.0;
  double eta_minus = 0.0;
  double E_plus = 0.0;   // -L eta_plus
  double E_minus = 0.0;  // -L eta_minus
  double delta = 0.0;    // E_minus - E_plus
  ToyRoute route = ToyRoute::Secular;
  bool kramers_zero = false;     // odd L with a sign-symmetric P
  double delta_linearized = 0.0;  // -2 L g(eta*) / f'(eta*), secular route only
};

/// Brackets and bisects the unique positive zero of each f_pm (Newton-polished),
/// and also reports the linearized estimate. Throws RootNotFound if no
/// positive zero exists in the searched range.
ToyResult solve_splitting_secular(const OperatorChoice& choice, const ModelParams& params);

/// <down...down| cos(P t) |up...up>: closed forms for the named choices
/// (transfer-matrix power for Mixed), sector-spectrum evaluation for Custom.
double matrix_element_cos(const OperatorChoice& choice, int L, double t);

struct ToyQuadOptions {
  int nodes_per_panel = 16;
  double panel_width = 0.25;      // in units of t
  double envelope_cutoff = 1e-18;  // e^{-omega T} at the truncation point
  double cauchy_tol = 1e-8;
};

/// Leading-order time-domain formula
///   delta = 2 sqrt(L^{3+alpha}/lambda) int_0^inf e^{-sqrt(L^{1+alpha}/lambda) t}
///           <down|cos(P t)|up> dt.
double time_domain_delta(const OperatorChoice& choice, const ModelParams& params,
                         const ToyQuadOptions& options = {});

/// Closed asymptotics of log|delta|:
///   SigmaX:  -L^{(1+alpha)/2} pi / (2 sqrt(lambda))
///   SigmaXX: -L log(2) / 2            (L must be a multiple of 4)
///   Mixed:   -L^{(1+alpha)/2} q pi / (2 sqrt(lambda)), gamma = p/q, q odd.
/// Throws Unsupported for CustomDense.
double asymptotic_log_delta_toy(const OperatorChoice& choice, const ModelParams& params);

/// Dense diagonalization of H = -L |psi+><psi+| - L |psi-><psi-| + (lambda/L^alpha) P^2
/// per sector (diagonal plus rank one for the named choices). L <= 12.
ToyResult dense_oracle_toy(const OperatorChoice& choice, const ModelParams& params);

}  // namespace splitgap
