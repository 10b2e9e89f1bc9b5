#pragma once

#include <limits>
#include <string>
#include <vector>

#include "splitgap/errors.hpp"

namespace splitgap {

/// Coupling-function families f(r) for the long-range interaction
/// V = sum_{ij} f(|i-j|) s^x_i s^x_j. All families satisfy f(r) = f(L-r)
/// and |f(r)| <= 1.
enum class CouplingKind {
  AllToAll,          // f(r) = 1/(4 L^alpha) for every r, including r = 0
  PeriodicPowerLaw,  // f(0) = 0, f(r) = c_alpha / min(r, L-r)^alpha
  Custom,            // explicit table f(0..L-1), validated eagerly
};

std::string to_string(CouplingKind kind);
CouplingKind coupling_kind_from_string(const std::string& name);

/// c_alpha = (1 - alpha) / 2^alpha, the power-law normalization that makes
/// sum_r f(r) = L^{1-alpha} + O(1) at large L.
double power_law_c_alpha(double alpha);

/// Shared parameter set of all three models.
///
/// beta = +infinity is a valid value and means the ground-state (zero
/// temperature) limit wherever beta enters a formula (tanh beta -> 1).
struct ModelParams {
  int L = 4;
  double lambda = 0.0;
  double alpha = 0.5;
  CouplingKind coupling = CouplingKind::AllToAll;
  double beta = std::numeric_limits<double>::infinity();
  std::vector<double> custom_table;  // used only for CouplingKind::Custom

  /// Throws std::invalid_argument on any violated invariant
  /// (L >= 2, lambda >= 0, alpha in (0, 1], beta > 0, custom table symmetry
  /// and |f| <= 1). Custom tables are checked here, eagerly.
  void validate() const;

  /// Flat key-value text form, one "key=value" per line.
  std::string to_key_value() const;
  static ModelParams from_key_value(const std::string& text);
};

/// The table f(0..L-1) for the given family. Exact symmetry f(r) = f(L-r).
std::vector<double> coupling_table(const ModelParams& params);

/// sum_{r=0}^{L-1} f(r).
double coupling_sum(const ModelParams& params);

/// Mode mass m_k with 1/m_k = 1 + 2 lambda sum_r cos(2 pi k r / L) f(r).
/// Throws NonPositiveMass when 1/m_k <= 0.
double fourier_mass(const ModelParams& params, int k);

/// All L mode masses, k = 0..L-1, in one pass over the table.
std::vector<double> fourier_masses(const ModelParams& params);

/// True iff min_k 1/m_k > 0, i.e. the mass matrix delta_ij + 2 lambda f(|i-j|)
/// is positive-definite at these parameters.
bool check_positive_definite(const ModelParams& params);

}  // namespace splitgap
