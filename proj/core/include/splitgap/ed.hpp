#pragma once

#include <cstdint>

#include "splitgap/basis.hpp"
#include "splitgap/lanczos.hpp"
#include "splitgap/model.hpp"

namespace splitgap {

enum class EigensolverMethod { Lanczos, Dense };

struct EigensolverConfig {
  EigensolverMethod method = EigensolverMethod::Lanczos;
  int max_iterations = 500;
  double tolerance = 1e-12;
  std::uint64_t rng_seed = 0x5eed5eedULL;
  int num_threads = 1;  // threads inside one matvec
};

/// Ground-state splitting between the two Ising-parity sectors.
struct SpectralResult {
  double E_plus = 0.0;
  double E_minus = 0.0;
  double delta = 0.0;  // E_minus - E_plus, stored exactly as that difference
  double err_bound = 0.0;  // sum of the two per-sector residual bounds
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  int iterations_plus = 0;
  int iterations_minus = 0;
};

struct ThermalResult {
  double s_beta = 0.0;     // Tr[e^-bH S] / Tr[e^-bH], in [-1, 1]
  double deltaF_beta = 0.0;  // (1/beta) log((1+s)/(1-s))
  double zz_corr = 0.0;    // <s^z_j s^z_{j+1}> at inverse temperature beta
};

/// Lowest eigenvalue of one parity sector. Dense is limited to L <= 14.
LanczosOutcome sector_ground_energy(const ModelParams& params, ParitySector sector,
                                    const EigensolverConfig& config);

/// delta = E_minus - E_plus.
///
/// Requires even L; the all-to-all chain with lambda > 0 additionally
/// requires L to be a multiple of 4 (otherwise the sign of delta alternates
/// with L and the asymptotic comparisons are meaningless).
SpectralResult splitting_ed(const ModelParams& params, const EigensolverConfig& config);

/// Full-spectrum thermal observables at inverse temperature beta, dense path.
/// Throws TooLarge for L > 12; beta must be finite.
ThermalResult thermal_observables(const ModelParams& params, double beta);

}  // namespace splitgap
