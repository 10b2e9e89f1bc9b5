#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace splitgap {

struct LanczosOptions {
  int max_iterations = 600;
  double tolerance = 1e-12;  // on the residual bound |beta_m s_m|
  std::uint64_t rng_seed = 0x5eed5eedULL;
  int check_every = 5;
};

struct LanczosOutcome {
  double eigenvalue = 0.0;
  double residual = 0.0;  // |beta_m s_m| at the accepted Ritz value
  int iterations = 0;
  bool converged = false;
};

/// Lowest eigenvalue of a symmetric operator by Lanczos with full
/// reorthogonalization (two classical Gram-Schmidt passes per step) and a
/// deterministic seeded start vector.
///
/// A breakdown (beta below 1e-14 * scale) means an invariant subspace was
/// found; a fresh seeded vector orthogonal to everything so far is injected
/// and the tridiagonal continues with a zero off-diagonal, so exactly
/// degenerate inputs (e.g. lambda = 0) are supported.
///
/// Throws NotConverged when max_iterations Krylov vectors are exhausted
/// before the residual bound reaches tolerance.
LanczosOutcome lanczos_lowest(
    const std::function<void(std::span<const double>, std::span<double>)>& matvec,
    std::uint64_t dimension, const LanczosOptions& options);

}  // namespace splitgap
