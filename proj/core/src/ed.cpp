#include "splitgap/ed.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "splitgap/errors.hpp"
#include "splitgap/hamiltonian.hpp"

namespace splitgap {

namespace {

Eigen::MatrixXd sector_dense(const ChainHamiltonian& ham) {
  const auto dim = static_cast<Eigen::Index>(ham.dimension());
  const auto raw = ham.dense();
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = raw[r * dim + c];
  return m;
}

}  // namespace

LanczosOutcome sector_ground_energy(const ModelParams& params, ParitySector sector,
                                    const EigensolverConfig& config) {
  params.validate();
  ChainHamiltonian ham(params, sector);
  if (config.method == EigensolverMethod::Dense) {
    if (params.L > 14)
      throw TooLarge("dense eigensolver permitted only for L <= 14, got L=" +
                     std::to_string(params.L));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector_dense(ham),
                                                          Eigen::EigenvaluesOnly);
    return {solver.eigenvalues().minCoeff(), 0.0, 0, true};
  }
  const auto matvec = [&ham, &config](std::span<const double> v, std::span<double> out) {
    ham.apply(v, out, config.num_threads);
  };
  LanczosOptions opts;
  opts.max_iterations = config.max_iterations;
  opts.tolerance = config.tolerance;
  opts.rng_seed = config.rng_seed;
  return lanczos_lowest(matvec, ham.dimension(), opts);
}

SpectralResult splitting_ed(const ModelParams& params, const EigensolverConfig& config) {
  params.validate();
  if (params.L % 2 != 0)
    throw std::invalid_argument("splitting_ed: chain splitting requires even L");
  if (params.coupling == CouplingKind::AllToAll && params.lambda > 0.0 &&
      params.L % 4 != 0)
    throw std::invalid_argument(
        "splitting_ed: all-to-all chain requires L to be a multiple of 4");

  const LanczosOutcome plus = sector_ground_energy(params, ParitySector::plus(), config);
  const LanczosOutcome minus = sector_ground_energy(params, ParitySector::minus(), config);
  SpectralResult result;
  result.E_plus = plus.eigenvalue;
  result.E_minus = minus.eigenvalue;
  result.delta = minus.eigenvalue - plus.eigenvalue;
  result.residual_plus = plus.residual;
  result.residual_minus = minus.residual;
  result.err_bound = plus.residual + minus.residual;
  result.iterations_plus = plus.iterations;
  result.iterations_minus = minus.iterations;
  return result;
}

ThermalResult thermal_observables(const ModelParams& params, double beta) {
  params.validate();
  if (params.L > 12)
    throw TooLarge("thermal_observables: dense full-spectrum path requires L <= 12");
  if (!(beta > 0.0) || std::isinf(beta))
    throw std::invalid_argument("thermal_observables: beta must be finite and positive");

  // Per-sector full spectra; traces assembled with a common energy shift.
  Eigen::VectorXd evals[2];
  Eigen::MatrixXd evecs[2];
  ChainHamiltonian ham_plus(params, ParitySector::plus());
  ChainHamiltonian ham_minus(params, ParitySector::minus());
  const ChainHamiltonian* hams[2] = {&ham_plus, &ham_minus};
  for (int s = 0; s < 2; ++s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector_dense(*hams[s]));
    evals[s] = solver.eigenvalues();
    evecs[s] = solver.eigenvectors();
  }
  const double e0 = std::min(evals[0].minCoeff(), evals[1].minCoeff());

  double z[2] = {0.0, 0.0};
  for (int s = 0; s < 2; ++s)
    for (Eigen::Index i = 0; i < evals[s].size(); ++i)
      z[s] += std::exp(-beta * (evals[s][i] - e0));

  ThermalResult out;
  out.s_beta = (z[0] - z[1]) / (z[0] + z[1]);
  out.deltaF_beta = (1.0 / beta) * std::log((1.0 + out.s_beta) / (1.0 - out.s_beta));

  // <s^z_0 s^z_1>: in the x basis the bond operator flips bits 0 and 1.
  double num = 0.0;
  for (int s = 0; s < 2; ++s) {
    const BasisIndexer& basis = hams[s]->basis();
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    std::vector<Eigen::Index> partner(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      partner[i] = static_cast<Eigen::Index>(basis.index(basis.state(i) ^ 0b11ULL));
    for (Eigen::Index n = 0; n < dim; ++n) {
      double me = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i) me += evecs[s](i, n) * evecs[s](partner[i], n);
      num += std::exp(-beta * (evals[s][n] - e0)) * me;
    }
  }
  out.zz_corr = num / (z[0] + z[1]);
  return out;
}

}  // namespace splitgap
