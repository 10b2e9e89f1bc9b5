#pragma once

// Independent oracles for the unit suites. Everything here is built in the
// z basis by explicit enumeration, deliberately sharing no code with the
// library's x-basis engine.

#include <Eigen/Dense>
#include <utility>

#include "splitgap/model.hpp"
#include "splitgap/toy.hpp"

namespace oracles {

/// Full 2^L chain Hamiltonian in the z basis (bit = 1 means s^z = -1):
/// H0 diagonal, the long-range s^x s^x term purely off-diagonal.
Eigen::MatrixXd zbasis_chain(const splitgap::ModelParams& params);

/// Parity-sector blocks of a z-basis Hamiltonian, built in the paired basis
/// (|c> +- |c~>)/sqrt(2), c~ = global spin flip of c. first = S=+1 block.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> sector_blocks(const Eigen::MatrixXd& h, int L);

/// Ground energies (E_plus, E_minus) of the chain by dense z-basis ED.
std::pair<double, double> chain_ground_energies(const splitgap::ModelParams& params);

/// s_beta = (Z+ - Z-)/(Z+ + Z-) from the z-basis sector spectra.
double thermal_s_beta(const splitgap::ModelParams& params, double beta);

/// Classical 1D Ising nearest-neighbor correlation at lambda = 0:
/// (t + t^{L-1}) / (1 + t^L), t = tanh(beta).
double transfer_matrix_zz(int L, double beta);

/// Thermal <s^z_0 s^z_1> of the full model from the z-basis spectrum, where
/// the bond operator is diagonal.
double thermal_zz(const splitgap::ModelParams& params, double beta);

/// Toy-model P = sum_j O_j as a dense z-basis matrix for the named choices.
Eigen::MatrixXd zbasis_toy_p(const splitgap::OperatorChoice& choice, int L);

/// Toy secular function f_pm(eta) by an explicit dense resolvent solve.
double toy_secular_resolvent(const splitgap::OperatorChoice& choice,
                             const splitgap::ModelParams& params, double eta, int sector);

/// Toy ground energies by dense z-basis ED of the full toy Hamiltonian.
std::pair<double, double> toy_ground_energies(const splitgap::OperatorChoice& choice,
                                              const splitgap::ModelParams& params);

/// Plain least-squares line y = a x + b; returns (a, b).
std::pair<double, double> linear_regression(const std::vector<double>& x,
                                            const std::vector<double>& y);

}  // namespace oracles
