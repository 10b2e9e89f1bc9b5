#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "splitgap/basis.hpp"
#include "splitgap/model.hpp"

namespace splitgap {

/// Matrix-free H = -sum_j s^z_j s^z_{j+1} + lambda sum_{ij} f(|i-j|) s^x_i s^x_j
/// restricted to one Ising-parity sector, in the x basis.
///
/// The long-range term is diagonal (precomputed once); each s^z s^z bond
/// contributes one off-diagonal -1 per state, at the index obtained by
/// flipping the two bond bits.
class ChainHamiltonian {
 public:
  ChainHamiltonian(const ModelParams& params, ParitySector sector);

  std::uint64_t dimension() const { return basis_.dimension(); }
  const BasisIndexer& basis() const { return basis_; }

  /// out = H v. Parallelized over output indices when num_threads > 1;
  /// every output slot has exactly one writer and a fixed accumulation
  /// order, so results are bit-identical for any thread count.
  void apply(std::span<const double> v, std::span<double> out, int num_threads = 1) const;

  /// Dense matrix of this sector block (for the dense solver path and tests).
  std::vector<double> dense() const;  // row-major dimension x dimension

  double diagonal(std::uint64_t index) const { return diag_[index]; }

 private:
  ModelParams params_;
  BasisIndexer basis_;
  std::vector<double> diag_;
  std::vector<std::uint64_t> bond_masks_;
};

}  // namespace splitgap
