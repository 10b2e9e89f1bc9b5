#include "splitgap/hamiltonian.hpp"

#include <bit>
#include <stdexcept>
#include <thread>

namespace splitgap {

ChainHamiltonian::ChainHamiltonian(const ModelParams& params, ParitySector sector)
    : params_(params), basis_(params.L, sector) {
  params_.validate();
  const int L = params_.L;
  bond_masks_.reserve(L);
  for (int j = 0; j < L; ++j) {
    const std::uint64_t mask =
        (std::uint64_t{1} << j) | (std::uint64_t{1} << ((j + 1) % L));
    bond_masks_.push_back(mask);
  }

  const std::uint64_t dim = basis_.dimension();
  diag_.assign(dim, 0.0);
  if (params_.lambda != 0.0) {
    const auto f = coupling_table(params_);
    // sum_{ij} f(|i-j|) x_i x_j = sum_r f(r) * (L - 2 popcount(b ^ rotl(b, r)))
    for (std::uint64_t i = 0; i < dim; ++i) {
      const std::uint64_t b = basis_.state(i);
      double v = 0.0;
      for (int r = 0; r < L; ++r) {
        const int agree = L - 2 * std::popcount(b ^ rotl_bits(b, r, L));
        v += f[r] * agree;
      }
      diag_[i] = params_.lambda * v;
    }
  }
}

void ChainHamiltonian::apply(std::span<const double> v, std::span<double> out,
                             int num_threads) const {
  const std::uint64_t dim = basis_.dimension();
  if (v.size() != dim || out.size() != dim)
    throw std::invalid_argument("ChainHamiltonian::apply: dimension mismatch");

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t b = basis_.state(i);
      double acc = diag_[i] * v[i];
      for (const std::uint64_t mask : bond_masks_) {
        acc -= v[basis_.index(b ^ mask)];
      }
      out[i] = acc;
    }
  };

  if (num_threads <= 1 || dim < 4096) {
    work(0, dim);
    return;
  }
  const int nt = std::min<int>(num_threads, 64);
  std::vector<std::thread> threads;
  threads.reserve(nt);
  const std::uint64_t chunk = (dim + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::uint64_t begin = t * chunk;
    const std::uint64_t end = std::min(dim, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back(work, begin, end);
  }
  for (auto& th : threads) th.join();
}

std::vector<double> ChainHamiltonian::dense() const {
  const std::uint64_t dim = basis_.dimension();
  if (dim > (std::uint64_t{1} << 13))
    throw std::invalid_argument("ChainHamiltonian::dense: sector dimension too large");
  std::vector<double> m(dim * dim, 0.0);
  for (std::uint64_t i = 0; i < dim; ++i) {
    m[i * dim + i] = diag_[i];
    const std::uint64_t b = basis_.state(i);
    for (const std::uint64_t mask : bond_masks_) {
      m[basis_.index(b ^ mask) * dim + i] -= 1.0;
    }
  }
  return m;
}

}  // namespace splitgap
