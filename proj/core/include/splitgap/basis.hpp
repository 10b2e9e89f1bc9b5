#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace splitgap {

/// Ising-parity sector: eigenvalue of S = prod_j sigma^x_j.
struct ParitySector {
  int sign = +1;  // +1 or -1

  static ParitySector plus() { return {+1}; }
  static ParitySector minus() { return {-1}; }
};

/// Indexes the x-basis bitstrings of one parity sector.
///
/// Convention: bit j = 0 means x_j = +1, bit j = 1 means x_j = -1, so the
/// sector sign is (-1)^popcount. The low L-1 bits are free and the top bit
/// completes the parity, which makes index <-> bitstring O(1) both ways.
class BasisIndexer {
 public:
  BasisIndexer(int L, ParitySector sector) : L_(L), sector_(sector) {
    if (L < 2 || L > 28) throw std::invalid_argument("BasisIndexer: L out of range [2, 28]");
    if (sector.sign != 1 && sector.sign != -1)
      throw std::invalid_argument("BasisIndexer: sector sign must be +1 or -1");
  }

  int sites() const { return L_; }
  ParitySector sector() const { return sector_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << (L_ - 1); }

  std::uint64_t state(std::uint64_t index) const {
    const int want_odd = sector_.sign == -1 ? 1 : 0;
    const std::uint64_t top = (std::popcount(index) & 1) ^ want_odd;
    return index | (top << (L_ - 1));
  }

  std::uint64_t index(std::uint64_t bits) const {
    return bits & ((std::uint64_t{1} << (L_ - 1)) - 1);
  }

 private:
  int L_;
  ParitySector sector_;
};

/// Cyclic left rotation of an L-bit string.
inline std::uint64_t rotl_bits(std::uint64_t b, int r, int L) {
  const std::uint64_t mask = (std::uint64_t{1} << L) - 1;
  r %= L;
  if (r == 0) return b & mask;
  return ((b << r) | (b >> (L - r))) & mask;
}

}  // namespace splitgap
