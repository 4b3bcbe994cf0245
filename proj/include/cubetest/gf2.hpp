#pragma once

// Linear algebra over the two-element field on bit-packed rows. A sign -1 is
// the field element 1, so products of signs become sums of vectors.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cubetest/cochain.hpp"

namespace cubetest {

using BitRow = std::vector<std::uint64_t>;

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

class BooleanMatrix {
 public:
  BooleanMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t row_words() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const { return (data_[r * stride_ + c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v = true);
  BitRow row(std::size_t r) const;

  std::size_t row_weight(std::size_t r) const;
  BooleanMatrix transpose() const;
  BooleanMatrix operator*(const BooleanMatrix& other) const;
  bool is_zero() const;

  /// M x for x given as a cochain (minus = 1); the result has one entry per row.
  BitRow apply(std::span<const std::uint64_t> x) const;

  /// One `r c 1` line per nonzero entry.
  void write_sparse(std::ostream& os) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::vector<std::uint64_t> data_;
};

/// Row-echelon basis grown one vector at a time. Every stored row has a
/// distinct lowest set bit (its pivot).
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t bits);

  /// Reduces v against the basis; keeps it if independent. Returns true then.
  bool insert(BitRow v);
  /// True when v lies in the span.
  bool contains(BitRow v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t bits() const { return bits_; }

 private:
  void reduce(BitRow& v) const;

  std::size_t bits_;
  std::vector<BitRow> rows_;
  std::vector<std::int32_t> pivot_row_;
};

std::size_t rank(const BooleanMatrix& m);

/// Basis of {x : M x = 0}.
std::vector<BitRow> kernel_basis(const BooleanMatrix& m);

BitRow to_bits(const Cochain& c);
Cochain from_bits(const BitRow& bits, int n, int d);

/// Row per d'-cell, column per d-cell; 1 where the d-cell is a d-face of the
/// d'-cell. Needs 0 <= d < d' <= 3 and n >= 2^d'.
BooleanMatrix differential_matrix(int n, int d, int d_target);
inline BooleanMatrix differential_matrix(int n, int d) { return differential_matrix(n, d, d + 1); }

}  // namespace cubetest
