#include "cubetest/gf2.hpp"

#include <bit>
#include <ostream>
#include <string>

#include "cubetest/errors.hpp"

namespace cubetest {

BooleanMatrix::BooleanMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

void BooleanMatrix::set(std::size_t r, std::size_t c, bool v) {
  auto& w = data_[r * stride_ + c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  w = v ? (w | bit) : (w & ~bit);
}

BitRow BooleanMatrix::row(std::size_t r) const {
  return BitRow(data_.begin() + static_cast<std::ptrdiff_t>(r * stride_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * stride_));
}

std::size_t BooleanMatrix::row_weight(std::size_t r) const {
  std::size_t w = 0;
  for (std::size_t k = 0; k < stride_; ++k) w += static_cast<std::size_t>(std::popcount(data_[r * stride_ + k]));
  return w;
}

BooleanMatrix BooleanMatrix::transpose() const {
  BooleanMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < stride_; ++k) {
      std::uint64_t w = data_[r * stride_ + k];
      while (w != 0) {
        const std::size_t c = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
        t.set(c, r);
        w &= w - 1;
      }
    }
  }
  return t;
}

BooleanMatrix BooleanMatrix::operator*(const BooleanMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("matrix shapes do not compose");
  BooleanMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t* dst = &out.data_[r * out.stride_];
    for (std::size_t k = 0; k < stride_; ++k) {
      std::uint64_t w = data_[r * stride_ + k];
      while (w != 0) {
        const std::size_t c = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
        const std::uint64_t* src = &other.data_[c * other.stride_];
        for (std::size_t j = 0; j < out.stride_; ++j) dst[j] ^= src[j];
        w &= w - 1;
      }
    }
  }
  return out;
}

bool BooleanMatrix::is_zero() const {
  for (auto w : data_) {
    if (w != 0) return false;
  }
  return true;
}

BitRow BooleanMatrix::apply(std::span<const std::uint64_t> x) const {
  if (x.size() < stride_) throw DimensionError("vector is shorter than the matrix width");
  BitRow out(words_for(rows_), 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < stride_; ++k) acc ^= data_[r * stride_ + k] & x[k];
    if (std::popcount(acc) & 1) out[r / 64] |= std::uint64_t{1} << (r % 64);
  }
  return out;
}

void BooleanMatrix::write_sparse(std::ostream& os) const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) os << r << ' ' << c << " 1\n";
    }
  }
}

EchelonBasis::EchelonBasis(std::size_t bits) : bits_(bits), pivot_row_(bits, -1) {}

void EchelonBasis::reduce(BitRow& v) const {
  const std::size_t words = v.size();
  for (std::size_t k = 0; k < words; ++k) {
    while (v[k] != 0) {
      const std::size_t p = k * 64 + static_cast<std::size_t>(std::countr_zero(v[k]));
      const auto r = pivot_row_[p];
      if (r < 0) return;
      const BitRow& b = rows_[static_cast<std::size_t>(r)];
      for (std::size_t j = k; j < words; ++j) v[j] ^= b[j];
    }
  }
}

bool EchelonBasis::insert(BitRow v) {
  if (v.size() != words_for(bits_)) throw DimensionError("vector length does not match the basis");
  reduce(v);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) {
      const std::size_t p = k * 64 + static_cast<std::size_t>(std::countr_zero(v[k]));
      pivot_row_[p] = static_cast<std::int32_t>(rows_.size());
      rows_.push_back(std::move(v));
      return true;
    }
  }
  return false;
}

bool EchelonBasis::contains(BitRow v) const {
  if (v.size() != words_for(bits_)) throw DimensionError("vector length does not match the basis");
  reduce(v);
  for (auto w : v) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t rank(const BooleanMatrix& m) {
  EchelonBasis basis(m.cols());
  for (std::size_t r = 0; r < m.rows() && basis.rank() < m.cols(); ++r) basis.insert(m.row(r));
  return basis.rank();
}

std::vector<BitRow> kernel_basis(const BooleanMatrix& m) {
  // reduced row echelon form, pivots in column order
  std::vector<BitRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  const std::size_t words = m.row_words();
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
    const std::size_t k = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t sel = rank;
    while (sel < rows.size() && !(rows[sel][k] & bit)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][k] & bit)) {
        for (std::size_t j = 0; j < words; ++j) rows[r][j] ^= rows[rank][j];
      }
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<BitRow> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitRow x(words_for(m.cols()), 0);
    x[free / 64] |= std::uint64_t{1} << (free % 64);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      if ((rows[i][free / 64] >> (free % 64)) & 1U) x[pivot_cols[i] / 64] |= std::uint64_t{1} << (pivot_cols[i] % 64);
    }
    out.push_back(std::move(x));
  }
  return out;
}

BitRow to_bits(const Cochain& c) {
  const auto w = c.words();
  BitRow out(w.begin(), w.end());
  out.resize(words_for(c.size()), 0);
  return out;
}

Cochain from_bits(const BitRow& bits, int n, int d) {
  Cochain c(n, d);
  if (bits.size() < words_for(c.size())) throw DimensionError("bit vector is shorter than the cochain");
  for (std::uint64_t x = 0; x < c.size(); ++x) {
    if ((bits[x / 64] >> (x % 64)) & 1U) c.flip(x);
  }
  return c;
}

BooleanMatrix differential_matrix(int n, int d, int d_target) {
  if (d < 0 || d_target <= d || d_target > 3) {
    throw DimensionError("differential matrix needs 0 <= d < d' <= 3 (got " + std::to_string(d) + ", " +
                         std::to_string(d_target) + ")");
  }
  if (n < corners_of(d_target)) {
    throw EmptyComplexError("complex on " + std::to_string(n) + " vertices has no " + std::to_string(d_target) + "-cells");
  }
  BooleanMatrix m(cell_count(n, d_target), cell_count(n, d));
  for_each_cell(n, d_target, [&](std::uint64_t r, const Cell& c) {
    const auto ids = c.ids();
    if (d == 0) {
      for (Vertex v : ids) m.set(r, static_cast<std::size_t>(v));
    } else if (d == 1 && d_target == 2) {
      for (std::size_t t = 0; t < 4; ++t) m.set(r, CellIndex::edge_index(ids[t], ids[(t + 1) % 4]));
    } else if (d == 1) {
      for (const auto& e : cube_edges(ids)) m.set(r, CellIndex::edge_index(e[0], e[1]));
    } else {
      for (const auto& face : cube_faces(ids)) m.set(r, CellIndex::square_index(face));
    }
  });
  return m;
}

}  // namespace cubetest
