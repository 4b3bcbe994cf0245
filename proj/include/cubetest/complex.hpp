#pragma once

// Cells of the complete cubical complex on n vertices, up to dimension 3.
//
// A d-cell is a set of 2^d vertices carrying the graph structure of the
// d-cube. Two labelings of the cube corners describe the same cell exactly
// when they differ by a cube automorphism; the canonical representative is
// the lexicographically least labeling in that orbit.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace cubetest {

using Vertex = int;
using Rng = std::mt19937_64;

/// Largest vertex count accepted by indexing (keeps C(n, 8) inside 64 bits).
inline constexpr int kMaxVertices = 512;
inline constexpr int kMaxDim = 3;

constexpr int corners_of(int dim) { return 1 << dim; }

/// A d-cell given by its corner labeling: ids()[c] is the vertex at corner c of
/// {0,1}^d, where bit k of c is coordinate k. Squares list corners in cycle
/// order instead (see Square), which is the same thing up to relabeling.
class Cell {
 public:
  Cell() = default;
  Cell(int dim, std::span<const Vertex> ids);

  int dim() const { return dim_; }
  std::size_t size() const { return static_cast<std::size_t>(corners_of(dim_)); }
  std::span<const Vertex> ids() const { return {ids_.data(), size()}; }
  Vertex operator[](std::size_t i) const { return ids_[i]; }

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;

 private:
  std::array<Vertex, 8> ids_{};
  int dim_ = 0;
};

/// 2-cell: the 4-cycle cycle[0] - cycle[1] - cycle[2] - cycle[3] - cycle[0].
struct Square {
  std::array<Vertex, 4> cycle{};

  Cell cell() const { return Cell(2, cycle); }
  friend bool operator==(const Square&, const Square&) = default;
  friend auto operator<=>(const Square&, const Square&) = default;
};

/// 3-cell: labeling[c] sits on corner c of {0,1}^3.
struct Cube3 {
  std::array<Vertex, 8> labeling{};

  Cell cell() const { return Cell(3, labeling); }
  friend bool operator==(const Cube3&, const Cube3&) = default;
  friend auto operator<=>(const Cube3&, const Cube3&) = default;
};

std::uint64_t binomial(int n, int k);

/// C(n, 2^d) * (2^d)! / (2^d * d!).
std::uint64_t cell_count(int n, int d);

/// Number of distinct labelings of one 2^d-subset: 1, 1, 3, 840.
std::uint64_t cells_per_subset(int d);

/// Lexicographically least member of the dihedral orbit of the 4-cycle.
Square canonical_square(Vertex i, Vertex j, Vertex k, Vertex l);
Square canonical_square(const std::array<Vertex, 4>& cycle);

/// Lexicographically least labeling under the 48 automorphisms of the 3-cube.
Cube3 canonical_cube(std::span<const Vertex> labeling);

/// Canonical form of any cell of dimension 0..3.
Cell canonical(const Cell& cell);

/// The 48 automorphisms of the 3-cube graph, as corner permutations.
const std::vector<std::array<int, 8>>& cube_automorphisms();

/// The 8 labelings of the same square obtained by rotating/reflecting the cycle.
std::array<std::array<Vertex, 4>, 8> square_orbit(const std::array<Vertex, 4>& cycle);

/// The 2d walls of a cell, each in canonical form.
std::vector<Cell> walls(const Cell& cell);

/// The six faces of a cube, as 4-cycles (not canonicalized).
std::array<std::array<Vertex, 4>, 6> cube_faces(std::span<const Vertex> labeling);

/// The twelve edges of a cube, as unordered corner pairs mapped to vertices.
std::array<std::array<Vertex, 2>, 12> cube_edges(std::span<const Vertex> labeling);

/// Dense bijection between canonical d-cells on n vertices and [0, size()).
///
/// Index = colex rank of the vertex subset * cells_per_subset(d) + rank of the
/// labeling within that subset.
class CellIndex {
 public:
  CellIndex(int n, int d);

  int n() const { return n_; }
  int dim() const { return d_; }
  std::uint64_t size() const { return size_; }

  /// Index of the cell with this labeling; the labeling need not be canonical.
  std::uint64_t index(const Cell& cell) const;
  Cell cell(std::uint64_t index) const;

  // Fast paths for the hot loops, no canonicalization step needed by callers.
  static std::uint64_t edge_index(Vertex i, Vertex j);
  static std::uint64_t square_index(const std::array<Vertex, 4>& cycle);
  static std::uint64_t cube_index(std::span<const Vertex> labeling);

 private:
  int n_;
  int d_;
  std::uint64_t size_;
};

/// Every canonical d-cell, in index order.
std::vector<Cell> enumerate_cells(int n, int d);

/// Calls fn(index, cell) for every canonical d-cell, in index order.
void for_each_cell(int n, int d, const std::function<void(std::uint64_t, const Cell&)>& fn);

/// Colex rank of a strictly increasing vertex subset.
std::uint64_t subset_rank(std::span<const Vertex> sorted);

/// Uniform element of X^[k]: a k-tuple of distinct vertices from [0, n).
std::vector<Vertex> sample_tuple(int n, int k, Rng& rng);

/// Same, written into `out` (size k); avoids allocation in sampling loops.
void sample_tuple_into(int n, std::span<Vertex> out, Rng& rng);

/// Uniform element of X^[k] avoiding every vertex in `excluded`.
void sample_tuple_avoiding(int n, std::span<Vertex> out, std::span<const Vertex> excluded, Rng& rng);

/// Calls fn(tuple) for every k-tuple of distinct vertices in [0, n) that
/// avoids `excluded`, in lexicographic order.
template <typename Fn>
void for_each_tuple(int n, int k, std::span<const Vertex> excluded, Fn&& fn) {
  std::vector<Vertex> tuple(static_cast<std::size_t>(k));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (Vertex v : excluded) used[static_cast<std::size_t>(v)] = 1;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      fn(std::span<const Vertex>(tuple));
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      tuple[static_cast<std::size_t>(depth)] = v;
      self(self, depth + 1);
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec(rec, 0);
}

/// n (n-1) ... (n-k+1), saturating at UINT64_MAX.
std::uint64_t falling_factorial(int n, int k);

}  // namespace cubetest
