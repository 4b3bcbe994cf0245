#include "cubetest/complex.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cubetest/errors.hpp"

namespace cubetest {

namespace {

constexpr int kBinomRows = kMaxVertices + 1;
constexpr int kBinomCols = 9;
constexpr int kPermCount = 40320;  // 8!

const std::array<std::uint64_t, kBinomRows * kBinomCols>& binomial_table() {
  static const auto table = [] {
    std::array<std::uint64_t, kBinomRows * kBinomCols> t{};
    for (int n = 0; n < kBinomRows; ++n) {
      t[n * kBinomCols] = 1;
      for (int k = 1; k < kBinomCols; ++k) {
        t[n * kBinomCols + k] = n == 0 ? 0 : t[(n - 1) * kBinomCols + k - 1] + t[(n - 1) * kBinomCols + k];
      }
    }
    return t;
  }();
  return table;
}

inline std::uint64_t binom_fast(int n, int k) { return binomial_table()[n * kBinomCols + k]; }

void check_distinct(std::span<const Vertex> ids, const char* what) {
  for (std::size_t a = 0; a < ids.size(); ++a) {
    if (ids[a] < 0) throw InvalidCellError(std::string(what) + ": negative vertex id");
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      if (ids[a] == ids[b]) throw InvalidCellError(std::string(what) + ": repeated vertex " + std::to_string(ids[a]));
    }
  }
}

int lehmer_rank(const std::array<int, 8>& perm) {
  static constexpr std::array<int, 8> fact = {5040, 720, 120, 24, 6, 2, 1, 1};
  int rank = 0;
  for (int i = 0; i < 8; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 8; ++j) smaller += perm[j] < perm[i] ? 1 : 0;
    rank += smaller * fact[i];
  }
  return rank;
}

struct CubeTables {
  std::vector<std::array<int, 8>> automorphisms;
  std::vector<std::uint16_t> rank_of_perm;       // Lehmer rank -> within-subset rank
  std::vector<std::array<int, 8>> patterns;      // within-subset rank -> canonical local labeling
};

const CubeTables& cube_tables() {
  static const CubeTables tables = [] {
    CubeTables t;
    std::array<int, 3> axes = {0, 1, 2};
    do {
      for (int mask = 0; mask < 8; ++mask) {
        std::array<int, 8> sigma{};
        for (int c = 0; c < 8; ++c) {
          int image = 0;
          for (int k = 0; k < 3; ++k) image |= ((c >> k) & 1) << axes[static_cast<std::size_t>(k)];
          sigma[static_cast<std::size_t>(c)] = image ^ mask;
        }
        t.automorphisms.push_back(sigma);
      }
    } while (std::next_permutation(axes.begin(), axes.end()));

    std::vector<int> canon_of(kPermCount);
    std::vector<char> is_canon(kPermCount, 0);
    std::array<int, 8> perm{};
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::array<int, 8> best = perm;
      for (const auto& sigma : t.automorphisms) {
        std::array<int, 8> image{};
        for (int c = 0; c < 8; ++c) image[static_cast<std::size_t>(c)] = perm[static_cast<std::size_t>(sigma[static_cast<std::size_t>(c)])];
        best = std::min(best, image);
      }
      const int r = lehmer_rank(best);
      canon_of[static_cast<std::size_t>(lehmer_rank(perm))] = r;
      is_canon[static_cast<std::size_t>(r)] = 1;
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Lehmer rank is monotone in lexicographic order, so scanning ranks in
    // increasing order lists canonical patterns lexicographically.
    std::vector<std::uint16_t> rank_of_canon(kPermCount, 0);
    std::iota(perm.begin(), perm.end(), 0);
    int lr = 0;
    do {
      if (is_canon[static_cast<std::size_t>(lr)]) {
        rank_of_canon[static_cast<std::size_t>(lr)] = static_cast<std::uint16_t>(t.patterns.size());
        t.patterns.push_back(perm);
      }
      ++lr;
    } while (std::next_permutation(perm.begin(), perm.end()));

    t.rank_of_perm.resize(kPermCount);
    for (int p = 0; p < kPermCount; ++p) {
      t.rank_of_perm[static_cast<std::size_t>(p)] = rank_of_canon[static_cast<std::size_t>(canon_of[static_cast<std::size_t>(p)])];
    }
    return t;
  }();
  return tables;
}

// Colex unranking of a k-subset of [0, n).
void unrank_subset(std::uint64_t rank, int n, int k, std::span<Vertex> out) {
  int v = n - 1;
  for (int t = k - 1; t >= 0; --t) {
    while (binom_fast(v, t + 1) > rank) --v;
    out[static_cast<std::size_t>(t)] = v;
    rank -= binom_fast(v, t + 1);
    --v;
  }
}

Cell build_cell(int d, std::span<const Vertex> sorted, std::uint64_t within) {
  switch (d) {
    case 0:
    case 1:
      return Cell(d, sorted);
    case 2: {
      const Vertex opp = sorted[within + 1];
      std::array<Vertex, 2> others{};
      std::size_t o = 0;
      for (std::size_t t = 1; t < 4; ++t) {
        if (sorted[t] != opp) others[o++] = sorted[t];
      }
      const std::array<Vertex, 4> cyc = {sorted[0], others[0], opp, others[1]};
      return Cell(2, cyc);
    }
    default: {
      const auto& pattern = cube_tables().patterns[within];
      std::array<Vertex, 8> lab{};
      for (std::size_t c = 0; c < 8; ++c) lab[c] = sorted[static_cast<std::size_t>(pattern[c])];
      return Cell(3, lab);
    }
  }
}

void check_dim(int d) {
  if (d < 0 || d > kMaxDim) throw DimensionError("cell dimension must be in [0, 3], got " + std::to_string(d));
}

}  // namespace

Cell::Cell(int dim, std::span<const Vertex> ids) : dim_(dim) {
  check_dim(dim);
  if (ids.size() != size()) {
    throw InvalidCellError("a " + std::to_string(dim) + "-cell needs " + std::to_string(size()) + " vertices, got " +
                           std::to_string(ids.size()));
  }
  std::copy(ids.begin(), ids.end(), ids_.begin());
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n < kBinomRows && k < kBinomCols) return binom_fast(n, k);
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t cells_per_subset(int d) {
  check_dim(d);
  static constexpr std::array<std::uint64_t, 4> per = {1, 1, 3, 840};
  return per[static_cast<std::size_t>(d)];
}

std::uint64_t cell_count(int n, int d) { return binomial(n, corners_of(d)) * cells_per_subset(d); }

std::uint64_t falling_factorial(int n, int k) {
  if (k > n) return 0;
  unsigned __int128 r = 1;
  for (int i = 0; i < k; ++i) {
    r *= static_cast<unsigned>(n - i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

Square canonical_square(Vertex i, Vertex j, Vertex k, Vertex l) { return canonical_square({i, j, k, l}); }

Square canonical_square(const std::array<Vertex, 4>& c) {
  check_distinct(c, "square");
  const auto p = static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
  const Vertex left = c[(p + 3) % 4];
  const Vertex right = c[(p + 1) % 4];
  return Square{{c[p], std::min(left, right), c[(p + 2) % 4], std::max(left, right)}};
}

std::array<std::array<Vertex, 4>, 8> square_orbit(const std::array<Vertex, 4>& c) {
  std::array<std::array<Vertex, 4>, 8> orbit{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t t = 0; t < 4; ++t) {
      orbit[r][t] = c[(r + t) % 4];
      orbit[r + 4][t] = c[(r + 4 - t) % 4];
    }
  }
  return orbit;
}

const std::vector<std::array<int, 8>>& cube_automorphisms() { return cube_tables().automorphisms; }

Cube3 canonical_cube(std::span<const Vertex> labeling) {
  if (labeling.size() != 8) throw InvalidCellError("a cube needs 8 vertices");
  check_distinct(labeling, "cube");
  std::array<Vertex, 8> sorted{};
  std::copy(labeling.begin(), labeling.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.end());
  std::array<int, 8> local{};
  for (std::size_t c = 0; c < 8; ++c) {
    local[c] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), labeling[c]) - sorted.begin());
  }
  const auto& t = cube_tables();
  const auto& pattern = t.patterns[t.rank_of_perm[static_cast<std::size_t>(lehmer_rank(local))]];
  Cube3 out;
  for (std::size_t c = 0; c < 8; ++c) out.labeling[c] = sorted[static_cast<std::size_t>(pattern[c])];
  return out;
}

Cell canonical(const Cell& cell) {
  const auto ids = cell.ids();
  switch (cell.dim()) {
    case 0:
      if (ids[0] < 0) throw InvalidCellError("vertex: negative id");
      return cell;
    case 1: {
      check_distinct(ids, "edge");
      const std::array<Vertex, 2> e = {std::min(ids[0], ids[1]), std::max(ids[0], ids[1])};
      return Cell(1, e);
    }
    case 2:
      return canonical_square({ids[0], ids[1], ids[2], ids[3]}).cell();
    default:
      return canonical_cube(ids).cell();
  }
}

std::array<std::array<Vertex, 4>, 6> cube_faces(std::span<const Vertex> lab) {
  std::array<std::array<Vertex, 4>, 6> faces{};
  std::size_t f = 0;
  for (int k = 0; k < 3; ++k) {
    const int p = k == 0 ? 1 : 0;
    const int q = k == 2 ? 1 : 2;
    for (int b = 0; b < 2; ++b) {
      const int base = b << k;
      faces[f++] = {lab[static_cast<std::size_t>(base)], lab[static_cast<std::size_t>(base | (1 << p))],
                    lab[static_cast<std::size_t>(base | (1 << p) | (1 << q))], lab[static_cast<std::size_t>(base | (1 << q))]};
    }
  }
  return faces;
}

std::array<std::array<Vertex, 2>, 12> cube_edges(std::span<const Vertex> lab) {
  std::array<std::array<Vertex, 2>, 12> edges{};
  std::size_t e = 0;
  for (int c = 0; c < 8; ++c) {
    for (int k = 0; k < 3; ++k) {
      if ((c >> k) & 1) continue;
      edges[e++] = {lab[static_cast<std::size_t>(c)], lab[static_cast<std::size_t>(c | (1 << k))]};
    }
  }
  return edges;
}

std::vector<Cell> walls(const Cell& cell) {
  const auto ids = cell.ids();
  std::vector<Cell> out;
  switch (cell.dim()) {
    case 0:
      throw DimensionError("a vertex has no walls");
    case 1:
      out.emplace_back(0, ids.subspan(0, 1));
      out.emplace_back(0, ids.subspan(1, 1));
      break;
    case 2:
      for (std::size_t t = 0; t < 4; ++t) {
        const std::array<Vertex, 2> e = {ids[t], ids[(t + 1) % 4]};
        out.push_back(canonical(Cell(1, e)));
      }
      break;
    default:
      for (const auto& face : cube_faces(ids)) out.push_back(canonical_square(face).cell());
      break;
  }
  return out;
}

std::uint64_t subset_rank(std::span<const Vertex> sorted) {
  std::uint64_t r = 0;
  for (std::size_t t = 0; t < sorted.size(); ++t) r += binom_fast(sorted[t], static_cast<int>(t) + 1);
  return r;
}

CellIndex::CellIndex(int n, int d) : n_(n), d_(d) {
  check_dim(d);
  if (n > kMaxVertices) throw RangeError("vertex count above " + std::to_string(kMaxVertices));
  if (n < corners_of(d)) {
    throw EmptyComplexError("complex on " + std::to_string(n) + " vertices has no " + std::to_string(d) + "-cells");
  }
  size_ = cell_count(n, d);
}

std::uint64_t CellIndex::edge_index(Vertex i, Vertex j) {
  if (i > j) std::swap(i, j);
  return binom_fast(j, 2) + static_cast<std::uint64_t>(i);
}

std::uint64_t CellIndex::square_index(const std::array<Vertex, 4>& c) {
  std::array<Vertex, 4> s = c;
  if (s[0] > s[1]) std::swap(s[0], s[1]);
  if (s[2] > s[3]) std::swap(s[2], s[3]);
  if (s[0] > s[2]) std::swap(s[0], s[2]);
  if (s[1] > s[3]) std::swap(s[1], s[3]);
  if (s[1] > s[2]) std::swap(s[1], s[2]);
  std::size_t p = 0;
  while (c[p] != s[0]) ++p;
  const Vertex opp = c[(p + 2) % 4];
  const std::uint64_t within = opp == s[1] ? 0 : (opp == s[2] ? 1 : 2);
  return (binom_fast(s[0], 1) + binom_fast(s[1], 2) + binom_fast(s[2], 3) + binom_fast(s[3], 4)) * 3 + within;
}

std::uint64_t CellIndex::cube_index(std::span<const Vertex> lab) {
  std::array<Vertex, 8> sorted{};
  std::copy(lab.begin(), lab.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.end());
  std::array<int, 8> local{};
  for (std::size_t c = 0; c < 8; ++c) {
    local[c] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), lab[c]) - sorted.begin());
  }
  return subset_rank(sorted) * 840 + cube_tables().rank_of_perm[static_cast<std::size_t>(lehmer_rank(local))];
}

std::uint64_t CellIndex::index(const Cell& cell) const {
  if (cell.dim() != d_) throw DimensionError("cell dimension does not match index");
  const auto ids = cell.ids();
  for (Vertex v : ids) {
    if (v < 0 || v >= n_) throw InvalidCellError("vertex " + std::to_string(v) + " outside [0, " + std::to_string(n_) + ")");
  }
  check_distinct(ids, "cell");
  switch (d_) {
    case 0:
      return static_cast<std::uint64_t>(ids[0]);
    case 1:
      return edge_index(ids[0], ids[1]);
    case 2:
      return square_index({ids[0], ids[1], ids[2], ids[3]});
    default:
      return cube_index(ids);
  }
}

Cell CellIndex::cell(std::uint64_t index) const {
  if (index >= size_) throw RangeError("cell index out of range");
  const auto per = cells_per_subset(d_);
  std::array<Vertex, 8> sorted{};
  const int k = corners_of(d_);
  unrank_subset(index / per, n_, k, std::span<Vertex>(sorted.data(), static_cast<std::size_t>(k)));
  return build_cell(d_, std::span<const Vertex>(sorted.data(), static_cast<std::size_t>(k)), index % per);
}

std::vector<Cell> enumerate_cells(int n, int d) {
  std::vector<Cell> out;
  out.reserve(CellIndex(n, d).size());
  for_each_cell(n, d, [&](std::uint64_t, const Cell& c) { out.push_back(c); });
  return out;
}

void for_each_cell(int n, int d, const std::function<void(std::uint64_t, const Cell&)>& fn) {
  const CellIndex idx(n, d);
  const int k = corners_of(d);
  const auto per = cells_per_subset(d);
  std::vector<Vertex> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  std::uint64_t index = 0;
  while (true) {
    for (std::uint64_t w = 0; w < per; ++w) fn(index++, build_cell(d, s, w));
    // next subset in colex order
    int t = 0;
    while (t < k && s[static_cast<std::size_t>(t)] + 1 == (t + 1 < k ? s[static_cast<std::size_t>(t) + 1] : n)) ++t;
    if (t == k) break;
    ++s[static_cast<std::size_t>(t)];
    for (int u = 0; u < t; ++u) s[static_cast<std::size_t>(u)] = u;
  }
}

void sample_tuple_avoiding(int n, std::span<Vertex> out, std::span<const Vertex> excluded, Rng& rng) {
  const auto k = out.size();
  if (static_cast<std::size_t>(n) < k + excluded.size()) {
    throw RangeError("cannot draw " + std::to_string(k) + " distinct vertices from " + std::to_string(n));
  }
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  auto taken = [&](Vertex v, std::size_t filled) {
    for (Vertex e : excluded) {
      if (e == v) return true;
    }
    for (std::size_t t = 0; t < filled; ++t) {
      if (out[t] == v) return true;
    }
    return false;
  };
  for (std::size_t t = 0; t < k; ++t) {
    Vertex v = pick(rng);
    while (taken(v, t)) v = pick(rng);
    out[t] = v;
  }
}

void sample_tuple_into(int n, std::span<Vertex> out, Rng& rng) {
  const auto k = out.size();
  if (k > static_cast<std::size_t>(n)) {
    throw RangeError("tuple length " + std::to_string(k) + " exceeds vertex count " + std::to_string(n));
  }
  if (2 * k > static_cast<std::size_t>(n)) {
    // dense case: partial Fisher-Yates
    std::vector<Vertex> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t t = 0; t < k; ++t) {
      std::uniform_int_distribution<std::size_t> pick(t, pool.size() - 1);
      std::swap(pool[t], pool[pick(rng)]);
      out[t] = pool[t];
    }
    return;
  }
  sample_tuple_avoiding(n, out, {}, rng);
}

std::vector<Vertex> sample_tuple(int n, int k, Rng& rng) {
  if (k < 0 || k > n) throw RangeError("tuple length " + std::to_string(k) + " exceeds vertex count " + std::to_string(n));
  std::vector<Vertex> out(static_cast<std::size_t>(k));
  sample_tuple_into(n, out, rng);
  return out;
}

}  // namespace cubetest
