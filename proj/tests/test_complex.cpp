#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "cubetest/complex.hpp"
#include "cubetest/errors.hpp"
#include "doctest.h"

using namespace cubetest;

namespace {

// Oracle: a cube labeling is determined (as a cell) by its edge set.
std::uint32_t cube_edge_mask(const std::array<Vertex, 8>& lab) {
  std::uint32_t mask = 0;
  for (int c = 0; c < 8; ++c) {
    for (int k = 0; k < 3; ++k) {
      const int c2 = c ^ (1 << k);
      if (c2 < c) continue;
      Vertex a = lab[static_cast<std::size_t>(c)], b = lab[static_cast<std::size_t>(c2)];
      if (a > b) std::swap(a, b);
      // pair index in the 28 pairs of {0..7}
      const int idx = b * (b - 1) / 2 + a;
      mask |= 1U << idx;
    }
  }
  return mask;
}

std::set<std::pair<Vertex, Vertex>> square_edge_set(const std::array<Vertex, 4>& c) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (std::size_t t = 0; t < 4; ++t) out.insert(std::minmax(c[t], c[(t + 1) % 4]));
  return out;
}

}  // namespace

TEST_CASE("cell counts for small complexes") {
  CHECK(enumerate_cells(4, 2).size() == 3);
  CHECK(enumerate_cells(2, 1).size() == 1);
  CHECK(enumerate_cells(8, 3).size() == 840);
  CHECK(cells_per_subset(3) == 840);
}

TEST_CASE("840 cubes on eight vertices: orbit oracle") {
  std::array<Vertex, 8> lab{};
  std::iota(lab.begin(), lab.end(), 0);
  std::map<std::uint32_t, Cube3> canon_of_edge_set;
  std::size_t labelings = 0;
  do {
    ++labelings;
    const auto mask = cube_edge_mask(lab);
    const Cube3 canon = canonical_cube(lab);
    auto [it, inserted] = canon_of_edge_set.emplace(mask, canon);
    // same edge set <=> same canonical form
    CHECK(it->second == canon);
  } while (std::next_permutation(lab.begin(), lab.end()));
  CHECK(labelings == 40320);
  CHECK(canon_of_edge_set.size() == 40320 / 48);
  std::set<Cube3> distinct;
  for (const auto& [mask, c] : canon_of_edge_set) distinct.insert(c);
  CHECK(distinct.size() == 840);
}

TEST_CASE("canonical_square") {
  CHECK(canonical_square(1, 2, 3, 4).cycle == std::array<Vertex, 4>{1, 2, 3, 4});
  CHECK(canonical_square(3, 2, 1, 4).cycle == std::array<Vertex, 4>{1, 2, 3, 4});
  CHECK(canonical_square(1, 3, 2, 4) != canonical_square(1, 2, 3, 4));
  CHECK_THROWS_AS(canonical_square(1, 2, 1, 4), InvalidCellError);

  // every orbit member canonicalizes to the same square, and the canonical
  // form is the lexicographic minimum of the orbit
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = sample_tuple(20, 4, rng);
    const std::array<Vertex, 4> cyc = {t[0], t[1], t[2], t[3]};
    const auto orbit = square_orbit(cyc);
    const auto least = *std::min_element(orbit.begin(), orbit.end());
    for (const auto& o : orbit) {
      CHECK(canonical_square(o).cycle == least);
      CHECK(square_edge_set(o) == square_edge_set(cyc));
    }
  }
}

TEST_CASE("canonical_cube is orbit-constant") {
  CHECK_THROWS_AS(canonical_cube(std::array<Vertex, 8>{0, 1, 2, 3, 4, 5, 6, 6}), InvalidCellError);
  const std::array<Vertex, 8> id = {0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(canonical_cube(id).labeling == id);

  Rng rng(11);
  const auto& autos = cube_automorphisms();
  CHECK(autos.size() == 48);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = sample_tuple(30, 8, rng);
    std::array<Vertex, 8> lab{};
    std::copy(t.begin(), t.end(), lab.begin());
    const Cube3 c = canonical_cube(lab);
    std::array<Vertex, 8> least = lab;
    for (const auto& sigma : autos) {
      std::array<Vertex, 8> image{};
      for (std::size_t k = 0; k < 8; ++k) image[k] = lab[static_cast<std::size_t>(sigma[k])];
      CHECK(canonical_cube(image) == c);
      least = std::min(least, image);
    }
    CHECK(c.labeling == least);
    CHECK(canonical_cube(c.labeling) == c);
  }
}

TEST_CASE("cell index is a bijection matching the closed-form count") {
  for (int d = 0; d <= 3; ++d) {
    for (int n = corners_of(d); n <= 12; ++n) {
      const CellIndex idx(n, d);
      // C(n, 2^d) (2^d)! / (2^d d!)
      double expect = static_cast<double>(binomial(n, corners_of(d)));
      const int k = corners_of(d);
      double fact_k = 1, fact_d = 1;
      for (int i = 2; i <= k; ++i) fact_k *= i;
      for (int i = 2; i <= d; ++i) fact_d *= i;
      expect *= fact_k / (k * fact_d);
      CHECK(static_cast<double>(idx.size()) == expect);
      if (d == 3 && n > 9) continue;  // bijection checked up to 9 for cubes
      std::uint64_t expected_index = 0;
      for_each_cell(n, d, [&](std::uint64_t x, const Cell& c) {
        CHECK(x == expected_index++);
        CHECK(idx.index(c) == x);
        CHECK(idx.cell(x) == c);
        CHECK(canonical(c) == c);
      });
      CHECK(expected_index == idx.size());
    }
  }
  CHECK_THROWS_AS(CellIndex(7, 3), EmptyComplexError);
  CHECK_THROWS_AS(enumerate_cells(3, 2), EmptyComplexError);
}

TEST_CASE("walls") {
  const auto sq = walls(canonical_square(1, 2, 3, 4).cell());
  REQUIRE(sq.size() == 4);
  std::set<Cell> expect;
  for (auto [a, b] : std::array<std::array<Vertex, 2>, 4>{{{1, 2}, {2, 3}, {3, 4}, {1, 4}}}) {
    expect.insert(Cell(1, std::array<Vertex, 2>{a, b}));
  }
  CHECK(std::set<Cell>(sq.begin(), sq.end()) == expect);

  const auto ew = walls(Cell(1, std::array<Vertex, 2>{3, 5}));
  REQUIRE(ew.size() == 2);
  CHECK(ew[0][0] == 3);
  CHECK(ew[1][0] == 5);

  CHECK_THROWS_AS(walls(Cell(0, std::array<Vertex, 1>{0})), DimensionError);

  // Thinness: every edge of a cube lies in exactly two of its six walls.
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = sample_tuple(16, 8, rng);
    const Cell cube = canonical_cube(t).cell();
    const auto faces = walls(cube);
    REQUIRE(faces.size() == 6);
    CHECK(std::set<Cell>(faces.begin(), faces.end()).size() == 6);
    std::map<std::pair<Vertex, Vertex>, int> edge_hits;
    for (const auto& f : faces) {
      for (const auto& e : walls(f)) ++edge_hits[{e[0], e[1]}];
    }
    CHECK(edge_hits.size() == 12);
    for (const auto& [e, hits] : edge_hits) CHECK(hits == 2);
  }
}

TEST_CASE("sample_tuple") {
  Rng rng(2024);
  SUBCASE("uniform over ordered pairs") {
    std::map<std::pair<Vertex, Vertex>, int> freq;
    const int draws = 60000;
    for (int s = 0; s < draws; ++s) {
      const auto t = sample_tuple(3, 2, rng);
      REQUIRE(t[0] != t[1]);
      ++freq[{t[0], t[1]}];
    }
    CHECK(freq.size() == 6);
    const double p = 1.0 / 6.0;
    const double sigma = std::sqrt(draws * p * (1 - p));
    for (const auto& [pair, count] : freq) CHECK(std::abs(count - draws * p) <= 3 * sigma);
  }
  SUBCASE("n == k yields a permutation") {
    auto t = sample_tuple(9, 9, rng);
    std::sort(t.begin(), t.end());
    for (int i = 0; i < 9; ++i) CHECK(t[static_cast<std::size_t>(i)] == i);
  }
  SUBCASE("deterministic given seed") {
    Rng a(99), b(99);
    for (int s = 0; s < 100; ++s) CHECK(sample_tuple(40, 5, a) == sample_tuple(40, 5, b));
  }
  SUBCASE("errors") { CHECK_THROWS_AS(sample_tuple(3, 4, rng), RangeError); }
}
