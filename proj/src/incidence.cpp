#include "cubetest/incidence.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cubetest/errors.hpp"

namespace cubetest {

namespace {

void check_type(int t) {
  if (t < 0 || t > 2) throw RangeError("element type must be 0, 1 or 2 (got " + std::to_string(t) + ")");
}

std::size_t intersection_size(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

Geometry3::Geometry3(std::array<std::size_t, 3> sizes) : sizes_(sizes) {
  for (std::size_t tx = 0; tx < 3; ++tx) {
    for (std::size_t ty = 0; ty < 3; ++ty) adj_[tx][ty].resize(sizes_[tx]);
  }
}

void Geometry3::add_incidence(int tx, std::size_t x, int ty, std::size_t y) {
  check_type(tx);
  check_type(ty);
  if (x >= size(tx) || y >= size(ty)) throw RangeError("element id out of range");
  if (tx == ty) {
    if (x != y) ++same_type_defects_;
    return;
  }
  adj_[static_cast<std::size_t>(tx)][static_cast<std::size_t>(ty)][x].push_back(static_cast<std::uint32_t>(y));
  adj_[static_cast<std::size_t>(ty)][static_cast<std::size_t>(tx)][y].push_back(static_cast<std::uint32_t>(x));
}

void Geometry3::finalize() {
  for (auto& row : adj_) {
    for (auto& lists : row) {
      for (auto& l : lists) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
      }
    }
  }
}

const std::vector<std::uint32_t>& Geometry3::neighbours(int tx, std::size_t x, int ty) const {
  return adj_[static_cast<std::size_t>(tx)][static_cast<std::size_t>(ty)][x];
}

bool Geometry3::incident(int tx, std::size_t x, int ty, std::size_t y) const {
  if (tx == ty) return x == y;
  const auto& l = neighbours(tx, x, ty);
  return std::binary_search(l.begin(), l.end(), static_cast<std::uint32_t>(y));
}

GeometryValidation validate(const Geometry3& g) {
  GeometryValidation v;
  v.is_pregeometry = g.same_type_defects() == 0;

  bool chambers = v.is_pregeometry;
  for (int a = 0; a < 3 && chambers; ++a) {
    for (std::size_t x = 0; x < g.size(a) && chambers; ++x) {
      bool any = false;
      for (int b = 0; b < 3; ++b) {
        if (b == a) continue;
        for (auto y : g.neighbours(a, x, b)) {
          any = true;
          const int c = 3 - a - b;
          if (b > a && intersection_size(g.neighbours(a, x, c), g.neighbours(b, y, c)) == 0) chambers = false;
        }
      }
      chambers = chambers && any;
    }
  }
  v.is_geometry = chambers;

  v.is_even = true;
  v.is_thin = true;
  for (std::size_t x = 0; x < g.size(0); ++x) {
    for (std::size_t z = 0; z < g.size(2); ++z) {
      const auto k = intersection_size(g.neighbours(0, x, 1), g.neighbours(2, z, 1));
      if (k % 2 != 0) v.is_even = false;
      if (k != 0 && k != 2) v.is_thin = false;
    }
  }
  for (std::size_t z = 0; z < g.size(2); ++z) v.max_degree = std::max(v.max_degree, g.neighbours(2, z, 1).size());
  return v;
}

GeometryCochain geom_delta(const Geometry3& g, const GeometryCochain& f) {
  if (f.type < 0 || f.type > 1) throw DimensionError("geometry differentials go from type 0 or 1");
  if (f.values.size() != g.size(f.type)) throw DimensionError("cochain size does not match the geometry");
  GeometryCochain out{f.type + 1, std::vector<Sign>(g.size(f.type + 1))};
  for (std::size_t y = 0; y < out.values.size(); ++y) {
    Sign s;
    for (auto x : g.neighbours(f.type + 1, y, f.type)) s *= f.values[x];
    out.values[y] = s;
  }
  return out;
}

BooleanMatrix geometry_matrix(const Geometry3& g, int i) {
  if (i < 0 || i > 1) throw DimensionError("geometry differentials go from type 0 or 1");
  BooleanMatrix m(g.size(i + 1), g.size(i));
  for (std::size_t y = 0; y < m.rows(); ++y) {
    for (auto x : g.neighbours(i + 1, y, i)) m.set(y, x);
  }
  return m;
}

std::size_t geometry_h1(const Geometry3& g) {
  const std::size_t dim_z = g.size(1) - rank(geometry_matrix(g, 1));
  const std::size_t dim_b = rank(geometry_matrix(g, 0));
  return dim_z - dim_b;
}

BLRGeometry blr_geometry(int m) {
  if (m < 2) throw RangeError("the BLR geometry needs dim V >= 2 (got " + std::to_string(m) + ")");
  if (m > 12) throw RangeError("the BLR geometry is built explicitly and limited to dim V <= 12");
  const std::uint32_t q = 1U << m;
  BLRGeometry b;
  b.m = m;
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t c = a + 1; c < q; ++c) {
      const std::uint32_t x = a ^ c;  // third point
      if (x > a && x < c) b.lines.push_back({a, x, c});
    }
  }
  Geometry3 g({static_cast<std::size_t>(m), q - 1, b.lines.size()});
  for (std::uint32_t v = 1; v < q; ++v) {
    for (int k = 0; k < m; ++k) {
      if ((v >> k) & 1U) g.add_incidence(0, static_cast<std::size_t>(k), 1, v - 1);
    }
  }
  for (std::size_t l = 0; l < b.lines.size(); ++l) {
    std::uint32_t any = 0;
    for (auto v : b.lines[l]) {
      g.add_incidence(1, v - 1, 2, l);
      any |= v;
    }
    // phi < line iff phi(v) = 1 for some v on the line
    for (int k = 0; k < m; ++k) {
      if ((any >> k) & 1U) g.add_incidence(0, static_cast<std::size_t>(k), 2, l);
    }
  }
  g.finalize();
  b.geometry = std::move(g);
  return b;
}

std::size_t blr_cohomology(int m) {
  if (m < 2 || m > 4) throw RangeError("blr_cohomology is computed for m in {2, 3, 4}");
  return geometry_h1(blr_geometry(m).geometry);
}

Geometry3 cubical_geometry(int n, int d) {
  if (d < 1 || d > 2) throw DimensionError("cubical incidence geometries are built for d in {1, 2}");
  if (n > 8) throw RangeError("cubical incidence geometries are limited to n <= 8");
  if (n < corners_of(d + 1)) throw EmptyComplexError("complex has no " + std::to_string(d + 1) + "-cells");
  Geometry3 g({cell_count(n, d - 1), cell_count(n, d), cell_count(n, d + 1)});
  for_each_cell(n, d, [&](std::uint64_t y, const Cell& c) {
    const auto ids = c.ids();
    if (d == 1) {
      g.add_incidence(0, static_cast<std::size_t>(ids[0]), 1, y);
      g.add_incidence(0, static_cast<std::size_t>(ids[1]), 1, y);
    } else {
      for (std::size_t t = 0; t < 4; ++t) g.add_incidence(0, CellIndex::edge_index(ids[t], ids[(t + 1) % 4]), 1, y);
    }
  });
  for_each_cell(n, d + 1, [&](std::uint64_t z, const Cell& c) {
    const auto ids = c.ids();
    if (d == 1) {
      for (std::size_t t = 0; t < 4; ++t) {
        g.add_incidence(1, CellIndex::edge_index(ids[t], ids[(t + 1) % 4]), 2, z);
        g.add_incidence(0, static_cast<std::size_t>(ids[t]), 2, z);
      }
    } else {
      for (const auto& face : cube_faces(ids)) g.add_incidence(1, CellIndex::square_index(face), 2, z);
      for (const auto& e : cube_edges(ids)) g.add_incidence(0, CellIndex::edge_index(e[0], e[1]), 2, z);
    }
  });
  g.finalize();
  return g;
}

GeometryCochain to_geometry_cochain(const Cochain& c, int type) {
  GeometryCochain out{type, std::vector<Sign>(c.size())};
  for (std::uint64_t x = 0; x < c.size(); ++x) out.values[x] = c[x];
  return out;
}

void write_geometry(std::ostream& os, const Geometry3& g) {
  for (int t = 0; t < 3; ++t) os << 'G' << t << ' ' << g.size(t) << '\n';
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      for (std::size_t x = 0; x < g.size(a); ++x) {
        for (auto y : g.neighbours(a, x, b)) os << a << ' ' << x << ' ' << b << ' ' << y << '\n';
      }
    }
  }
}

Geometry3 read_geometry(std::istream& is) {
  std::array<std::size_t, 3> sizes{};
  std::string line;
  std::size_t lineno = 0;
  int headers = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  while (headers < 3) {
    if (!next_line()) throw ParseError(lineno, "missing G" + std::to_string(headers) + " header");
    std::istringstream ls(line);
    std::string tag;
    long long count = -1;
    std::string extra;
    if (!(ls >> tag >> count) || tag != "G" + std::to_string(headers) || count < 0 || (ls >> extra)) {
      throw ParseError(lineno, "expected `G" + std::to_string(headers) + " <count>`");
    }
    sizes[static_cast<std::size_t>(headers++)] = static_cast<std::size_t>(count);
  }
  Geometry3 g(sizes);
  while (next_line()) {
    std::istringstream ls(line);
    long long ta = -1, a = -1, tb = -1, b = -1;
    std::string extra;
    if (!(ls >> ta >> a >> tb >> b) || (ls >> extra)) throw ParseError(lineno, "expected `ti i tj j`");
    if (ta < 0 || ta > 2 || tb < 0 || tb > 2) throw ParseError(lineno, "element type must be 0, 1 or 2");
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= sizes[static_cast<std::size_t>(ta)] ||
        static_cast<std::size_t>(b) >= sizes[static_cast<std::size_t>(tb)]) {
      throw ParseError(lineno, "element id out of range");
    }
    g.add_incidence(static_cast<int>(ta), static_cast<std::size_t>(a), static_cast<int>(tb), static_cast<std::size_t>(b));
  }
  g.finalize();
  return g;
}

}  // namespace cubetest
