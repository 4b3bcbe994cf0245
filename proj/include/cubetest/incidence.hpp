#pragma once

// Three-type incidence geometries, their differentials, the BLR geometry of a
// vector space over the two-element field, and the cubical adapters.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cubetest/cochain.hpp"
#include "cubetest/gf2.hpp"

namespace cubetest {

/// Elements have integer ids per type. Incidence between distinct types is
/// stored both ways; every element is incident to itself implicitly.
class Geometry3 {
 public:
  explicit Geometry3(std::array<std::size_t, 3> sizes);

  std::size_t size(int type) const { return sizes_[static_cast<std::size_t>(type)]; }

  /// Adds x ~ y. Same-type pairs of distinct elements are recorded as defects.
  void add_incidence(int tx, std::size_t x, int ty, std::size_t y);

  /// Neighbours of (tx, x) among type ty, sorted.
  const std::vector<std::uint32_t>& neighbours(int tx, std::size_t x, int ty) const;
  bool incident(int tx, std::size_t x, int ty, std::size_t y) const;

  std::size_t same_type_defects() const { return same_type_defects_; }
  void finalize();  ///< sorts and dedups adjacency lists

 private:
  std::array<std::size_t, 3> sizes_;
  // adj_[tx][ty][x]
  std::array<std::array<std::vector<std::vector<std::uint32_t>>, 3>, 3> adj_;
  std::size_t same_type_defects_ = 0;
};

struct GeometryValidation {
  bool is_pregeometry = false;
  bool is_geometry = false;
  bool is_even = false;
  bool is_thin = false;
  std::size_t max_degree = 0;  ///< q: largest number of type-1 elements under a type-2 element
};

GeometryValidation validate(const Geometry3& g);

struct GeometryCochain {
  int type = 0;
  std::vector<Sign> values;

  friend bool operator==(const GeometryCochain&, const GeometryCochain&) = default;
};

/// (delta^i f)(y) = product over x < y of type i of f(x).
GeometryCochain geom_delta(const Geometry3& g, const GeometryCochain& f);

/// Row per type-(i+1) element, column per type-i element.
BooleanMatrix geometry_matrix(const Geometry3& g, int i);

/// dim Z^1 - dim B^1.
std::size_t geometry_h1(const Geometry3& g);

struct BLRGeometry {
  int m = 0;
  Geometry3 geometry{{0, 0, 0}};
  std::vector<std::array<std::uint32_t, 3>> lines;  ///< a < b < c with a ^ b ^ c = 0
  // type-1 id v - 1 is the vector v; type-0 id k is the k-th coordinate functional
};

BLRGeometry blr_geometry(int m);

/// dim H^1 of the BLR geometry; m in {2, 3, 4}.
std::size_t blr_cohomology(int m);

/// The d-th incidence geometry of the complete cubical complex: (d-1)-, d- and
/// (d+1)-cells with the face relation. d in {1, 2}, n <= 8.
Geometry3 cubical_geometry(int n, int d);

GeometryCochain to_geometry_cochain(const Cochain& c, int type);

/// `G0 <n>`, `G1 <n>`, `G2 <n>` headers, then one `ti i tj j` line per pair.
void write_geometry(std::ostream& os, const Geometry3& g);
Geometry3 read_geometry(std::istream& is);

}  // namespace cubetest
