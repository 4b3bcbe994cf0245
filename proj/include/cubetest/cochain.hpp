#pragma once

// Sign-valued cochains on the complete cubical complex, directed cochains on
// ordered vertex pairs, lazily evaluated functions on distinct-entry tuples,
// and the differentials between them.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubetest/complex.hpp"
#include "cubetest/sign.hpp"

namespace cubetest {

/// A total map from the canonical d-cells on n vertices to {+1, -1}, packed one
/// bit per cell (bit set means -1) in CellIndex order.
class Cochain {
 public:
  Cochain(int n, int d, Sign fill = Sign::plus());

  static Cochain constant(int n, int d, Sign s) { return Cochain(n, d, s); }
  static Cochain random(int n, int d, Rng& rng);

  int n() const { return n_; }
  int dim() const { return d_; }
  std::uint64_t size() const { return size_; }

  Sign operator[](std::uint64_t index) const {
    return Sign::from_bit((bits_[index >> 6] >> (index & 63)) & 1U);
  }
  void set(std::uint64_t index, Sign s) {
    const std::uint64_t mask = std::uint64_t{1} << (index & 63);
    if (s.is_minus()) {
      bits_[index >> 6] |= mask;
    } else {
      bits_[index >> 6] &= ~mask;
    }
  }
  void flip(std::uint64_t index) { bits_[index >> 6] ^= std::uint64_t{1} << (index & 63); }

  /// Value on a cell given by any labeling.
  Sign at(const Cell& cell) const;
  Sign vertex(Vertex i) const { return (*this)[static_cast<std::uint64_t>(i)]; }
  Sign edge(Vertex i, Vertex j) const { return (*this)[CellIndex::edge_index(i, j)]; }
  Sign square(Vertex i, Vertex j, Vertex k, Vertex l) const { return (*this)[CellIndex::square_index({i, j, k, l})]; }
  Sign square(const std::array<Vertex, 4>& cycle) const { return (*this)[CellIndex::square_index(cycle)]; }

  /// Number of cells carrying -1.
  std::uint64_t count_minus() const;
  bool is_all_plus() const { return count_minus() == 0; }

  std::span<const std::uint64_t> words() const { return bits_; }
  std::span<std::uint64_t> words() { return bits_; }

  Cochain& operator*=(const Cochain& other);
  Cochain& operator*=(Sign s);
  friend Cochain operator*(Cochain a, const Cochain& b) { return a *= b; }
  friend Cochain operator*(Cochain a, Sign s) { return a *= s; }
  friend Cochain operator*(Sign s, Cochain a) { return a *= s; }
  Cochain operator-() const { return *this * Sign::minus(); }

  friend bool operator==(const Cochain&, const Cochain&) = default;

 private:
  void clear_tail();

  int n_;
  int d_;
  std::uint64_t size_;
  std::vector<std::uint64_t> bits_;
};

/// A sign on every ordered pair (i, j) of distinct vertices.
class DirectedCochain {
 public:
  explicit DirectedCochain(int n, Sign fill = Sign::plus());

  static DirectedCochain random(int n, Rng& rng);
  /// Forgets directions: f_ij = f_ji = g_{ij}.
  static DirectedCochain embed(const Cochain& g);

  int n() const { return n_; }
  Sign operator()(Vertex i, Vertex j) const { return Sign::from_bit(bits_[slot(i, j)] != 0); }
  void set(Vertex i, Vertex j, Sign s) { bits_[slot(i, j)] = s.is_minus() ? 1 : 0; }

  DirectedCochain& operator*=(const DirectedCochain& other);
  friend DirectedCochain operator*(DirectedCochain a, const DirectedCochain& b) { return a *= b; }

  friend bool operator==(const DirectedCochain&, const DirectedCochain&) = default;

 private:
  std::size_t slot(Vertex i, Vertex j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }
  int n_;
  std::vector<std::uint8_t> bits_;
};

/// A sign-valued function on X^[k], evaluated on demand.
struct TupleFunction {
  int n = 0;
  int k = 0;
  std::function<Sign(std::span<const Vertex>)> eval;

  Sign operator()(std::span<const Vertex> t) const { return eval(t); }
  Sign operator()(std::initializer_list<Vertex> t) const { return eval(std::span<const Vertex>(t.begin(), t.size())); }
};

/// Pointwise product of two tuple functions of the same arity.
TupleFunction operator*(const TupleFunction& a, const TupleFunction& b);

/// Ordinary differential: (delta f)_c = product of f over the 2(d+1) walls of c.
Cochain delta(const Cochain& f);

/// Generalized differential from dimension f.dim() to `target`: the product of
/// f over all f.dim()-dimensional faces of each target cell.
Cochain delta_general(const Cochain& f, int target);

/// (vdelta f)_{i i' i'' i'''} = f_{i i'} f_{i'' i'} f_{i'' i'''} f_{i i'''}.
TupleFunction vdelta1(const DirectedCochain& f);

/// Value of vdelta1(f) on one 4-tuple, without building a TupleFunction.
Sign vdelta1_at(const DirectedCochain& f, std::span<const Vertex> t);

/// True when t(c) agrees on all eight labelings of every square.
bool is_square_symmetric(const TupleFunction& t);

/// Reads a square-symmetric 4-tuple function as a 2-cochain; nullopt when some
/// square sees different values under relabeling.
std::optional<Cochain> as_square_cochain(const TupleFunction& t);

/// (N f)_ij = f_ij f_ji.
Cochain norm_map(const DirectedCochain& f);

/// (eta_h alpha)_ij = alpha_i and (eta_t alpha)_ij = alpha_j.
DirectedCochain eta_head(const Cochain& alpha);
DirectedCochain eta_tail(const Cochain& alpha);

/// A linear order on the vertices: order[r] is the vertex of rank r.
using VertexOrder = std::vector<Vertex>;
VertexOrder natural_order(int n);

/// psi_ij = +1 if i precedes j, -1 otherwise.
DirectedCochain order_function(const VertexOrder& order);

/// [+1] is all-ones; [-1]_c = +1 iff the vertices of the square c can be read
/// in increasing order along the cycle.
Cochain bracket_cochain(int n, Sign sign, const VertexOrder& order);
Cochain bracket_cochain(int n, Sign sign);

/// Fraction of cells carrying -1.
Ratio norm(const Cochain& f);
Ratio distance(const Cochain& f, const Cochain& g);

struct NormEstimate {
  double value = 0.0;
  double half_width = 0.0;  ///< Hoeffding half-width; 0 in exact mode
  std::uint64_t samples = 0;
  bool exact = false;
};

/// Hoeffding half-width for `samples` Bernoulli draws at confidence 1 - failure.
double hoeffding_half_width(std::uint64_t samples, double failure = 1e-3);

/// Pr[t(x) != 1] over uniform x in X^[k]: exact when P(n, k) <= exact_limit,
/// otherwise estimated from `samples` draws.
NormEstimate norm(const TupleFunction& t, Rng& rng, std::uint64_t samples, std::uint64_t exact_limit = 2'000'000);

/// min over b in the span of `basis` of ||f b||, by full enumeration.
inline constexpr std::size_t kMaxCosetBasis = 20;
Ratio coset_norm(const Cochain& f, std::span<const Cochain> basis);

// Text format: "CUBECHAIN n=<n> d=<d>", optional "# ..." comment lines, then
// one line per canonical cell: vertex ids followed by +1 or -1.

struct CochainFile {
  std::vector<std::string> comments;  ///< without the leading "# "
  Cochain chain;
};

void write_cochain(std::ostream& os, const Cochain& f, std::span<const std::string> comments = {});
CochainFile read_cochain(std::istream& is);

}  // namespace cubetest
