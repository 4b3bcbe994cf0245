#include "cubetest/cochain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "cubetest/errors.hpp"

namespace cubetest {

Cochain::Cochain(int n, int d, Sign fill) : n_(n), d_(d), size_(CellIndex(n, d).size()) {
  bits_.assign((size_ + 63) / 64, fill.is_minus() ? ~std::uint64_t{0} : 0);
  clear_tail();
}

void Cochain::clear_tail() {
  if (size_ % 64 != 0 && !bits_.empty()) bits_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

Cochain Cochain::random(int n, int d, Rng& rng) {
  Cochain c(n, d);
  for (auto& w : c.bits_) w = rng();
  c.clear_tail();
  return c;
}

Sign Cochain::at(const Cell& cell) const {
  if (cell.dim() != d_) throw DimensionError("cell dimension does not match cochain");
  return (*this)[CellIndex(n_, d_).index(cell)];
}

std::uint64_t Cochain::count_minus() const {
  std::uint64_t c = 0;
  for (auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

Cochain& Cochain::operator*=(const Cochain& other) {
  if (other.n_ != n_ || other.d_ != d_) throw DimensionError("cochain shapes differ");
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= other.bits_[w];
  return *this;
}

Cochain& Cochain::operator*=(Sign s) {
  if (s.is_minus()) {
    for (auto& w : bits_) w = ~w;
    clear_tail();
  }
  return *this;
}

DirectedCochain::DirectedCochain(int n, Sign fill)
    : n_(n), bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill.is_minus() ? 1 : 0) {
  if (n < 2) throw EmptyComplexError("directed cochains need at least 2 vertices");
}

DirectedCochain DirectedCochain::random(int n, Rng& rng) {
  DirectedCochain f(n);
  for (auto& b : f.bits_) b = static_cast<std::uint8_t>(rng() & 1U);
  return f;
}

DirectedCochain DirectedCochain::embed(const Cochain& g) {
  if (g.dim() != 1) throw DimensionError("only 1-cochains embed into directed cochains");
  DirectedCochain f(g.n());
  for (Vertex i = 0; i < g.n(); ++i) {
    for (Vertex j = 0; j < g.n(); ++j) {
      if (i != j) f.set(i, j, g.edge(i, j));
    }
  }
  return f;
}

DirectedCochain& DirectedCochain::operator*=(const DirectedCochain& other) {
  if (other.n_ != n_) throw DimensionError("directed cochain sizes differ");
  for (std::size_t s = 0; s < bits_.size(); ++s) bits_[s] ^= other.bits_[s];
  return *this;
}

TupleFunction operator*(const TupleFunction& a, const TupleFunction& b) {
  if (a.n != b.n || a.k != b.k) throw DimensionError("tuple function shapes differ");
  return TupleFunction{a.n, a.k, [a, b](std::span<const Vertex> t) { return a(t) * b(t); }};
}

Cochain delta(const Cochain& f) {
  const int d = f.dim();
  if (d < 0 || d > 2) throw DimensionError("delta is defined for d in {0, 1, 2}");
  const int n = f.n();
  Cochain out(n, d + 1);
  switch (d) {
    case 0: {
      std::uint64_t idx = 0;
      for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i) out.set(idx++, f.vertex(i) * f.vertex(j));
      }
      break;
    }
    case 1:
      for_each_cell(n, 2, [&](std::uint64_t idx, const Cell& c) {
        out.set(idx, f.edge(c[0], c[1]) * f.edge(c[1], c[2]) * f.edge(c[2], c[3]) * f.edge(c[3], c[0]));
      });
      break;
    default:
      for_each_cell(n, 3, [&](std::uint64_t idx, const Cell& c) {
        Sign s;
        for (const auto& face : cube_faces(c.ids())) s *= f.square(face);
        out.set(idx, s);
      });
      break;
  }
  return out;
}

Cochain delta_general(const Cochain& f, int target) {
  const int d = f.dim();
  if (target <= d || target > kMaxDim) {
    throw DimensionError("generalized differential needs source < target <= 3 (got " + std::to_string(d) + " -> " +
                         std::to_string(target) + ")");
  }
  if (target == d + 1) return delta(f);
  Cochain out(f.n(), target);
  for_each_cell(f.n(), target, [&](std::uint64_t idx, const Cell& c) {
    Sign s;
    if (d == 0) {
      for (Vertex v : c.ids()) s *= f.vertex(v);
    } else {  // d == 1, target == 3
      for (const auto& e : cube_edges(c.ids())) s *= f.edge(e[0], e[1]);
    }
    out.set(idx, s);
  });
  return out;
}

Sign vdelta1_at(const DirectedCochain& f, std::span<const Vertex> t) {
  return f(t[0], t[1]) * f(t[2], t[1]) * f(t[2], t[3]) * f(t[0], t[3]);
}

TupleFunction vdelta1(const DirectedCochain& f) {
  if (f.n() < 4) throw EmptyComplexError("vdelta1 needs at least 4 vertices");
  return TupleFunction{f.n(), 4, [f](std::span<const Vertex> t) { return vdelta1_at(f, t); }};
}

bool is_square_symmetric(const TupleFunction& t) { return as_square_cochain(t).has_value(); }

std::optional<Cochain> as_square_cochain(const TupleFunction& t) {
  if (t.k != 4) throw DimensionError("square cochains come from 4-tuple functions");
  Cochain out(t.n, 2);
  bool symmetric = true;
  for_each_cell(t.n, 2, [&](std::uint64_t idx, const Cell& c) {
    if (!symmetric) return;
    const std::array<Vertex, 4> cyc = {c[0], c[1], c[2], c[3]};
    const Sign v = t(cyc);
    for (const auto& image : square_orbit(cyc)) {
      if (t(image) != v) {
        symmetric = false;
        return;
      }
    }
    out.set(idx, v);
  });
  if (!symmetric) return std::nullopt;
  return out;
}

Cochain norm_map(const DirectedCochain& f) {
  Cochain out(f.n(), 1);
  std::uint64_t idx = 0;
  for (Vertex j = 1; j < f.n(); ++j) {
    for (Vertex i = 0; i < j; ++i) out.set(idx++, f(i, j) * f(j, i));
  }
  return out;
}

DirectedCochain eta_head(const Cochain& alpha) {
  if (alpha.dim() != 0) throw DimensionError("eta_head takes a 0-cochain");
  DirectedCochain out(alpha.n());
  for (Vertex i = 0; i < alpha.n(); ++i) {
    for (Vertex j = 0; j < alpha.n(); ++j) {
      if (i != j) out.set(i, j, alpha.vertex(i));
    }
  }
  return out;
}

DirectedCochain eta_tail(const Cochain& alpha) {
  if (alpha.dim() != 0) throw DimensionError("eta_tail takes a 0-cochain");
  DirectedCochain out(alpha.n());
  for (Vertex i = 0; i < alpha.n(); ++i) {
    for (Vertex j = 0; j < alpha.n(); ++j) {
      if (i != j) out.set(i, j, alpha.vertex(j));
    }
  }
  return out;
}

VertexOrder natural_order(int n) {
  VertexOrder order(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) order[static_cast<std::size_t>(r)] = r;
  return order;
}

namespace {

std::vector<int> ranks_of(const VertexOrder& order) {
  std::vector<int> rank(order.size(), -1);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto v = order[r];
    if (v < 0 || static_cast<std::size_t>(v) >= order.size() || rank[static_cast<std::size_t>(v)] != -1) {
      throw RangeError("vertex order must be a permutation of 0..n-1");
    }
    rank[static_cast<std::size_t>(v)] = static_cast<int>(r);
  }
  return rank;
}

}  // namespace

DirectedCochain order_function(const VertexOrder& order) {
  const auto rank = ranks_of(order);
  const int n = static_cast<int>(order.size());
  DirectedCochain psi(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (i != j) psi.set(i, j, rank[static_cast<std::size_t>(i)] < rank[static_cast<std::size_t>(j)] ? Sign::plus() : Sign::minus());
    }
  }
  return psi;
}

Cochain bracket_cochain(int n, Sign sign, const VertexOrder& order) {
  if (static_cast<int>(order.size()) != n) throw RangeError("vertex order has the wrong length");
  Cochain out(n, 2);
  if (sign.is_plus()) return out;
  const auto rank = ranks_of(order);
  for_each_cell(n, 2, [&](std::uint64_t idx, const Cell& c) {
    const auto r = [&](std::size_t t) { return rank[static_cast<std::size_t>(c[t])]; };
    const Square s = canonical_square(r(0), r(1), r(2), r(3));
    const bool readable = s.cycle[1] < s.cycle[2] && s.cycle[2] < s.cycle[3];
    out.set(idx, readable ? Sign::plus() : Sign::minus());
  });
  return out;
}

Cochain bracket_cochain(int n, Sign sign) { return bracket_cochain(n, sign, natural_order(n)); }

Ratio norm(const Cochain& f) { return Ratio{f.count_minus(), f.size()}; }

Ratio distance(const Cochain& f, const Cochain& g) { return norm(f * g); }

double hoeffding_half_width(std::uint64_t samples, double failure) {
  if (samples == 0) return 1.0;
  return std::sqrt(std::log(2.0 / failure) / (2.0 * static_cast<double>(samples)));
}

NormEstimate norm(const TupleFunction& t, Rng& rng, std::uint64_t samples, std::uint64_t exact_limit) {
  const auto total = falling_factorial(t.n, t.k);
  NormEstimate est;
  if (total <= exact_limit) {
    std::uint64_t bad = 0;
    for_each_tuple(t.n, t.k, {}, [&](std::span<const Vertex> x) { bad += t(x).is_minus() ? 1 : 0; });
    est.value = static_cast<double>(bad) / static_cast<double>(total);
    est.samples = total;
    est.exact = true;
    return est;
  }
  std::vector<Vertex> x(static_cast<std::size_t>(t.k));
  std::uint64_t bad = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    sample_tuple_into(t.n, x, rng);
    bad += t(x).is_minus() ? 1 : 0;
  }
  est.samples = samples;
  est.value = samples == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(samples);
  est.half_width = hoeffding_half_width(samples);
  return est;
}

Ratio coset_norm(const Cochain& f, std::span<const Cochain> basis) {
  if (basis.size() > kMaxCosetBasis) {
    throw RangeError("coset of 2^" + std::to_string(basis.size()) + " elements is too large to enumerate");
  }
  Cochain current = f;
  std::uint64_t best = current.count_minus();
  const std::uint64_t combos = std::uint64_t{1} << basis.size();
  // Gray code: step g flips basis element countr_zero(g).
  for (std::uint64_t g = 1; g < combos; ++g) {
    current *= basis[static_cast<std::size_t>(std::countr_zero(g))];
    best = std::min(best, current.count_minus());
  }
  return Ratio{best, f.size()};
}

}  // namespace cubetest
