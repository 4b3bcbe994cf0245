#include "cubetest/cohomology.hpp"

#include <bit>
#include <numeric>
#include <string>

#include "cubetest/detectors.hpp"
#include "cubetest/errors.hpp"
#include "cubetest/gf2.hpp"
#include "cubetest/testers.hpp"

namespace cubetest {

namespace {

std::uint64_t rank_of_differential(int n, int d) {
  if (n < corners_of(d + 1)) return 0;
  return rank(differential_matrix(n, d));
}

std::uint64_t rank_into(int n, int d) {
  if (d == 0) return 0;
  return rank_of_differential(n, d - 1);
}

// Ordered pair (i, j), i != j, as a column index.
std::size_t pair_slot(int n, Vertex i, Vertex j) {
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n - 1) + static_cast<std::size_t>(j < i ? j : j - 1);
}

}  // namespace

int cohomology_threshold(int d) {
  if (d == 1) return 4;
  if (d == 2) return 10;
  throw DimensionError("cohomology is computed for d in {1, 2}");
}

CohomologyReport cohomology(int n, int d, bool allow_small) {
  const int threshold = cohomology_threshold(d);
  if (n < threshold && !allow_small) {
    throw RangeError("H^" + std::to_string(d) + " is only computed for n >= " + std::to_string(threshold) +
                     " without the small-n override (got n = " + std::to_string(n) + ")");
  }
  if (n < corners_of(d)) throw EmptyComplexError("complex on " + std::to_string(n) + " vertices has no " + std::to_string(d) + "-cells");
  CohomologyReport r;
  r.n = n;
  r.d = d;
  r.covered = n >= threshold;
  r.dim_C = cell_count(n, d);
  r.dim_Z = r.dim_C - rank_of_differential(n, d);
  r.dim_B = rank_into(n, d);
  r.dim_H = r.dim_Z - r.dim_B;

  r.generators.push_back(Cochain::constant(n, d, Sign::minus()));
  if (d == 2) r.generators.push_back(bracket_cochain(n, Sign::minus()));

  // span B^d by the images of the point cochains, then add the generators
  EchelonBasis basis(r.dim_C);
  const auto into = differential_matrix(n, d - 1).transpose();
  for (std::size_t c = 0; c < into.rows(); ++c) basis.insert(into.row(c));
  bool ok = true;
  for (const auto& g : r.generators) {
    if (n >= corners_of(d + 1)) ok = ok && delta(g).is_all_plus();
    ok = ok && basis.insert(to_bits(g));
  }
  r.generators_independent = ok;
  return r;
}

bool membership_B2vec(const Cochain& g) {
  if (g.dim() != 2) throw DimensionError("membership_B2vec takes a 2-cochain");
  if (g.n() < 5) throw EmptyComplexError("Delta'' needs at least 5 vertices");
  if (g.n() >= 8 && !delta(g).is_all_plus()) throw NotACocycleError("membership_B2vec: input is not a cocycle");
  return DeltaDoublePrime(g)({0, 1, 2, 3, 4}).is_plus();
}

std::vector<DirectedCochain> directed_cocycle_basis(int n) {
  if (n < 4) throw EmptyComplexError("directed cocycles need at least 4 vertices");
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
  BooleanMatrix m(cell_count(n, 2), pairs);
  for_each_cell(n, 2, [&](std::uint64_t r, const Cell& c) {
    for (std::size_t t = 0; t < 4; ++t) {
      const Vertex u = c[t], v = c[(t + 1) % 4];
      m.set(r, pair_slot(n, u, v));
      m.set(r, pair_slot(n, v, u));
    }
  });
  std::vector<DirectedCochain> out;
  for (const auto& x : kernel_basis(m)) {
    DirectedCochain f(n);
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto s = pair_slot(n, i, j);
        if ((x[s / 64] >> (s % 64)) & 1U) f.set(i, j, Sign::minus());
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

Z2Structure verify_Z2_structure(int n) {
  if (n < 10) throw RangeError("the structure of Z^2 is only asserted for n >= 10 (got n = " + std::to_string(n) + ")");
  Z2Structure s;
  s.n = n;
  s.dim_Z2 = cell_count(n, 2) - rank_of_differential(n, 2);
  s.dim_B2 = rank_of_differential(n, 1);
  EchelonBasis vec(cell_count(n, 2));
  for (const auto& f : directed_cocycle_basis(n)) {
    const auto g = as_square_cochain(vdelta1(f));
    if (!g) throw ConsistencyError("directed differential of a C_vec^I element is not square-symmetric");
    vec.insert(to_bits(*g));
  }
  s.dim_B2vec = vec.rank();
  s.minus_one_in_B2vec = vec.contains(to_bits(Cochain::constant(n, 2, Sign::minus())));
  s.index_Z2_B2 = std::uint64_t{1} << (s.dim_Z2 - s.dim_B2);
  s.confirmed = s.dim_Z2 == s.dim_B2vec + 1 && !s.minus_one_in_B2vec && s.index_Z2_B2 == 4;
  return s;
}

Ratio expansion_exact(int n) {
  if (n < 4) throw EmptyComplexError("expansion needs squares, so n >= 4");
  if (n > 6) throw RangeError("exact expansion enumerates C^1 and is limited to n <= 6 (got n = " + std::to_string(n) + ")");
  const int edges = static_cast<int>(cell_count(n, 1));
  const std::uint32_t all = (std::uint32_t{1} << edges) - 1;
  std::vector<std::uint32_t> squares;
  for_each_cell(n, 2, [&](std::uint64_t, const Cell& c) {
    std::uint32_t mask = 0;
    for (std::size_t t = 0; t < 4; ++t) mask |= std::uint32_t{1} << CellIndex::edge_index(c[t], c[(t + 1) % 4]);
    squares.push_back(mask);
  });
  std::vector<std::uint32_t> z1;
  for (std::uint32_t alpha = 0; alpha < (1U << n); ++alpha) {
    std::uint32_t mask = 0;
    std::uint64_t idx = 0;
    for (Vertex j = 1; j < n; ++j) {
      for (Vertex i = 0; i < j; ++i, ++idx) {
        if (((alpha >> i) ^ (alpha >> j)) & 1U) mask |= std::uint32_t{1} << idx;
      }
    }
    z1.push_back(mask);
    z1.push_back(mask ^ all);
  }
  const auto S = static_cast<std::uint64_t>(squares.size());
  const auto E = static_cast<std::uint64_t>(edges);
  Ratio best{1, 0};
  bool have = false;
  for (std::uint32_t g = 0; g <= all; ++g) {
    std::uint64_t dist = E;
    for (auto z : z1) dist = std::min<std::uint64_t>(dist, static_cast<std::uint64_t>(std::popcount(g ^ z)));
    if (dist == 0) continue;
    std::uint64_t bad = 0;
    for (auto sq : squares) bad += static_cast<std::uint64_t>(std::popcount(g & sq) & 1);
    const Ratio r{bad * E, S * dist};
    if (!have || r < best) {
      best = r;
      have = true;
    }
  }
  const auto g = std::gcd(best.num, best.den);
  return Ratio{best.num / g, best.den / g};
}

std::optional<ProbeResult> probe_ratio(const Cochain& g, Rng& rng) {
  if (g.dim() != 2) throw DimensionError("probe_ratio takes a 2-cochain");
  ProbeResult p;
  const auto dn = delta_norm(g, rng, 1'000'000);
  if (dn.value == 0.0) return std::nullopt;
  p.delta_norm = dn.value;
  p.delta_exact = dn.exact;
  const auto rep = decode_Z2(g, rng);
  const Cochain df = delta(rep.recovered);
  const Cochain br = bracket_cochain(g.n(), Sign::minus());
  bool first = true;
  for (const Cochain& alpha : {Cochain(g.n(), 2), br}) {
    for (Sign s : {Sign::plus(), Sign::minus()}) {
      const Ratio d = distance(g, s * alpha * df);
      if (first || d < p.coset_upper) p.coset_upper = d;
      first = false;
    }
  }
  if (p.coset_upper.num == 0) return std::nullopt;
  p.ratio = p.delta_norm / p.coset_upper.value();
  return p;
}

ExpansionProbe expansion_probe(int n, Rng& rng, std::uint64_t trials) {
  if (n < 12) throw RangeError("expansion probes need n >= 12 (got n = " + std::to_string(n) + ")");
  ExpansionProbe out;
  const Cochain br = bracket_cochain(n, Sign::minus());
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Cochain g = delta(Cochain::random(n, 1, rng));
    if (coin(rng)) g *= br;
    if (coin(rng)) g *= Sign::minus();
    std::uniform_int_distribution<std::uint64_t> cell(0, g.size() - 1);
    for (std::uint64_t k = 0; k <= t % 8; ++k) g.flip(cell(rng));
    ++out.probes;
    const auto p = probe_ratio(g, rng);
    if (!p) {
      ++out.excluded;
      continue;
    }
    if (!out.value || p->ratio < *out.value) out.value = p->ratio;
  }
  return out;
}

}  // namespace cubetest
