#include "cubetest/testers.hpp"

#include <string>

#include "cubetest/detectors.hpp"
#include "cubetest/errors.hpp"

namespace cubetest {

namespace {

void require_vertices(const Cochain& c, int d, int min_n, const char* who) {
  if (c.dim() != d) throw DimensionError(std::string(who) + " takes a " + std::to_string(d) + "-cochain");
  if (c.n() < min_n) {
    throw EmptyComplexError(std::string(who) + " needs n >= " + std::to_string(min_n) + " (got " + std::to_string(c.n()) + ")");
  }
}

std::uint64_t effective_budget(const DecodeOptions& opts, int n) {
  return opts.budget != 0 ? opts.budget : 64 * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
}

Sign eval_delta_at(const Cochain& f, std::span<const Vertex> t) {
  if (f.dim() == 0) return f.vertex(t[0]) * f.vertex(t[1]);
  if (f.dim() == 1) return delta1_at(f, {t[0], t[1], t[2], t[3]});
  return delta2_at(f, t);
}

// g'_{ab;ij} read as a 1-cochain h on the vertices other than a, b, relabeled
// in increasing order; `back` maps new ids to old ones.
Cochain link_cochain(const Cochain& g, Vertex a, Vertex b, std::vector<Vertex>& back) {
  const int n = g.n();
  back.clear();
  for (Vertex v = 0; v < n; ++v) {
    if (v != a && v != b) back.push_back(v);
  }
  const int m = n - 2;
  Cochain h(m, 1);
  std::uint64_t idx = 0;
  for (Vertex j = 1; j < m; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      h.set(idx++, g.square(a, back[static_cast<std::size_t>(i)], b, back[static_cast<std::size_t>(j)]));
    }
  }
  return h;
}

// Steps 7-8: one-sided edge values from the anchors, then symmetrized.
Cochain rebuild_edges(const Cochain& g, Vertex a, Vertex b, const std::vector<Sign>& beta, std::uint64_t& changed) {
  const int n = g.n();
  auto one_sided = [&](Vertex i, Vertex j) -> Sign {
    if (i == a) return Sign::plus();
    if (i == b) return j == a ? Sign::plus() : beta[static_cast<std::size_t>(j)];
    if (j == a) return Sign::plus();
    if (j == b) return beta[static_cast<std::size_t>(i)];
    return beta[static_cast<std::size_t>(i)] * g.square(a, b, i, j);
  };
  Cochain f(n, 1);
  changed = 0;
  std::uint64_t idx = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++idx) {
      const Sign ij = one_sided(i, j), ji = one_sided(j, i);
      if (ij == ji) {
        f.set(idx, ij);
      } else {
        ++changed;
      }
    }
  }
  return f;
}

void finish_certificate(DecodeReport& r, const Cochain& input) {
  r.achieved_distance = distance(input, reconstruction(r));
  r.certified_bound = static_cast<double>(r.ratio_constant) * r.delta_norm.value;
  if (r.delta_norm_exact) {
    r.within_bound = r.achieved_distance <= r.delta_norm_exact->scaled(r.ratio_constant);
  } else {
    r.within_bound = r.achieved_distance.value() <= r.certified_bound;
  }
}

}  // namespace

NormEstimate delta_norm(const Cochain& f, Rng& rng, std::uint64_t samples, std::uint64_t exact_limit,
                        std::optional<Ratio>* exact) {
  const int target = f.dim() + 1;
  if (target > 3) throw DimensionError("no differential out of dimension 3");
  const int k = corners_of(target);
  if (f.n() < k) throw EmptyComplexError("complex has no " + std::to_string(target) + "-cells");
  NormEstimate est;
  if (cell_count(f.n(), target) <= exact_limit) {
    const Ratio r = norm(delta(f));
    est.value = r.value();
    est.samples = r.den;
    est.exact = true;
    if (exact) *exact = r;
    return est;
  }
  std::vector<Vertex> t(static_cast<std::size_t>(k));
  std::uint64_t bad = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    sample_tuple_into(f.n(), t, rng);
    bad += eval_delta_at(f, t).is_minus() ? 1 : 0;
  }
  est.samples = samples;
  est.value = samples == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(samples);
  est.half_width = hoeffding_half_width(samples);
  if (exact) exact->reset();
  return est;
}

TestVerdict test_B1(const Cochain& f, std::uint64_t trials, Rng& rng) {
  require_vertices(f, 1, 4, "test_B1");
  TestVerdict v;
  v.trials = trials;
  v.queries_per_trial = 4;
  std::vector<Vertex> t(4);
  for (std::uint64_t s = 0; s < trials; ++s) {
    sample_tuple_into(f.n(), t, rng);
    if (delta1_at(f, {t[0], t[1], t[2], t[3]}).is_minus()) {
      ++v.rejections;
      if (!v.rejecting_witness) v.rejecting_witness = canonical_square(t[0], t[1], t[2], t[3]).cell();
    }
  }
  v.accepted = v.rejections == 0;
  return v;
}

TestVerdict test_Z2(const Cochain& g, std::uint64_t trials, Rng& rng) {
  require_vertices(g, 2, 8, "test_Z2");
  TestVerdict v;
  v.trials = trials;
  v.queries_per_trial = 6;
  std::vector<Vertex> t(8);
  for (std::uint64_t s = 0; s < trials; ++s) {
    sample_tuple_into(g.n(), t, rng);
    if (delta2_at(g, t).is_minus()) {
      ++v.rejections;
      if (!v.rejecting_witness) v.rejecting_witness = canonical_cube(t).cell();
    }
  }
  v.accepted = v.rejections == 0;
  return v;
}

Cochain reconstruction(const DecodeReport& r) {
  if (r.d == 1) return r.theta * delta(r.recovered);
  return r.theta * bracket_cochain(r.recovered.n(), r.pi) * delta(r.recovered);
}

DecodeReport decode_B1(const Cochain& f, Rng& rng, const DecodeOptions& opts) {
  require_vertices(f, 1, 5, "decode_B1");
  const int n = f.n();
  const auto budget = effective_budget(opts, n);
  DecodeReport r;
  r.d = 1;
  r.ratio_constant = 3;
  r.theta = estimate_constant(Delta(f), budget, rng).estimated_constant;
  const Cochain fp = r.theta * f;
  const StarCondition cond{Delta(fp), 0, {}};
  const Vertex a = select_vertex(std::span(&cond, 1), budget, rng).vertex;
  r.anchors = {a};
  r.recovered = Cochain(n, 0);
  for (Vertex j = 0; j < n; ++j) {
    if (j != a) r.recovered.set(static_cast<std::uint64_t>(j), fp.edge(j, a));
  }
  r.delta_norm = delta_norm(f, rng, opts.norm_samples, opts.force_exact ? UINT64_MAX : kExactNormLimit, &r.delta_norm_exact);
  finish_certificate(r, f);
  return r;
}

DecodeReport decode_Z2(const Cochain& g, Rng& rng, const DecodeOptions& opts) {
  require_vertices(g, 2, 12, "decode_Z2");
  const int n = g.n();
  const auto budget = effective_budget(opts, n);
  DecodeReport r;
  r.d = 2;
  r.ratio_constant = 1504;
  r.theta = estimate_constant(DeltaPrime(g), budget, rng).estimated_constant;
  r.pi = r.theta * estimate_constant(DeltaDoublePrime(g), budget, rng).estimated_constant;
  const Cochain gp = r.theta * bracket_cochain(n, r.pi) * g;

  const auto dp = DeltaPrime(gp);
  const auto dpp = DeltaDoublePrime(gp);
  const std::vector<StarCondition> first = {{dp, 0, {}}, {dpp, 0, {}}, {dpp, 2, {}}};
  const Vertex a0 = select_vertex(first, budget, rng).vertex;
  const std::vector<StarCondition> second = {{dp, 2, {{0, a0}}}, {dpp, 1, {{0, a0}}}, {dpp, 2, {{0, a0}}}};
  const Vertex b0 = select_vertex(second, budget, rng).vertex;
  r.anchors = {a0, b0};

  std::vector<Vertex> back;
  const Cochain h = link_cochain(gp, a0, b0, back);
  DecodeOptions inner = opts;
  inner.budget = budget;
  const auto hb = decode_B1(h, rng, inner);
  std::vector<Sign> beta(static_cast<std::size_t>(n));
  for (std::size_t v = 0; v < back.size(); ++v) beta[static_cast<std::size_t>(back[v])] = hb.recovered.vertex(static_cast<Vertex>(v));

  r.recovered = rebuild_edges(gp, a0, b0, beta, r.symmetrized);
  r.delta_norm = delta_norm(g, rng, opts.norm_samples, opts.force_exact ? UINT64_MAX : kExactNormLimit, &r.delta_norm_exact);
  finish_certificate(r, g);
  return r;
}

Classification classify_exact(const Cochain& g) {
  require_vertices(g, 2, 10, "classify_exact");
  if (!delta(g).is_all_plus()) throw NotACocycleError("classify_exact: delta^2 g is not identically +1");
  const int n = g.n();
  Classification c;
  c.theta = DeltaPrime(g)({0, 1, 2, 3});
  c.pi = c.theta * DeltaDoublePrime(g)({0, 1, 2, 3, 4});
  const Cochain gp = c.theta * bracket_cochain(n, c.pi) * g;

  const Vertex a = 0, b = 1;
  std::vector<Vertex> back;
  const Cochain h = link_cochain(gp, a, b, back);
  // h is an exact coboundary: beta_i beta_j = h_ij with beta pinned at the first vertex
  std::vector<Sign> beta(static_cast<std::size_t>(n));
  beta[static_cast<std::size_t>(back[0])] = Sign::plus();
  for (std::size_t v = 1; v < back.size(); ++v) beta[static_cast<std::size_t>(back[v])] = h.edge(0, static_cast<Vertex>(v));
  std::uint64_t changed = 0;
  c.f = rebuild_edges(gp, a, b, beta, changed);
  if (changed != 0 || delta(c.f) != gp) throw ConsistencyError("classify_exact: reconstruction does not reproduce g");
  return c;
}

}  // namespace cubetest
