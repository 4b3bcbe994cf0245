#include "cubetest/detectors.hpp"

#include <algorithm>
#include <string>

#include "cubetest/errors.hpp"

namespace cubetest {

namespace {

void require_shape(const Cochain& c, int d, int min_n, const char* who) {
  if (c.dim() != d) throw DimensionError(std::string(who) + " takes a " + std::to_string(d) + "-cochain");
  if (c.n() < min_n) throw EmptyComplexError(std::string(who) + " needs at least " + std::to_string(min_n) + " vertices");
}

}  // namespace

TupleFunction Delta(const Cochain& f) {
  require_shape(f, 1, 3, "Delta");
  return TupleFunction{f.n(), 3, [f](std::span<const Vertex> t) {
                         return f.edge(t[0], t[1]) * f.edge(t[1], t[2]) * f.edge(t[2], t[0]);
                       }};
}

TupleFunction DeltaPrime(const Cochain& g) {
  require_shape(g, 2, 4, "DeltaPrime");
  return TupleFunction{g.n(), 4, [g](std::span<const Vertex> t) {
                         return g.square(t[0], t[1], t[2], t[3]) * g.square(t[0], t[2], t[1], t[3]) *
                                g.square(t[0], t[1], t[3], t[2]);
                       }};
}

TupleFunction DeltaDoublePrime(const Cochain& g) {
  require_shape(g, 2, 5, "DeltaDoublePrime");
  return TupleFunction{g.n(), 5, [g](std::span<const Vertex> t) {
                         const Vertex a = t[0], b = t[1], i = t[2], j = t[3], k = t[4];
                         return g.square(a, i, b, j) * g.square(a, j, b, k) * g.square(a, k, b, i);
                       }};
}

TupleFunction pair_product(const TupleFunction& f) {
  const auto k = static_cast<std::size_t>(f.k);
  return TupleFunction{f.n, 2 * f.k, [f, k](std::span<const Vertex> t) { return f(t.first(k)) * f(t.subspan(k, k)); }};
}

DetectorReport MajorityCounter::report() const {
  DetectorReport r;
  r.samples = total();
  r.estimated_constant = minus_ > plus_ ? Sign::minus() : Sign::plus();
  r.disagreeing = r.estimated_constant.is_minus() ? plus_ : minus_;
  r.empirical_error = r.samples == 0 ? 0.0 : static_cast<double>(r.disagreeing) / static_cast<double>(r.samples);
  return r;
}

DetectorReport majority_constant(std::span<const Sign> values) {
  MajorityCounter c;
  for (Sign s : values) c.add(s);
  return c.report();
}

DetectorReport estimate_constant(const TupleFunction& t, std::uint64_t budget, Rng& rng) {
  MajorityCounter counter;
  const bool exact = falling_factorial(t.n, t.k) <= budget;
  if (exact) {
    for_each_tuple(t.n, t.k, {}, [&](std::span<const Vertex> x) { counter.add(t(x)); });
  } else {
    std::vector<Vertex> x(static_cast<std::size_t>(t.k));
    for (std::uint64_t s = 0; s < budget; ++s) {
      sample_tuple_into(t.n, x, rng);
      counter.add(t(x));
    }
  }
  auto r = counter.report();
  r.exact = exact;
  return r;
}

VertexSelection select_vertex(std::span<const StarCondition> conditions, std::uint64_t budget, Rng& rng) {
  if (conditions.empty()) throw RangeError("select_vertex needs at least one condition");
  const int n = conditions.front().f.n;
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  for (const auto& c : conditions) {
    if (c.f.n != n) throw DimensionError("conditions live on different vertex sets");
    for (const auto& [slot, v] : c.pinned) blocked[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < n; ++v) {
    if (!blocked[static_cast<std::size_t>(v)]) candidates.push_back(v);
  }
  if (candidates.empty()) throw RangeError("no candidate vertices left");

  const std::size_t nc = conditions.size();
  std::vector<std::vector<double>> cond(nc, std::vector<double>(candidates.size(), 0.0));
  bool all_exact = true;

  for (std::size_t ci = 0; ci < nc; ++ci) {
    const auto& c = conditions[ci];
    const auto k = static_cast<std::size_t>(c.f.k);
    std::vector<std::size_t> free_slots;
    for (std::size_t s = 0; s < k; ++s) {
      const bool pinned = std::any_of(c.pinned.begin(), c.pinned.end(), [&](const auto& p) { return p.first == s; });
      if (s != c.star && !pinned) free_slots.push_back(s);
    }
    const int avail = n - 1 - static_cast<int>(c.pinned.size());
    const auto per_candidate = falling_factorial(avail, static_cast<int>(free_slots.size()));
    const bool exact = per_candidate != 0 && per_candidate <= budget / candidates.size();
    all_exact = all_exact && exact;
    const std::uint64_t draws = std::max<std::uint64_t>(budget / candidates.size(), 32);

    std::vector<Vertex> tuple(k);
    std::vector<Vertex> excluded;
    std::vector<Vertex> free_vals(free_slots.size());
    for (const auto& [slot, v] : c.pinned) tuple[slot] = v;

    for (std::size_t ai = 0; ai < candidates.size(); ++ai) {
      const Vertex a = candidates[ai];
      tuple[c.star] = a;
      excluded.clear();
      excluded.push_back(a);
      for (const auto& [slot, v] : c.pinned) excluded.push_back(v);
      std::uint64_t bad = 0, seen = 0;
      auto eval = [&](std::span<const Vertex> rest) {
        for (std::size_t t = 0; t < free_slots.size(); ++t) tuple[free_slots[t]] = rest[t];
        bad += c.f(tuple).is_minus() ? 1 : 0;
        ++seen;
      };
      if (exact) {
        for_each_tuple(n, static_cast<int>(free_slots.size()), excluded, eval);
      } else {
        for (std::uint64_t s = 0; s < draws; ++s) {
          sample_tuple_avoiding(n, free_vals, excluded, rng);
          eval(free_vals);
        }
      }
      cond[ci][ai] = seen == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(seen);
    }
  }

  VertexSelection sel;
  sel.exact = all_exact;
  sel.global_error.assign(nc, 0.0);
  for (std::size_t ci = 0; ci < nc; ++ci) {
    double sum = 0;
    for (double e : cond[ci]) sum += e;
    sel.global_error[ci] = sum / static_cast<double>(candidates.size());
  }
  double best = -1.0;
  std::size_t best_ai = 0;
  for (std::size_t ai = 0; ai < candidates.size(); ++ai) {
    double worst = 0.0;
    for (std::size_t ci = 0; ci < nc; ++ci) {
      const double g = sel.global_error[ci];
      worst = std::max(worst, g > 0 ? cond[ci][ai] / g : 0.0);
    }
    if (best < 0 || worst < best) {
      best = worst;
      best_ai = ai;
    }
  }
  sel.vertex = candidates[best_ai];
  sel.worst_ratio = best;
  sel.conditional_error.resize(nc);
  for (std::size_t ci = 0; ci < nc; ++ci) sel.conditional_error[ci] = cond[ci][best_ai];
  return sel;
}

Sign delta1_at(const Cochain& f, const std::array<Vertex, 4>& c) {
  return f.edge(c[0], c[1]) * f.edge(c[1], c[2]) * f.edge(c[2], c[3]) * f.edge(c[3], c[0]);
}

std::uint64_t delta1_from_Delta(const Cochain& f, Rng& rng, std::uint64_t samples) {
  const auto tri = Delta(f);
  std::uint64_t checked = 0;
  auto check = [&](std::span<const Vertex> t) {
    const std::array<Vertex, 4> c = {t[0], t[1], t[2], t[3]};
    const std::array<Vertex, 3> ijl = {t[0], t[1], t[3]}, jkl = {t[1], t[2], t[3]};
    if (delta1_at(f, c) != tri(ijl) * tri(jkl)) {
      throw ConsistencyError("square factorization through Delta failed at (" + std::to_string(t[0]) + "," +
                             std::to_string(t[1]) + "," + std::to_string(t[2]) + "," + std::to_string(t[3]) + ")");
    }
    ++checked;
  };
  if (falling_factorial(f.n(), 4) <= samples) {
    for_each_tuple(f.n(), 4, {}, check);
  } else {
    std::vector<Vertex> t(4);
    for (std::uint64_t s = 0; s < samples; ++s) {
      sample_tuple_into(f.n(), t, rng);
      check(t);
    }
  }
  return checked;
}

std::array<Vertex, 8> cube_from_faces(const std::array<Vertex, 4>& b, const std::array<Vertex, 4>& t) {
  // corners 0,1,3,2 run around the x-y square; bit 2 is the vertical axis
  return {b[0], b[1], b[3], b[2], t[0], t[1], t[3], t[2]};
}

Sign delta2_at(const Cochain& g, std::span<const Vertex> lab) {
  Sign s;
  for (const auto& face : cube_faces(lab)) s *= g.square(face);
  return s;
}

Sign three_cube_product(const Cochain& g, std::span<const Vertex> v) {
  const Vertex i = v[0], j = v[1], k = v[2], l = v[3];
  const Vertex i2 = v[4], j2 = v[5], k2 = v[6], l2 = v[7];
  return delta2_at(g, cube_from_faces({i, j, k, l}, {i2, j2, k2, l2})) *
         delta2_at(g, cube_from_faces({i, k, j, l}, {i2, k2, j2, l2})) *
         delta2_at(g, cube_from_faces({i, j, l, k}, {i2, j2, l2, k2}));
}

}  // namespace cubetest
