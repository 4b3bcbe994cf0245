#include <algorithm>

#include "cubetest/detectors.hpp"
#include "cubetest/errors.hpp"
#include "doctest.h"

using namespace cubetest;

namespace {

bool is_constant(const TupleFunction& t, Sign expect) {
  bool ok = true;
  for_each_tuple(t.n, t.k, {}, [&](std::span<const Vertex> x) { ok = ok && t(x) == expect; });
  return ok;
}

Cochain random_z2(int n, Rng& rng, Sign theta, Sign pi) {
  return theta * bracket_cochain(n, pi) * delta(Cochain::random(n, 1, rng));
}

}  // namespace

TEST_CASE("Delta") {
  Rng rng(1);
  const int n = 7;
  CHECK(is_constant(Delta(Cochain::constant(n, 1, Sign::minus())), Sign::minus()));
  for (Sign theta : {Sign::plus(), Sign::minus()}) {
    const auto f = theta * delta(Cochain::random(n, 0, rng));
    CHECK(is_constant(Delta(f), theta));
  }
  auto f = delta(Cochain::random(n, 0, rng));
  f.flip(CellIndex::edge_index(2, 5));
  const auto tri = Delta(f);
  CHECK_FALSE(is_constant(tri, Sign::plus()));
  CHECK_FALSE(is_constant(tri, Sign::minus()));
  CHECK(tri({2, 5, 0}) == Sign::minus());
  CHECK(tri({0, 1, 3}) == Sign::plus());

  // constant exactly on cocycles
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = Cochain::random(5, 1, rng);
    const auto t = Delta(g);
    CHECK((is_constant(t, Sign::plus()) || is_constant(t, Sign::minus())) == delta(g).is_all_plus());
  }
}

TEST_CASE("Delta' and Delta'' on the generators of Z^2") {
  Rng rng(2);
  const int n = 8;
  const auto minus = Cochain::constant(n, 2, Sign::minus());
  const auto bracket = bracket_cochain(n, Sign::minus());
  CHECK(is_constant(DeltaPrime(minus), Sign::minus()));
  CHECK(is_constant(DeltaPrime(bracket), Sign::plus()));
  CHECK(is_constant(DeltaDoublePrime(minus), Sign::minus()));
  CHECK(is_constant(DeltaDoublePrime(bracket), Sign::minus()));
  for (int trial = 0; trial < 5; ++trial) {
    const auto b = delta(Cochain::random(n, 1, rng));
    CHECK(is_constant(DeltaPrime(b), Sign::plus()));
    CHECK(is_constant(DeltaDoublePrime(b), Sign::plus()));
  }
  CHECK_THROWS_AS(DeltaDoublePrime(Cochain(4, 2)), EmptyComplexError);
  CHECK_THROWS_AS(DeltaPrime(Cochain(5, 1)), DimensionError);
}

TEST_CASE("detecting maps are multiplicative") {
  Rng rng(3);
  const int n = 9;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = Cochain::random(n, 1, rng), g = Cochain::random(n, 1, rng);
    const auto x3 = sample_tuple(n, 3, rng);
    CHECK(Delta(f * g)(x3) == Delta(f)(x3) * Delta(g)(x3));
    const auto u = Cochain::random(n, 2, rng), v = Cochain::random(n, 2, rng);
    const auto x4 = sample_tuple(n, 4, rng);
    const auto x5 = sample_tuple(n, 5, rng);
    CHECK(DeltaPrime(u * v)(x4) == DeltaPrime(u)(x4) * DeltaPrime(v)(x4));
    CHECK(DeltaDoublePrime(u * v)(x5) == DeltaDoublePrime(u)(x5) * DeltaDoublePrime(v)(x5));
  }
}

TEST_CASE("three-cube identity for Delta' x Delta'") {
  Rng rng(4);
  const int n = 12;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = Cochain::random(n, 2, rng);
    const auto v = sample_tuple(n, 8, rng);
    const auto dp = DeltaPrime(g);
    CHECK(three_cube_product(g, v) == dp(std::span<const Vertex>(v).first(4)) * dp(std::span<const Vertex>(v).subspan(4)));
  }
}

TEST_CASE("Delta x Delta is a product of three squares") {
  Rng rng(5);
  const int n = 10;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = Cochain::random(n, 1, rng);
    const auto v = sample_tuple(n, 6, rng);
    const Vertex i = v[0], j = v[1], k = v[2], i2 = v[3], j2 = v[4], k2 = v[5];
    const auto pp = pair_product(Delta(f));
    CHECK(pp(v) == delta1_at(f, {i, j, j2, i2}) * delta1_at(f, {j, k, k2, j2}) * delta1_at(f, {k, i, i2, k2}));
  }
}

TEST_CASE("Delta' of a directed coboundary is Delta of the norm") {
  Rng rng(6);
  const int n = 8;
  for (int trial = 0; trial < 10; ++trial) {
    DirectedCochain f = DirectedCochain::embed(Cochain::random(n, 1, rng)) * eta_head(Cochain::random(n, 0, rng));
    if (trial % 2) f *= order_function(natural_order(n));
    const auto g = as_square_cochain(vdelta1(f));
    REQUIRE(g.has_value());
    const auto lhs = DeltaPrime(*g);
    const auto rhs = Delta(norm_map(f));
    for_each_tuple(n, 4, {}, [&](std::span<const Vertex> t) { CHECK(lhs(t) == rhs(t.subspan(1))); });
  }
}

TEST_CASE("six-vertex identity on Z^2") {
  Rng rng(7);
  const int n = 10;
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_z2(n, rng, Sign::from_bit(trial & 1), Sign::from_bit((trial >> 1) & 1));
    for (int s = 0; s < 50; ++s) {
      const auto v = sample_tuple(n, 6, rng);
      const Vertex a = v[0], b = v[1], i = v[2], i2 = v[3], j = v[4], j2 = v[5];
      CHECK(g.square(a, i, b, j) * g.square(a, j, b, j2) * g.square(a, j2, b, i2) * g.square(a, i2, b, i) == Sign::plus());
    }
  }
}

TEST_CASE("majority_constant") {
  std::vector<Sign> plus(10, Sign::plus()), minus(10, Sign::minus());
  CHECK(majority_constant(plus).estimated_constant == Sign::plus());
  CHECK(majority_constant(plus).empirical_error == 0.0);
  CHECK(majority_constant(minus).estimated_constant == Sign::minus());
  CHECK(majority_constant(minus).empirical_error == 0.0);
  std::vector<Sign> mix;
  for (int i = 0; i < 100; ++i) mix.push_back(i < 70 ? Sign::minus() : Sign::plus());
  const auto r = majority_constant(mix);
  CHECK(r.estimated_constant == Sign::minus());
  CHECK(r.empirical_error == doctest::Approx(0.30));
  CHECK(majority_constant(mix).empirical_error == r.empirical_error);
  std::vector<Sign> tie = {Sign::plus(), Sign::minus()};
  CHECK(majority_constant(tie).estimated_constant == Sign::plus());
}

TEST_CASE("estimate_constant and Lemma-style concentration") {
  Rng rng(8);
  const int n = 20;
  auto f = delta(Cochain::random(n, 0, rng)) * Sign::minus();
  for (int s = 0; s < 8; ++s) f.flip(static_cast<std::uint64_t>(rng() % f.size()));
  const auto exact = estimate_constant(Delta(f), 1'000'000, rng);
  CHECK(exact.exact);
  CHECK(exact.estimated_constant == Sign::minus());
  const auto sampled = estimate_constant(Delta(f), 5000, rng);
  CHECK_FALSE(sampled.exact);
  CHECK(sampled.estimated_constant == Sign::minus());
  // if (f x f) ~_{p'} 1 then f ~_{p'} theta
  const auto pp = norm(pair_product(Delta(f)), rng, 200000, 0);
  CHECK(exact.empirical_error <= pp.value + pp.half_width);
}

TEST_CASE("select_vertex") {
  Rng rng(9);
  const int n = 10;
  SUBCASE("a single flipped edge") {
    // star in (a, j, k): the endpoints see 2(n-2) bad pairs, every other vertex 2
    auto f = Cochain(n, 1);
    f.flip(CellIndex::edge_index(1, 2));
    const StarCondition cond{Delta(f), 0, {}};
    const auto sel = select_vertex(std::span(&cond, 1), 1'000'000, rng);
    CHECK(sel.exact);
    CHECK(sel.vertex == 0);
    const double pairs = (n - 1) * (n - 2);
    CHECK(sel.conditional_error[0] == doctest::Approx(2 / pairs));
    CHECK(sel.global_error[0] == doctest::Approx((2 * 2 * (n - 2) + (n - 2) * 2) / pairs / n));
  }
  SUBCASE("error-free conditions pick the least id") {
    const StarCondition cond{Delta(Cochain(n, 1)), 1, {}};
    CHECK(select_vertex(std::span(&cond, 1), 1'000'000, rng).vertex == 0);
  }
  SUBCASE("a corrupted hub is never chosen") {
    for (int trial = 0; trial < 10; ++trial) {
      const Vertex hub = static_cast<Vertex>(rng() % n);
      auto f = delta(Cochain::random(n, 0, rng));
      std::vector<Vertex> others;
      for (Vertex j = 0; j < n; ++j) {
        if (j != hub) others.push_back(j);
      }
      std::shuffle(others.begin(), others.end(), rng);
      for (std::size_t t = 0; t < others.size() / 2; ++t) f.flip(CellIndex::edge_index(hub, others[t]));
      const StarCondition cond{Delta(f), 0, {}};
      CHECK(select_vertex(std::span(&cond, 1), 1'000'000, rng).vertex != hub);
      CHECK(select_vertex(std::span(&cond, 1), 2000, rng).vertex != hub);
    }
  }
  SUBCASE("pinned slots are respected") {
    const StarCondition cond{DeltaPrime(Cochain(n, 2)), 2, {{0, 0}}};
    const auto sel = select_vertex(std::span(&cond, 1), 1'000'000, rng);
    CHECK(sel.vertex == 1);
  }
}

TEST_CASE("delta1_from_Delta") {
  Rng rng(10);
  CHECK(delta1_from_Delta(Cochain::random(6, 1, rng), rng) == 360);
  CHECK(delta1_from_Delta(Cochain::constant(6, 1, Sign::minus()), rng) == 360);
  CHECK(delta1_from_Delta(delta(Cochain::random(6, 0, rng)), rng) == 360);
  CHECK(delta1_from_Delta(Cochain::random(30, 1, rng), rng, 5000) == 5000);
}
