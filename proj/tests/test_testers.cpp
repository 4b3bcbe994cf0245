#include <cmath>

#include "cubetest/detectors.hpp"
#include "cubetest/errors.hpp"
#include "cubetest/testers.hpp"
#include "doctest.h"

using namespace cubetest;

namespace {

Cochain flip_each(Cochain c, double rate, Rng& rng) {
  std::bernoulli_distribution coin(rate);
  for (std::uint64_t x = 0; x < c.size(); ++x) {
    if (coin(rng)) c.flip(x);
  }
  return c;
}

Cochain planted_z2(int n, Sign theta, Sign pi, Rng& rng) {
  return theta * bracket_cochain(n, pi) * delta(Cochain::random(n, 1, rng));
}

void check_rate(const TestVerdict& v, double p) {
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(v.trials));
  CHECK(std::abs(v.rejection_rate() - p) <= 4 * sigma);
}

}  // namespace

TEST_CASE("test_B1 is one-sided") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 9;
    const Sign theta = Sign::from_bit(trial & 1);
    CHECK(test_B1(theta * delta(Cochain::random(n, 0, rng)), 2000, rng).accepted);
  }
  const auto v = test_B1(Cochain::constant(10, 1, Sign::minus()), 5000, rng);
  CHECK(v.accepted);
  CHECK(v.queries_per_trial == 4);
  CHECK_FALSE(v.rejecting_witness.has_value());
  CHECK_THROWS_AS(test_B1(Cochain(3, 1), 1, rng), EmptyComplexError);
  CHECK_THROWS_AS(test_B1(Cochain(6, 2), 1, rng), DimensionError);
}

TEST_CASE("test_B1 rejection rate for one flipped edge") {
  Rng rng(2);
  const int n = 8;
  auto f = delta(Cochain::random(n, 0, rng));
  f.flip(CellIndex::edge_index(3, 6));
  // squares through a fixed edge: 2 C(n-2, 2) out of 3 C(n, 4)
  const double p = 2.0 * static_cast<double>(binomial(n - 2, 2)) / (3.0 * static_cast<double>(binomial(n, 4)));
  CHECK(norm(delta(f)).value() == doctest::Approx(p));
  const auto v = test_B1(f, 70000, rng);
  CHECK_FALSE(v.accepted);
  check_rate(v, p);
  REQUIRE(v.rejecting_witness.has_value());
  CHECK(delta(f).at(*v.rejecting_witness) == Sign::minus());
}

TEST_CASE("test_Z2 is one-sided") {
  Rng rng(3);
  for (int trial = 0; trial < 16; ++trial) {
    const int n = 8 + trial % 5;
    const auto g = planted_z2(n, Sign::from_bit(trial & 1), Sign::from_bit((trial >> 1) & 1), rng);
    const auto v = test_Z2(g, 2000, rng);
    CHECK(v.accepted);
    CHECK(v.queries_per_trial == 6);
  }
  // B^2 of the directed complex
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 9;
    DirectedCochain f = DirectedCochain::embed(Cochain::random(n, 1, rng)) * eta_head(Cochain::random(n, 0, rng)) *
                        order_function(natural_order(n));
    const auto g = as_square_cochain(vdelta1(f));
    REQUIRE(g.has_value());
    CHECK(test_Z2(*g, 2000, rng).accepted);
  }
  CHECK_THROWS_AS(test_Z2(Cochain(7, 2), 1, rng), EmptyComplexError);
}

TEST_CASE("test_Z2 rejection rate for one flipped square") {
  Rng rng(4);
  const int n = 9;
  auto g = delta(Cochain::random(n, 1, rng));
  g.flip(17);
  // cubes through a fixed square: 24 C(n-4, 4) out of 840 C(n, 8)
  const double p = 24.0 * static_cast<double>(binomial(n - 4, 4)) / (840.0 * static_cast<double>(binomial(n, 8)));
  CHECK(norm(delta(g)).value() == doctest::Approx(p));
  const auto v = test_Z2(g, 60000, rng);
  check_rate(v, p);
  REQUIRE(v.rejecting_witness.has_value());
  CHECK(delta(g).at(*v.rejecting_witness) == Sign::minus());
}

TEST_CASE("decode_B1") {
  Rng rng(5);
  SUBCASE("exact coboundaries") {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 5 + trial;
      const Sign theta = Sign::from_bit(trial & 1);
      const auto f = theta * delta(Cochain::random(n, 0, rng));
      const auto r = decode_B1(f, rng);
      CHECK(r.theta == theta);
      CHECK(r.achieved_distance.num == 0);
      CHECK(r.within_bound);
      CHECK(r.delta_norm.exact);
      CHECK(reconstruction(r) == f);
    }
  }
  SUBCASE("minus one") {
    const auto r = decode_B1(Cochain::constant(9, 1, Sign::minus()), rng);
    CHECK(r.theta == Sign::minus());
    CHECK(r.achieved_distance.num == 0);
    CHECK((r.recovered.is_all_plus() || r.recovered == Cochain::constant(9, 0, Sign::minus())));
  }
  SUBCASE("planted noise at n = 40") {
    for (int trial = 0; trial < 3; ++trial) {
      const Sign theta = Sign::from_bit(trial & 1);
      const auto clean = theta * delta(Cochain::random(40, 0, rng));
      const auto f = flip_each(clean, 0.01, rng);
      const auto r = decode_B1(f, rng);
      REQUIRE(r.delta_norm_exact.has_value());
      CHECK(r.achieved_distance <= r.delta_norm_exact->scaled(3));
      CHECK(r.within_bound);
      CHECK(r.theta == theta);
      // the decoder's own output decodes to itself
      const auto again = decode_B1(reconstruction(r), rng);
      CHECK(again.achieved_distance.num == 0);
    }
  }
  CHECK_THROWS_AS(decode_B1(Cochain(4, 1), rng), EmptyComplexError);
}

TEST_CASE("decode_Z2") {
  Rng rng(6);
  SUBCASE("exact members recover theta and pi") {
    for (int trial = 0; trial < 4; ++trial) {
      const Sign theta = Sign::from_bit(trial & 1), pi = Sign::from_bit(trial >> 1);
      const auto g = planted_z2(12, theta, pi, rng);
      const auto r = decode_Z2(g, rng);
      CHECK(r.theta == theta);
      CHECK(r.pi == pi);
      CHECK(r.achieved_distance.num == 0);
      CHECK(r.within_bound);
      CHECK(r.delta_norm.exact);
    }
  }
  SUBCASE("bracket") {
    const auto r = decode_Z2(bracket_cochain(12, Sign::minus()), rng);
    CHECK(r.theta == Sign::plus());
    CHECK(r.pi == Sign::minus());
    CHECK(r.achieved_distance.num == 0);
  }
  SUBCASE("planted noise") {
    for (int trial = 0; trial < 3; ++trial) {
      const auto g = flip_each(planted_z2(13, Sign::from_bit(trial & 1), Sign::minus(), rng), 0.005, rng);
      const auto r = decode_Z2(g, rng);
      REQUIRE(r.delta_norm_exact.has_value());
      CHECK(r.achieved_distance <= r.delta_norm_exact->scaled(1504));
      CHECK(r.within_bound);
    }
  }
  SUBCASE("estimated norm at larger n") {
    const auto g = flip_each(planted_z2(20, Sign::minus(), Sign::plus(), rng), 0.001, rng);
    DecodeOptions opts;
    opts.norm_samples = 200000;
    const auto r = decode_Z2(g, rng, opts);
    CHECK_FALSE(r.delta_norm.exact);
    CHECK(r.delta_norm.half_width > 0);
    CHECK(r.within_bound);
    CHECK(r.theta == Sign::minus());
  }
  CHECK_THROWS_AS(decode_Z2(Cochain(11, 2), rng), EmptyComplexError);
}

TEST_CASE("classify_exact") {
  Rng rng(7);
  const int n = 10;
  SUBCASE("minus one") {
    const auto c = classify_exact(Cochain::constant(n, 2, Sign::minus()));
    CHECK(c.theta == Sign::minus());
    CHECK(c.pi == Sign::plus());
    CHECK(c.f.is_all_plus());
  }
  SUBCASE("minus bracket") {
    const auto g = -bracket_cochain(n, Sign::minus());
    // Delta' = -1 * +1, Delta'' = -1 * -1
    const auto c = classify_exact(g);
    CHECK(c.theta == Sign::minus());
    CHECK(c.pi == Sign::minus());
    CHECK(c.theta * bracket_cochain(n, c.pi) * delta(c.f) == g);
  }
  SUBCASE("coboundaries") {
    for (int trial = 0; trial < 5; ++trial) {
      const auto f0 = Cochain::random(n, 1, rng);
      const auto c = classify_exact(delta(f0));
      CHECK(c.theta == Sign::plus());
      CHECK(c.pi == Sign::plus());
      CHECK(delta(c.f) == delta(f0));
    }
  }
  SUBCASE("random members of Z^2") {
    for (int trial = 0; trial < 8; ++trial) {
      const Sign theta = Sign::from_bit(trial & 1), pi = Sign::from_bit((trial >> 1) & 1);
      const auto g = planted_z2(n + trial % 3, theta, pi, rng);
      const auto c = classify_exact(g);
      CHECK(c.theta == theta);
      CHECK(c.pi == pi);
      CHECK(c.theta * bracket_cochain(g.n(), c.pi) * delta(c.f) == g);
    }
  }
  SUBCASE("errors") {
    auto g = delta(Cochain::random(n, 1, rng));
    g.flip(0);
    CHECK_THROWS_AS(classify_exact(g), NotACocycleError);
    CHECK_THROWS_AS(classify_exact(Cochain(9, 2)), EmptyComplexError);
  }
}
