#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

namespace cubetest {

/// An element of the two-element multiplicative group {+1, -1}.
///
/// Stored as a single "negative" bit so that multiplication is XOR, which is
/// also how packed cochains combine word-wise.
class Sign {
 public:
  constexpr Sign() = default;

  static constexpr Sign plus() { return Sign(false); }
  static constexpr Sign minus() { return Sign(true); }
  static constexpr Sign from_bit(bool negative) { return Sign(negative); }
  static constexpr Sign from_int(int v) { return Sign(v < 0); }

  constexpr bool is_plus() const { return !negative_; }
  constexpr bool is_minus() const { return negative_; }
  constexpr bool bit() const { return negative_; }
  constexpr int value() const { return negative_ ? -1 : 1; }

  constexpr Sign operator-() const { return Sign(!negative_); }
  constexpr Sign& operator*=(Sign o) {
    negative_ = negative_ != o.negative_;
    return *this;
  }
  friend constexpr Sign operator*(Sign a, Sign b) { return a *= b; }
  friend constexpr bool operator==(Sign, Sign) = default;

  friend std::ostream& operator<<(std::ostream& os, Sign s) {
    return os << (s.negative_ ? "-1" : "+1");
  }

 private:
  constexpr explicit Sign(bool negative) : negative_(negative) {}
  bool negative_ = false;
};

/// Exact non-negative fraction num/den, used for norms and certified bounds.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

  Ratio scaled(std::uint64_t k) const { return Ratio{num * k, den}; }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    const auto lhs = static_cast<unsigned __int128>(a.num) * b.den;
    const auto rhs = static_cast<unsigned __int128>(b.num) * a.den;
    return lhs <=> rhs;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) {
    return os << r.num << '/' << r.den;
  }
};

}  // namespace cubetest
