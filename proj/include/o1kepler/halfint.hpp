#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace o1kepler {

/// An element of (1/2)Z stored as its doubled numerator, so quantum-number
/// arithmetic never goes through floating point.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int integer) : twice_(2 * integer) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }

  constexpr auto operator<=>(const HalfInt&) const = default;

  /// "-3/2", "2", "1/2"
  std::string str() const;

  /// Accepts "3/2", "1.5", "2"; throws a parameter error otherwise.
  static HalfInt parse(std::string_view text);

 private:
  int twice_ = 0;
};

}  // namespace o1kepler
