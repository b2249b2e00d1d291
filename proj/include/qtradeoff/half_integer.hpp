#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qtradeoff {

/// Exact spin quantum number stored as twice its value (j = 3/2 has twice == 3).
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_int(int value) { return HalfInteger(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }
  constexpr HalfInteger operator+(int n) const { return HalfInteger(twice_ + 2 * n); }
  constexpr HalfInteger operator-(int n) const { return HalfInteger(twice_ - 2 * n); }
  constexpr HalfInteger& operator+=(int n) { twice_ += 2 * n; return *this; }

  constexpr auto operator<=>(const HalfInteger&) const = default;

  std::string str() const {
    return twice_ % 2 == 0 ? std::to_string(twice_ / 2) : std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// True iff |m| <= j and j - m is an integer.
constexpr bool is_valid_label(HalfInteger j, HalfInteger m) {
  const int tj = j.twice();
  const int tm = m.twice();
  return tj >= 0 && tm <= tj && -tm <= tj && (tj - tm) % 2 == 0;
}

}  // namespace qtradeoff
