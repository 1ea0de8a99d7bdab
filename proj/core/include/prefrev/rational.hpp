#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace prefrev {

// 128-bit intermediate type (a GCC/Clang extension).
__extension__ using wide_int = __int128;

/// Exact rational number with a 64-bit numerator and a positive 64-bit
/// denominator, always stored in lowest terms. Intermediate products are
/// computed in 128 bits; a result that does not fit throws
/// std::overflow_error instead of silently wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  /// Accepts `-12`, `2.5`, `-0.125`, `7/3`. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  static Rational midpoint(const Rational& a, const Rational& b);

  /// `p` for integers, `p/q` otherwise.
  std::string to_string() const;

 private:
  static Rational from_wide(wide_int num, wide_int den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace prefrev

template <>
struct std::hash<prefrev::Rational> {
  std::size_t operator()(const prefrev::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31u + std::hash<std::int64_t>{}(r.den());
  }
};
