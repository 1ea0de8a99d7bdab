#include "prefrev/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace prefrev {

namespace {

wide_int gcd128(wide_int a, wide_int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    wide_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(wide_int v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(wide_int num, wide_int den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide_int g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_int(text.substr(0, slash), text);
    std::int64_t d = parse_int(text.substr(slash + 1), text);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text, text));

  bool negative = text.front() == '-';
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = text.substr(dot + 1);
  if (frac_part.empty() || frac_part.size() > 17 || frac_part.front() == '-' ||
      frac_part.front() == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  std::int64_t whole = 0;
  if (!int_part.empty() && int_part != "-" && int_part != "+") whole = parse_int(int_part, text);
  std::int64_t frac = parse_int(frac_part, text);
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  wide_int n = static_cast<wide_int>(whole < 0 ? -whole : whole) * scale + frac;
  if (negative) n = -n;
  return from_wide(n, scale);
}

Rational Rational::operator-() const { return from_wide(-static_cast<wide_int>(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<wide_int>(a.num_) * b.den_ +
                                 static_cast<wide_int>(b.num_) * a.den_,
                             static_cast<wide_int>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<wide_int>(a.num_) * b.num_,
                             static_cast<wide_int>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero");
  return Rational::from_wide(static_cast<wide_int>(a.num_) * b.den_,
                             static_cast<wide_int>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  wide_int lhs = static_cast<wide_int>(a.num_) * b.den_;
  wide_int rhs = static_cast<wide_int>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::midpoint(const Rational& a, const Rational& b) {
  return from_wide(static_cast<wide_int>(a.num_) * b.den_ + static_cast<wide_int>(b.num_) * a.den_,
                   static_cast<wide_int>(a.den_) * b.den_ * 2);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace prefrev
