#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ck {

// Exact rational arithmetic for project costs and budgets. Costs in this
// model have small denominators (N_p + 1 for the non-uniform structures), so
// 64-bit numerator/denominator with overflow-checked products is plenty.
class rational {
 public:
  rational() = default;
  rational(std::int64_t num) : num_(num), den_(1) {}
  rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  rational operator+(const rational& o) const {
    return rational(checked_mul(num_, o.den_) + checked_mul(o.num_, den_), checked_mul(den_, o.den_));
  }
  rational operator-(const rational& o) const {
    return rational(checked_mul(num_, o.den_) - checked_mul(o.num_, den_), checked_mul(den_, o.den_));
  }
  rational operator*(const rational& o) const {
    return rational(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
  }
  rational& operator+=(const rational& o) { return *this = *this + o; }

  bool operator==(const rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const rational& o) const { return !(*this == o); }
  bool operator<(const rational& o) const {
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
  }
  bool operator<=(const rational& o) const { return !(o < *this); }
  bool operator>(const rational& o) const { return o < *this; }
  bool operator>=(const rational& o) const { return !(*this < o); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Parses "n" or "n/d"; also accepts a plain decimal like "7.5".
  static rational parse(const std::string& text);

 private:
  void normalize() {
    if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    const __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("rational: product overflow");
    return static_cast<std::int64_t>(p);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline rational rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("rational: too many decimal digits: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
    std::int64_t num = whole * den + (frac.empty() ? 0 : std::stoll(frac)) * (whole < 0 || text[0] == '-' ? -1 : 1);
    return rational(num, den);
  }
  return rational(std::stoll(text));
}

// Least common multiple of all denominators; throws on overflow.
template <typename Range>
std::int64_t common_denominator(const Range& weights) {
  std::int64_t lcm = 1;
  for (const rational& w : weights) {
    const std::int64_t g = std::gcd(lcm, w.den());
    const __int128 next = static_cast<__int128>(lcm / g) * w.den();
    if (next > INT64_MAX) throw std::overflow_error("rational: denominator lcm overflow");
    lcm = static_cast<std::int64_t>(next);
  }
  return lcm;
}

}  // namespace ck
