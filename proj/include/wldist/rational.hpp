#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wldist {

// Exact rational on 64-bit numerator/denominator, always normalized
// (den > 0, gcd(|num|, den) = 1). Intermediate products go through
// __int128, so values arising from measure masses and level distances
// (denominators bounded by n*m and small level counts) never overflow.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    num = g ? n / g : n;
    den = g ? d / g : d;
  }
  static Rational from_int(long long n) { return Rational(n, 1); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  bool is_zero() const { return num == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    const __int128 d = static_cast<__int128>(a.den) * b.den;
    return reduce128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
    const __int128 d = static_cast<__int128>(a.den) * b.den;
    return reduce128(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce128(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("Rational: division by zero");
    return reduce128(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static Rational reduce128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || -n > kMax || d > kMax) throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num = static_cast<long long>(n);
    r.den = static_cast<long long>(d);
    return r;
  }
};

}  // namespace wldist
