#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "ctinv/errors.hpp"

namespace ctinv {

// Exact rational arithmetic on 64-bit numerator/denominator (128-bit
// intermediates). Plenty for growth polynomials of desk-size CTs.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw error(errc::internal, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  static Rational make128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rational r;
    r.num = (long long)n;
    r.den = (long long)d;
    if ((__int128)r.num != n || (__int128)r.den != d)
      throw error(errc::internal, "rational overflow");
    return r;
  }

  Rational operator+(const Rational& o) const {
    return make128((__int128)num * o.den + (__int128)o.num * den,
                   (__int128)den * o.den);
  }
  Rational operator-(const Rational& o) const {
    return make128((__int128)num * o.den - (__int128)o.num * den,
                   (__int128)den * o.den);
  }
  Rational operator*(const Rational& o) const {
    return make128((__int128)num * o.num, (__int128)den * o.den);
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw error(errc::internal, "rational division by zero");
    return make128((__int128)num * o.den, (__int128)den * o.num);
  }
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  bool is_zero() const { return num == 0; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace ctinv
