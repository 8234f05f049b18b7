#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qgrass {

// Exact arbitrary-precision integer; every formula value in this library is
// computed with these, never with floating point.
using QInt = boost::multiprecision::cpp_int;

inline QInt qpow(const QInt& base, long exp) {
  QInt r = 1, b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

inline QInt qpow(long base, long exp) { return qpow(QInt(base), exp); }

// Exact nonnegative rational, kept as a numerator/denominator pair so bounds
// like 7/2 and 47/48 compare by cross-multiplication.
struct Ratio {
  QInt num;
  QInt den = 1;

  std::string str() const {
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
};

// <0, 0, >0 like a spaceship; exact.
inline int ratio_cmp(const Ratio& a, const Ratio& b) {
  QInt l = a.num * b.den, r = b.num * a.den;
  if (l < r) return -1;
  if (l > r) return 1;
  return 0;
}

}  // namespace qgrass
