#pragma once

#include <cmath>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "sizephase/errors.hpp"

namespace sizephase {

using BigInt = boost::multiprecision::cpp_int;

// floor(s / sqrt(2)) in exact integer arithmetic: isqrt(floor(s^2 / 2)).
inline BigInt floor_div_sqrt2(const BigInt& s) {
  if (s < 0) throw Error("floor_div_sqrt2 requires a nonnegative argument");
  BigInt t = (s * s) >> 1;
  return boost::multiprecision::sqrt(t);
}

inline BigInt pow10(unsigned long e) {
  return boost::multiprecision::pow(BigInt(10), e);
}

// Mantissa-exponent descriptor for quantities like 7.4e36534 that are far too
// large for direct numerics. Mantissa is kept in [1, 10).
struct ScaledDecimal {
  double mantissa = 0.0;
  long long exponent10 = 0;

  static ScaledDecimal make(double m, long long e) {
    ScaledDecimal s{m, e};
    s.normalize();
    return s;
  }

  void normalize() {
    if (mantissa == 0.0) {
      exponent10 = 0;
      return;
    }
    while (std::fabs(mantissa) >= 10.0) {
      mantissa /= 10.0;
      ++exponent10;
    }
    while (std::fabs(mantissa) < 1.0) {
      mantissa *= 10.0;
      --exponent10;
    }
  }

  ScaledDecimal div_sqrt2() const { return make(mantissa / std::sqrt(2.0), exponent10); }

  long double ln() const {
    return std::log(static_cast<long double>(mantissa)) +
           static_cast<long double>(exponent10) * std::log(10.0L);
  }

  // "5.2e36534"
  std::string str() const {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10ge%lld", mantissa, exponent10);
    return buf;
  }
};

inline ScaledDecimal to_scaled(const BigInt& n) {
  if (n == 0) return ScaledDecimal{0.0, 0};
  std::string digits = n.str();
  bool neg = digits[0] == '-';
  if (neg) digits.erase(0, 1);
  std::string head = digits.substr(0, 15);
  double m = std::stod(head) / std::pow(10.0, static_cast<double>(head.size() - 1));
  return ScaledDecimal::make(neg ? -m : m, static_cast<long long>(digits.size()) - 1);
}

inline long double ln_big(const BigInt& n) {
  if (n <= 0) throw Error("ln_big requires a positive argument");
  return to_scaled(n).ln();
}

// Round to two significant figures, e.g. 33234018 -> "3.3e7".
inline std::string two_sig_figs(const ScaledDecimal& s) {
  double m = s.mantissa;
  long long e = s.exponent10;
  double r = std::round(m * 10.0) / 10.0;
  if (std::fabs(r) >= 10.0) {
    r /= 10.0;
    ++e;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.1fe%lld", r, e);
  return buf;
}

inline std::string two_sig_figs(const BigInt& n) { return two_sig_figs(to_scaled(n)); }

}  // namespace sizephase
