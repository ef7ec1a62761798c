#pragma once

#include <cstdint>
#include <string>

#include "sizephase/errors.hpp"

namespace sizephase {

// Exact dyadic rational num / 2^k. All tile weights and scores are dyadic;
// score comparisons never touch floating point.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  constexpr Dyadic(long long n) : num_(n), exp2_(0) {}

  // den must be a positive power of two.
  static Dyadic ratio(long long num, long long den);

  // Accepts "p" or "p/q" with q a power of two.
  static Dyadic parse(const std::string& s);

  long long numerator() const { return num_; }
  int log2_den() const { return exp2_; }
  long long denominator() const { return 1LL << exp2_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp2_ == 0; }

  Dyadic operator-() const { return make(-num_, exp2_); }
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic operator*(long long k) const { return make(num_ * k, exp2_); }

  int compare(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp2_ == o.exp2_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const { return compare(o) < 0; }
  bool operator<=(const Dyadic& o) const { return compare(o) <= 0; }
  bool operator>(const Dyadic& o) const { return compare(o) > 0; }
  bool operator>=(const Dyadic& o) const { return compare(o) >= 0; }

  double to_double() const;

  // "3/2", "-1", "1/2"; integers render without a denominator.
  std::string str() const;

 private:
  static Dyadic make(long long num, int exp2);
  void normalize();

  long long num_ = 0;
  int exp2_ = 0;
};

}  // namespace sizephase
