#include "sizephase/dyadic.hpp"

#include <cmath>
#include <cstdlib>

namespace sizephase {

Dyadic Dyadic::make(long long num, int exp2) {
  Dyadic d;
  d.num_ = num;
  d.exp2_ = exp2;
  d.normalize();
  return d;
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp2_ = 0;
    return;
  }
  while (exp2_ > 0 && (num_ & 1) == 0) {
    num_ >>= 1;
    --exp2_;
  }
}

Dyadic Dyadic::ratio(long long num, long long den) {
  if (den <= 0 || (den & (den - 1)) != 0)
    throw FormatError("dyadic denominator must be a positive power of two: " + std::to_string(den));
  int k = 0;
  while ((1LL << k) < den) ++k;
  return make(num, k);
}

Dyadic Dyadic::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Dyadic(std::stoll(s));
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    return ratio(num, den);
  } catch (const std::invalid_argument&) {
    throw FormatError("bad rational literal: " + s);
  } catch (const std::out_of_range&) {
    throw FormatError("rational literal out of range: " + s);
  }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  int k = exp2_ > o.exp2_ ? exp2_ : o.exp2_;
  long long a = num_ << (k - exp2_);
  long long b = o.num_ << (k - o.exp2_);
  return make(a + b, k);
}

int Dyadic::compare(const Dyadic& o) const {
  int k = exp2_ > o.exp2_ ? exp2_ : o.exp2_;
  long long a = num_ << (k - exp2_);
  long long b = o.num_ << (k - o.exp2_);
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -exp2_); }

std::string Dyadic::str() const {
  if (exp2_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(1LL << exp2_);
}

}  // namespace sizephase
