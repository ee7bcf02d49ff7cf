#ifndef ERGOPT_RATIONAL_HPP
#define ERGOPT_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "ergopt/error.hpp"

namespace ergopt {

// Exact rational over int64 numerator/denominator. Always stored reduced
// with positive denominator; intermediate products run in 128 bits and an
// overflow of the reduced result throws NumericOverflow.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by intent
  Rat(std::int64_t n, std::int64_t d);

  static Rat parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
  std::string str() const;

  Rat operator-() const;
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  bool operator==(const Rat& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return !(o < *this); }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return !(*this < o); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  static Rat make_reduced(__int128 n, __int128 d);

  std::int64_t num_;
  std::int64_t den_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace ergopt

#endif  // ERGOPT_RATIONAL_HPP
