#include "ergopt/rational.hpp"

#include <cctype>
#include <limits>

namespace ergopt {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::NumericOverflow, "rational exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rat Rat::make_reduced(i128 n, i128 d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    Rat r;
    return r;
  }
  u128 g = gcd128(uabs128(n), static_cast<u128>(d));
  n /= static_cast<i128>(g);
  d /= static_cast<i128>(g);
  Rat r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

Rat::Rat(std::int64_t n, std::int64_t d) {
  *this = make_reduced(n, d);
}

Rat Rat::operator-() const { return make_reduced(-static_cast<i128>(num_), den_); }

Rat Rat::operator+(const Rat& o) const {
  i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
  i128 d = static_cast<i128>(den_) * o.den_;
  return make_reduced(n, d);
}

Rat Rat::operator-(const Rat& o) const {
  i128 n = static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_;
  i128 d = static_cast<i128>(den_) * o.den_;
  return make_reduced(n, d);
}

Rat Rat::operator*(const Rat& o) const {
  i128 n = static_cast<i128>(num_) * o.num_;
  i128 d = static_cast<i128>(den_) * o.den_;
  return make_reduced(n, d);
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num_ == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  i128 n = static_cast<i128>(num_) * o.den_;
  i128 d = static_cast<i128>(den_) * o.num_;
  return make_reduced(n, d);
}

bool Rat::operator<(const Rat& o) const {
  return static_cast<i128>(num_) * o.den_ < static_cast<i128>(o.num_) * den_;
}

std::string Rat::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) {
    s += '/';
    s += std::to_string(den_);
  }
  return s;
}

Rat Rat::parse(std::string_view text) {
  auto fail = [&]() -> Rat {
    throw Error(ErrorCode::ParseError,
                "not a rational: \"" + std::string(text) + "\"");
  };
  std::size_t slash = text.find('/');
  auto parse_int = [&](std::string_view part) -> std::int64_t {
    if (part.empty()) fail();
    std::size_t i = 0;
    bool neg = false;
    if (part[0] == '-' || part[0] == '+') {
      neg = part[0] == '-';
      i = 1;
    }
    if (i == part.size()) fail();
    i128 v = 0;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) fail();
      v = v * 10 + (part[i] - '0');
      if (v > static_cast<i128>(std::numeric_limits<std::int64_t>::max()) + 1) {
        throw Error(ErrorCode::NumericOverflow, "integer literal too large");
      }
    }
    if (neg) v = -v;
    return narrow(v);
  };
  if (slash == std::string_view::npos) {
    return Rat(parse_int(text));
  }
  std::int64_t n = parse_int(text.substr(0, slash));
  std::int64_t d = parse_int(text.substr(slash + 1));
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  return Rat(n, d);
}

}  // namespace ergopt
