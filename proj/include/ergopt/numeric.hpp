#ifndef ERGOPT_NUMERIC_HPP
#define ERGOPT_NUMERIC_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ergopt/rational.hpp"

namespace ergopt {

// Numeric policy used by all algorithm templates. ExactOps is the default
// mode of the tool: every comparison is an exact rational comparison.
struct ExactOps {
  using Num = Rat;
  static constexpr bool exact = true;

  static Num zero() { return Rat(0); }
  static Num from_int(std::int64_t v) { return Rat(v); }
  static Num from_rat(const Rat& r) { return r; }
  static Num parse(std::string_view s) { return Rat::parse(s); }

  static bool eq(const Num& a, const Num& b) { return a == b; }
  static bool lt(const Num& a, const Num& b) { return a < b; }
  static bool le(const Num& a, const Num& b) { return a <= b; }
  // Strict inequality with a required slack; exact mode ignores the margin.
  static bool strictly_below(const Num& a, const Num& b, const Num&) {
    return a < b;
  }

  static Num div_int(const Num& a, std::int64_t k) { return a / Rat(k); }
  static std::int64_t floor_int(const Num& a) {
    std::int64_t q = a.num() / a.den();
    if (a.num() % a.den() != 0 && a.num() < 0) --q;
    return q;
  }
  static std::string str(const Num& a) { return a.str(); }
  static double approx(const Num& a) { return a.to_double(); }
};

// Inexact mode: IEEE doubles with one global comparison tolerance.
struct FloatOps {
  using Num = double;
  static constexpr bool exact = false;
  static constexpr double tolerance = 1e-9;

  static Num zero() { return 0.0; }
  static Num from_int(std::int64_t v) { return static_cast<double>(v); }
  static Num from_rat(const Rat& r) { return r.to_double(); }
  // Accepts "p/q" (configs) as well as decimal literals (round-tripped
  // reports).
  static Num parse(std::string_view s) {
    if (s.find('/') != std::string_view::npos) return Rat::parse(s).to_double();
    std::string tmp(s);
    char* end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size())
      throw Error(ErrorCode::ParseError, "not a number: \"" + tmp + "\"");
    return v;
  }

  static bool eq(Num a, Num b) { return std::fabs(a - b) <= tolerance; }
  static bool lt(Num a, Num b) { return a < b - tolerance; }
  static bool le(Num a, Num b) { return a <= b + tolerance; }
  static bool strictly_below(Num a, Num b, Num margin) {
    return a < b - margin;
  }

  static Num div_int(Num a, std::int64_t k) { return a / static_cast<double>(k); }
  static std::int64_t floor_int(Num a) {
    return static_cast<std::int64_t>(std::floor(a));
  }
  static std::string str(Num a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return std::string(buf);
  }
  static double approx(Num a) { return a; }
};

}  // namespace ergopt

#endif  // ERGOPT_NUMERIC_HPP
