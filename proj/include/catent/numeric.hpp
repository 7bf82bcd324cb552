#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace catent {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class errc {
  input,         // malformed or out-of-domain input
  generator,     // generator validation (inadmissible auto, non-isometry, ...)
  precondition,  // operation precondition not met
  internal       // invariant that theory guarantees failed to hold
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw error(errc::precondition, "isqrt: negative argument");
  if (n == 0) return 0;
  Int x = Int(1) << ((msb(n) / 2) + 1);
  for (;;) {
    Int y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

inline bool is_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  Int r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

// Natural log of a positive big integer, safe for values far beyond double range.
inline double log_big(const Int& x) {
  if (x <= 0) throw error(errc::precondition, "log_big: argument must be positive");
  const unsigned bits = msb(x);
  if (bits <= 900) return std::log(x.convert_to<double>());
  Int top = x >> (bits - 64);
  return std::log(top.convert_to<double>()) + static_cast<double>(bits - 64) * std::log(2.0);
}

inline double rat_to_double(const Rat& q) {
  return q.convert_to<double>();
}

// Canonical "p/q" (or plain "p") rendering of a reduced rational.
inline std::string rat_to_string(const Rat& q) {
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Parses "p", "p/q" or "-p/q"; rejects anything else.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw error(errc::input, "empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw error(errc::input, "rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw error(errc::input, "bad rational literal: " + s);
  }
}

}  // namespace catent
