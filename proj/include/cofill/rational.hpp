#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace cofill {

// Exact rationals everywhere; mpq_class keeps values canonical.
using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input
// or zero denominator.
Rational parse_rational(std::string_view text);

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

mpz_class floor_of(const Rational& q);
mpz_class ceil_of(const Rational& q);

// A nonnegative rational or +infinity; used for bound functions.
struct Bound {
  std::optional<Rational> value;  // empty = +inf

  static Bound infinite() { return Bound{}; }
  static Bound finite(Rational v) { return Bound{std::move(v)}; }
  bool is_infinite() const { return !value.has_value(); }
};

std::string to_string(const Bound& b);
Bound parse_bound(std::string_view text);

}  // namespace cofill
