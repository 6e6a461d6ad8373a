#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hq {

/// Arbitrary precision integers and rationals. mpq_class keeps values in
/// lowest terms with a positive denominator after every arithmetic
/// operation; values built from a raw numerator/denominator pair must go
/// through make_rational.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p" or "p/q" in decimal.
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

bool is_integer(const Rational& x);

/// A character a*t1 + b*t2 of the two-dimensional torus.
struct Weight {
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr bool is_zero() const { return a == 0 && b == 0; }

  friend constexpr Weight operator+(Weight x, Weight y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr Weight operator-(Weight x, Weight y) { return {x.a - y.a, x.b - y.b}; }
  friend constexpr Weight operator-(Weight x) { return {-x.a, -x.b}; }
  friend constexpr Weight operator*(std::int64_t s, Weight x) { return {s * x.a, s * x.b}; }
  friend constexpr bool operator==(Weight, Weight) = default;
  friend constexpr auto operator<=>(Weight, Weight) = default;
};

std::string to_string(Weight w);
std::ostream& operator<<(std::ostream& os, Weight w);

/// Point at which weights are evaluated: t1 -> z1, t2 -> z2.
using RationalPoint = std::pair<Rational, Rational>;

Rational specialize(Weight w, const RationalPoint& z);

/// Elementary symmetric polynomial e_j of a multiset; e_0 = 1 and e_j = 0
/// for j larger than the multiset.
Rational elementary_symmetric(std::span<const Rational> values, int j);

/// c_0..c_max of the virtual sum of lines with Chern roots plus_roots
/// minus lines with Chern roots minus_roots.
std::vector<Integer> signed_chern_classes(std::span<const Integer> plus_roots,
                                          std::span<const Integer> minus_roots, int max_degree);

/// Binomial coefficient C(n, k) for any integer n and k >= 0 (zero for k < 0).
Integer binomial(const Integer& n, long k);

}  // namespace hq
