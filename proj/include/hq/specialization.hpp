#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "hq/symbolic.hpp"

namespace hq {

inline constexpr std::uint64_t kDefaultSeed = 20190611;
inline constexpr int kMaxSpecializationRetries = 8;

/// An integral evaluation point (t1, t2) -> (p, q) with p, q distinct primes.
struct SpecPoint {
  std::int64_t p = 0;
  std::int64_t q = 0;

  std::int64_t eval(Weight w) const { return w.a * p + w.b * q; }
  RationalPoint as_rational() const { return {Rational(p), Rational(q)}; }
  friend bool operator==(SpecPoint, SpecPoint) = default;
};

/// Deterministic source of specialization points. Points are pairs of
/// distinct primes between 101 and 997, so a weight with coefficients
/// smaller than 101 in absolute value never specializes to zero unless it
/// is zero.
class Specializer {
 public:
  explicit Specializer(std::uint64_t seed = kDefaultSeed);

  SpecPoint next();

 private:
  std::mt19937_64 rng_;
};

}  // namespace hq
