#include "hq/specialization.hpp"

#include <vector>

namespace hq {

namespace {

const std::vector<std::int64_t>& prime_table() {
  static const std::vector<std::int64_t> primes = [] {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 101; n < 1000; ++n) {
      bool prime = true;
      for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
          prime = false;
          break;
        }
      }
      if (prime) out.push_back(n);
    }
    return out;
  }();
  return primes;
}

}  // namespace

Specializer::Specializer(std::uint64_t seed) : rng_(seed) {}

SpecPoint Specializer::next() {
  const auto& primes = prime_table();
  // Modulo reduction keeps draws identical across standard libraries.
  auto pick = [&] { return static_cast<std::size_t>(rng_() % primes.size()); };
  const std::size_t i = pick();
  std::size_t j = pick();
  while (j == i) j = pick();
  return {primes[i], primes[j]};
}

}  // namespace hq
