#include "hq/localization.hpp"

namespace hq {

int default_thread_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

Integer tangent_euler(const std::vector<Weight>& tangent, const SpecPoint& z) {
  Integer product = 1;
  for (const Weight& w : tangent) {
    const std::int64_t x = z.eval(w);
    if (x == 0) throw ZeroWeightError("tangent weight " + to_string(w) + " specializes to zero");
    product *= x;
  }
  return product;
}

}  // namespace hq
