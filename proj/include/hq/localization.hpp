#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "hq/error.hpp"
#include "hq/hilb.hpp"
#include "hq/specialization.hpp"

namespace hq {

/// Worker count used when a caller passes 0.
int default_thread_count();

/// Sums contribution(fp) over the fixed points of X^[k]. Points are streamed
/// in canonical order in batches; each batch is split into contiguous slices,
/// one per worker, and the partial sums are added in slice order so the
/// result does not depend on the thread count.
template <class T, class Contribution>
T sum_over_fixed_points(const ToricSurfaceModel& surface, int k, Contribution&& contribution, T zero,
                        int threads = 0) {
  if (threads <= 0) threads = default_thread_count();
  constexpr std::size_t kBatch = 1024;
  FixedPointEnumerator points(surface.num_fixed_points(), k);
  T total = zero;
  std::vector<HilbFixedPoint> batch;
  batch.reserve(kBatch);
  bool more = true;
  while (more) {
    batch.clear();
    HilbFixedPoint fp;
    while (batch.size() < kBatch && (more = points.next(fp))) batch.push_back(fp);
    if (batch.empty()) break;

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), batch.size());
    if (workers <= 1) {
      for (const auto& p : batch) total += contribution(p);
      continue;
    }
    std::vector<T> partial(workers, zero);
    std::vector<std::exception_ptr> failure(workers);
    std::vector<std::thread> pool;
    const std::size_t slice = (batch.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t end = std::min(batch.size(), (w + 1) * slice);
          for (std::size_t i = w * slice; i < end; ++i) partial[w] += contribution(batch[i]);
        } catch (...) {
          failure[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& f : failure)
      if (f) std::rethrow_exception(f);
    for (auto& s : partial) total += s;
  }
  return total;
}

/// Runs compute at two independent specialization points and returns the
/// common value. A ZeroWeightError from compute discards that point and
/// draws the next one, up to kMaxSpecializationRetries extra draws.
template <class Compute>
Rational with_two_specializations(std::uint64_t seed, const std::string& what, Compute&& compute) {
  Specializer specializer(seed);
  std::vector<Rational> values;
  std::vector<SpecPoint> used;
  int failures = 0;
  while (values.size() < 2) {
    const SpecPoint z = specializer.next();
    if (std::find(used.begin(), used.end(), z) != used.end()) continue;
    used.push_back(z);
    try {
      values.push_back(compute(z));
    } catch (const ZeroWeightError&) {
      if (++failures > kMaxSpecializationRetries)
        throw SpecializationError(what + ": every specialization hit a pole");
    }
  }
  if (values[0] != values[1])
    throw InconsistencyError(what + ": specializations disagree (" + to_string(values[0]) + " vs " +
                             to_string(values[1]) + ")");
  return values[0];
}

/// Product of specialized tangent weights; throws ZeroWeightError on a zero.
Integer tangent_euler(const std::vector<Weight>& tangent, const SpecPoint& z);

}  // namespace hq
