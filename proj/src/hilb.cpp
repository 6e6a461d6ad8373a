#include "hq/hilb.hpp"

#include <functional>

#include "hq/error.hpp"

namespace hq {

int Partition::size() const {
  int n = 0;
  for (int p : parts) n += p;
  return n;
}

bool Partition::valid() const {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) return false;
    if (i > 0 && parts[i] > parts[i - 1]) return false;
  }
  return true;
}

Partition Partition::conjugate() const {
  Partition out;
  if (parts.empty()) return out;
  for (int j = 0; j < parts[0]; ++j) {
    int len = 0;
    while (len < static_cast<int>(parts.size()) && parts[len] > j) ++len;
    out.parts.push_back(len);
  }
  return out;
}

std::vector<Partition> Partition::all(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back({cur});
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::string HilbFixedPoint::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < assignment[i].parts.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(assignment[i].parts[j]);
    }
    s += "]";
  }
  return s + "]";
}

FixedPointEnumerator::FixedPointEnumerator(int num_surface_points, int k)
    : n_(num_surface_points), k_(k), sizes_(num_surface_points, 0), index_(num_surface_points, 0) {
  if (k < 0) throw DomainError("negative number of points");
  if (n_ < 1) throw DomainError("surface without fixed points");
  for (int m = 0; m <= k; ++m) by_size_.push_back(Partition::all(m));
  sizes_.back() = k;
}

bool FixedPointEnumerator::advance_sizes() {
  // Next composition of k into n_ parts in lexicographic order; the last
  // entry absorbs the remainder.
  for (int i = n_ - 2; i >= 0; --i) {
    int prefix = 0;
    for (int j = 0; j <= i; ++j) prefix += sizes_[j];
    if (prefix < k_) {
      ++sizes_[i];
      for (int j = i + 1; j < n_ - 1; ++j) sizes_[j] = 0;
      sizes_[n_ - 1] = k_ - prefix - 1;
      return true;
    }
  }
  return false;
}

bool FixedPointEnumerator::next(HilbFixedPoint& out) {
  if (done_) return false;
  if (started_) {
    int i = n_ - 1;
    for (; i >= 0; --i) {
      if (++index_[i] < by_size_[sizes_[i]].size()) break;
      index_[i] = 0;
    }
    if (i < 0) {
      if (!advance_sizes()) {
        done_ = true;
        return false;
      }
      std::fill(index_.begin(), index_.end(), 0);
    }
  }
  started_ = true;
  out.k = k_;
  out.assignment.resize(n_);
  for (int i = 0; i < n_; ++i) out.assignment[i] = by_size_[sizes_[i]][index_[i]];
  return true;
}

std::vector<HilbFixedPoint> enumerate_fixed_points(const ToricSurfaceModel& surface, int k) {
  std::vector<HilbFixedPoint> out;
  FixedPointEnumerator it(surface.num_fixed_points(), k);
  HilbFixedPoint fp;
  while (it.next(fp)) out.push_back(fp);
  return out;
}

namespace {

void check_point(const ToricSurfaceModel& surface, const HilbFixedPoint& fp) {
  if (static_cast<int>(fp.assignment.size()) != surface.num_fixed_points())
    throw DomainError("fixed point has " + std::to_string(fp.assignment.size()) + " partitions; " +
                      surface.name() + " has " + std::to_string(surface.num_fixed_points()) +
                      " fixed points");
}

}  // namespace

std::vector<Weight> tangent_weights(const ToricSurfaceModel& surface, const HilbFixedPoint& fp) {
  check_point(surface, fp);
  std::vector<Weight> out;
  out.reserve(2 * static_cast<std::size_t>(fp.k));
  for (int p = 0; p < surface.num_fixed_points(); ++p) {
    const Partition& lambda = fp.assignment[p];
    if (lambda.empty()) continue;
    if (!lambda.valid()) throw DomainError("malformed partition at fixed point " + std::to_string(p));
    const Partition conj = lambda.conjugate();
    const Weight v1 = surface.fixed_points[p].v1, v2 = surface.fixed_points[p].v2;
    for (int i = 0; i < static_cast<int>(lambda.parts.size()); ++i) {
      for (int j = 0; j < lambda.parts[i]; ++j) {
        const std::int64_t arm = lambda.parts[i] - j - 1;
        const std::int64_t leg = conj.parts[j] - i - 1;
        const Weight first = (leg + 1) * v1 - arm * v2;
        const Weight second = (-leg) * v1 + (arm + 1) * v2;
        if (first.is_zero() || second.is_zero()) throw ZeroWeightError("zero tangent weight");
        out.push_back(first);
        out.push_back(second);
      }
    }
  }
  return out;
}

std::vector<SignedWeight> taut_weights(const ToricSurfaceModel& surface, const HilbFixedPoint& fp,
                                       const SplitBundle& b) {
  check_point(surface, fp);
  if (!(b.surface == surface.id)) throw DomainError("bundle lives on a different surface");
  std::vector<SignedWeight> out;
  for (int p = 0; p < surface.num_fixed_points(); ++p) {
    const Partition& lambda = fp.assignment[p];
    const Weight v1 = surface.fixed_points[p].v1, v2 = surface.fixed_points[p].v2;
    for (int i = 0; i < static_cast<int>(lambda.parts.size()); ++i) {
      for (int j = 0; j < lambda.parts[i]; ++j) {
        const Weight offset = static_cast<std::int64_t>(i) * v1 + static_cast<std::int64_t>(j) * v2;
        for (const auto& l : b.plus) out.push_back({l.weights[p] + offset, 1});
        for (const auto& l : b.minus) out.push_back({l.weights[p] + offset, -1});
      }
    }
  }
  return out;
}

Weight theta_weight(const ToricSurfaceModel& surface, const HilbFixedPoint& fp, const SplitBundle& e) {
  Weight total;
  for (const auto& sw : taut_weights(surface, fp, e)) total = sw.sign > 0 ? total + sw.w : total - sw.w;
  return total;
}

}  // namespace hq
