#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hq/symbolic.hpp"
#include "hq/toric.hpp"

namespace hq {

/// Young diagram stored as weakly decreasing row lengths. Row i runs along
/// v2 and rows are stacked along v1, so cell (i, j) with j < parts[i] is the
/// monomial x^i y^j of the local chart.
struct Partition {
  std::vector<int> parts;

  int size() const;
  bool empty() const { return parts.empty(); }
  Partition conjugate() const;
  bool valid() const;
  /// Partitions of n, largest first part first, then reverse lexicographic.
  static std::vector<Partition> all(int n);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// Torus-fixed point of X^[k]: one (possibly empty) partition per fixed point
/// of the surface.
struct HilbFixedPoint {
  std::vector<Partition> assignment;
  int k = 0;

  std::string to_string() const;
  friend bool operator==(const HilbFixedPoint&, const HilbFixedPoint&) = default;
};

/// Streams the fixed points of X^[k] in canonical order: the size vector runs
/// through compositions of k in lexicographic order, and for each size vector
/// the partitions at each surface point vary with the last point fastest.
class FixedPointEnumerator {
 public:
  FixedPointEnumerator(int num_surface_points, int k);

  /// Writes the next fixed point into out; false once exhausted.
  bool next(HilbFixedPoint& out);

 private:
  bool advance_sizes();

  int n_;
  int k_;
  std::vector<std::vector<Partition>> by_size_;
  std::vector<int> sizes_;
  std::vector<std::size_t> index_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<HilbFixedPoint> enumerate_fixed_points(const ToricSurfaceModel& surface, int k);

/// Tangent weights of X^[k] at a fixed point: for each cell with arm a and
/// leg l at a surface point with weights (v1, v2), the pair
/// (l+1) v1 - a v2 and -l v1 + (a+1) v2.
std::vector<Weight> tangent_weights(const ToricSurfaceModel& surface, const HilbFixedPoint& fp);

struct SignedWeight {
  Weight w;
  int sign = 1;
  friend bool operator==(SignedWeight, SignedWeight) = default;
  friend auto operator<=>(SignedWeight, SignedWeight) = default;
};

/// Characters of the fibre H^0(B (x) O_Z) of the tautological bundle B^[k]:
/// w(p) + i v1 + j v2 for each cell (i, j) and each line of B, signed by
/// plus/minus.
std::vector<SignedWeight> taut_weights(const ToricSurfaceModel& surface, const HilbFixedPoint& fp,
                                       const SplitBundle& b);

/// Character of det(e^[k]) at the fixed point, the chosen lift of Theta_e.
Weight theta_weight(const ToricSurfaceModel& surface, const HilbFixedPoint& fp, const SplitBundle& e);

}  // namespace hq
