#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hq/specialization.hpp"
#include "hq/symbolic.hpp"

namespace hq {

enum class SurfaceKind { P2, P1xP1, Hirzebruch };

/// Identifies a supported toric surface: P2, P1xP1 or the Hirzebruch
/// surface F_a (a >= 0).
struct SurfaceId {
  SurfaceKind kind = SurfaceKind::P2;
  int a = 0;

  std::string name() const;
  /// Accepts "P2", "P1xP1", "Hirzebruch(a)" and "Fa".
  static SurfaceId parse(std::string_view text);
  friend bool operator==(const SurfaceId&, const SurfaceId&) = default;
};

/// Coordinates of a divisor class in the surface's Picard basis.
using DivisorClass = std::vector<std::int64_t>;

struct SurfaceFixedPoint {
  int ray_first = 0;   // v1 is dual to this ray inside the cone
  int ray_second = 0;  // v2 is dual to this ray
  Weight v1;
  Weight v2;
};

/// Torus-invariant curve D_ray joining fixed points p and q; w is its tangent
/// weight at p (and -w its tangent weight at q).
struct SurfaceEdge {
  int p = 0;
  int q = 0;
  Weight w;
  int ray = 0;
};

/// Fan data of a smooth projective toric surface. Tangent weights and line
/// bundle weights are characters of coordinate functions and of local
/// generating sections; under this convention the Chern root of a line
/// bundle at a fixed point is minus its weight while the tangent Chern roots
/// are v1 and v2.
class ToricSurfaceModel {
 public:
  SurfaceId id;
  std::vector<std::array<std::int64_t, 2>> rays;
  std::vector<SurfaceFixedPoint> fixed_points;
  std::vector<SurfaceEdge> edges;
  /// Picard basis element i expressed as coefficients on the ray divisors.
  std::vector<std::vector<std::int64_t>> pic_basis;
  /// Intersection form on the Picard basis.
  std::vector<std::vector<std::int64_t>> intersection_form;
  DivisorClass canonical_class;
  std::int64_t k_squared = 0;
  std::int64_t chi_top = 0;

  std::string name() const { return id.name(); }
  int pic_rank() const { return static_cast<int>(pic_basis.size()); }
  int num_fixed_points() const { return static_cast<int>(fixed_points.size()); }

  std::int64_t intersect(const DivisorClass& x, const DivisorClass& y) const;
  /// chi(O(D)) by Riemann-Roch; every supported surface has chi(O_X) = 1.
  std::int64_t chi_line(const DivisorClass& d) const;
  bool is_nef(const DivisorClass& d) const;
  void check_class(const DivisorClass& d) const;
  /// Ray divisor D_ray as a class in the Picard basis.
  DivisorClass ray_class(int ray) const;
};

ToricSurfaceModel make_surface(const SurfaceId& id);
ToricSurfaceModel make_surface(std::string_view name);

struct EquivariantLineBundle {
  SurfaceId surface;
  std::vector<Weight> weights;  // one per fixed point
  std::optional<DivisorClass> degrees;

  EquivariantLineBundle shifted(Weight w) const;
  EquivariantLineBundle dual() const;
  friend bool operator==(const EquivariantLineBundle&, const EquivariantLineBundle&) = default;
};

EquivariantLineBundle tensor(const EquivariantLineBundle& x, const EquivariantLineBundle& y);

/// Canonical linearization of O(D): weight zero at the first fixed point.
/// On P2, O(d) has weights (0, d t1, d t2).
EquivariantLineBundle line_bundle(const ToricSurfaceModel& surface, const DivisorClass& degrees);

struct CompatibilityViolation {
  int edge = 0;
  int p = 0;
  int q = 0;
  Weight difference;
  Weight edge_weight;
  std::string message;
};

/// Checks that along every invariant curve the fibre weights differ by an
/// integer multiple of the curve's weight.
std::optional<CompatibilityViolation> validate_compatibility(const ToricSurfaceModel& surface,
                                                             const EquivariantLineBundle& bundle);

/// Virtual equivariant bundle sum(plus) - sum(minus) of line bundles.
struct SplitBundle {
  SurfaceId surface;
  std::vector<EquivariantLineBundle> plus;
  std::vector<EquivariantLineBundle> minus;

  int rank() const { return static_cast<int>(plus.size()) - static_cast<int>(minus.size()); }
  bool honest() const { return minus.empty(); }
  bool has_degrees() const;
  SplitBundle dual() const;
  SplitBundle shifted(Weight w) const;
  friend bool operator==(const SplitBundle&, const SplitBundle&) = default;
};

SplitBundle empty_bundle(const ToricSurfaceModel& surface);
SplitBundle split_bundle(const ToricSurfaceModel& surface, const std::vector<DivisorClass>& plus,
                         const std::vector<DivisorClass>& minus = {});
SplitBundle direct_sum(const SplitBundle& x, const SplitBundle& y);
SplitBundle tensor(const SplitBundle& x, const SplitBundle& y);

/// Rank, first Chern class and c2 of a sheaf on the surface.
struct ChernData {
  int rank = 0;
  DivisorClass c1;
  std::int64_t c2 = 0;
  friend bool operator==(const ChernData&, const ChernData&) = default;
};

/// Chern data of a split bundle by Whitney expansion of plus over minus.
ChernData chern_data(const ToricSurfaceModel& surface, const SplitBundle& b);
ChernData dual(const ChernData& c);

/// Euler characteristic by equivariant Hirzebruch-Riemann-Roch localization
/// on the surface. Chern roots at a fixed point are the negated line weights.
Integer chi_surface(const ToricSurfaceModel& surface, const SplitBundle& b,
                    std::uint64_t seed = kDefaultSeed);

/// chi(E) from Chern data by Riemann-Roch.
std::int64_t chi_from_chern(const ToricSurfaceModel& surface, const ChernData& e);

/// chi(e . f) for f the class of an ideal sheaf of k points.
std::int64_t chi_pair(const ToricSurfaceModel& surface, const ChernData& e, int k);

struct RealizeOptions {
  /// Line degrees are searched in [-box, box] per coordinate; 0 picks 12 for
  /// Picard rank one and 4 otherwise.
  int box = 0;
  int max_minus = 2;
};

/// Deterministic split stand-in with prescribed rank, c1 and c2. Solutions
/// with fewer minus-lines come first; within a count the plus-degrees and
/// then the minus-degrees are compared lexicographically.
SplitBundle realize_split_model(const ToricSurfaceModel& surface, const ChernData& target,
                                const RealizeOptions& options = {});

/// Chern data of the dual E of the kernel of V -> I_Z for Z of length k:
/// ch(E) = (r - 1, -c1(V), ch2(V) + k).
ChernData e_from_V(const ToricSurfaceModel& surface, const ChernData& v, int k);

/// Surface localization of c1(X)^2 = sum (v1 + v2)^2 / (v1 v2).
Rational localized_k_squared(const ToricSurfaceModel& surface, const SpecPoint& z);
/// Surface localization of c2 of a split bundle (Chern roots at each point).
Rational localized_c2(const ToricSurfaceModel& surface, const SplitBundle& b, const SpecPoint& z);

}  // namespace hq
