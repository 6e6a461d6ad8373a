#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hq/cache.hpp"
#include "hq/chern_expr.hpp"
#include "hq/series.hpp"
#include "hq/specialization.hpp"
#include "hq/toric.hpp"

namespace hq {

/// Bundle id reserved for the tangent bundle of X^[k] in integrands.
inline constexpr const char* kTangentId = "T";

struct ComputeOptions {
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  /// Consulted before and filled after the expensive computations.
  const ResultCache* cache = nullptr;
};

/// Integral over X^[k] of a polynomial in Chern classes. A declared bundle B
/// stands for its tautological bundle B^[k]; the id "T" is the tangent
/// bundle.
struct IntegralRequest {
  SurfaceId surface;
  int k = 0;
  std::map<std::string, SplitBundle> bundles;
  ChernExpr expr;
};

Rational integrate(const IntegralRequest& req, const ComputeOptions& options = {});
/// One localization sum at a fixed specialization point.
Rational integrate_at(const IntegralRequest& req, const SpecPoint& z, int threads = 0);

/// Integral of c_2k(V*^[k]); an integer whenever V is honest.
Rational quot_count(const ToricSurfaceModel& surface, const SplitBundle& v, int k,
                    const ComputeOptions& options = {});

/// chi(V*) - 1 - (rank V - 2) k.
std::int64_t expected_dim_pairs(const ToricSurfaceModel& surface, const ChernData& v, int k);
std::int64_t expected_dim_pairs(const ToricSurfaceModel& surface, const SplitBundle& v, int k);

/// c2(V*) making the expected dimension zero on P2 for c1(V*) = d H:
/// C(d+2, 2) - (k-1)(r-2).
std::int64_t c2_for_expected_dim_zero(int r, int d, int k);
/// The same condition on any supported surface: chi(O(D)) - (k-1)(r-2).
std::int64_t c2_for_expected_dim_zero(const ToricSurfaceModel& surface, int r, const DivisorClass& d, int k);

struct ConstructionReport {
  bool ok = true;
  std::int64_t lower = 0;  // C(d+1, 2)
  std::int64_t upper = 0;  // C(d+2, 2) - 3 + eps
  int epsilon = 0;         // 1 for d = 1, 2
  std::vector<std::string> violations;
};

/// Parameter bounds for the construction on P2: r >= 2, d >= 1 and
/// C(d+1, 2) <= w <= C(d+2, 2) - 3 + eps.
ConstructionReport validate_construction(int r, int d, std::int64_t w);

struct ChiThetaResult {
  Integer value;
  std::int64_t chi_pair = 0;
  std::vector<std::string> warnings;
};

/// chi(X^[k], Theta_e) by equivariant Hirzebruch-Riemann-Roch. Warns when
/// chi(e . f) != 0, where Theta_e is not canonical.
ChiThetaResult chi_theta(const ToricSurfaceModel& surface, const SplitBundle& e, int k,
                         const ComputeOptions& options = {});
/// Summed Laurent series of the localization at one point, before the pole
/// and integrality checks.
ULaurent chi_theta_laurent(const ToricSurfaceModel& surface, const SplitBundle& e, int k, const SpecPoint& z,
                           int threads = 0);

struct ConjectureRow {
  int k = 0;
  bool skipped = false;
  std::string note;
  ChernData vstar;
  ChernData e;
  std::int64_t chi_pair = 0;
  std::optional<SplitBundle> vstar_model;
  std::optional<SplitBundle> e_model;
  std::optional<Integer> quot;
  std::optional<Integer> chi;
  bool equal = false;
};

struct ConjectureReport {
  SurfaceId surface;
  int r = 0;
  DivisorClass d;
  std::vector<ConjectureRow> rows;
  std::vector<std::string> hypotheses;

  bool all_equal() const;
};

struct ConjectureOptions {
  ComputeOptions compute;
  RealizeOptions realize;
};

/// One row: V* of rank r with c1 = d and c2 chosen for expected dimension
/// zero, e from V, split stand-ins for both, then quot_count against
/// chi_theta. Realization failures are reported in the row.
ConjectureRow verify_conjecture_at(const ToricSurfaceModel& surface, int r, const DivisorClass& d, int k,
                                   const ConjectureOptions& options = {});
/// Rows for k = 1..k_max.
ConjectureReport verify_conjecture(const ToricSurfaceModel& surface, int r, const DivisorClass& d, int k_max,
                                   const ConjectureOptions& options = {});

}  // namespace hq
