#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hq/chern_expr.hpp"
#include "hq/tautological.hpp"

namespace hq {

/// Integrand family for universal_poly: Q * h^(vd - deg Q) with vd the
/// virtual dimension. The quot-count shape has Q = 1, which on
/// configurations of virtual dimension zero is the Quot-scheme count.
struct UniversalShape {
  std::string id;
  ChernExpr q;

  static UniversalShape quot_count();
  /// Q given as an expression in c_j(IT) and h; must be homogeneous.
  static UniversalShape expression(const ChernExpr& q);
};

/// Intersection-number symbols the polynomial is expressed in. c2(X) is not
/// a separate symbol: every supported surface satisfies c2(X) = 12 - c1(X)^2.
inline constexpr int kNumSymbols = 8;
extern const std::array<const char*, kNumSymbols> kSymbolNames;

using IntersectionNumbers = std::array<std::int64_t, kNumSymbols>;

/// One data point: V given through the lines of V*, Lambda through plus and
/// minus lines.
struct UniversalConfig {
  SurfaceId surface;
  std::vector<DivisorClass> vstar;
  std::vector<DivisorClass> lambda_plus;
  std::vector<DivisorClass> lambda_minus;

  SplitBundle v(const ToricSurfaceModel& s) const;
  SplitBundle lambda(const ToricSurfaceModel& s) const;
};

nlohmann::json to_json(const UniversalConfig& config);

/// c1(X)^2, c1(X)c1(V), c1(V)^2, c2(V), c1(X)c1(L), c1(L)^2, c2(L), c1(V)c1(L)
/// with L = Lambda.
IntersectionNumbers intersection_numbers(const UniversalConfig& config);

/// Direct value of the shape's integral on one configuration.
Rational universal_direct_value(const UniversalShape& shape, const UniversalConfig& config, int k,
                                const ComputeOptions& options = {});

struct HeldOutCheck {
  UniversalConfig config;
  Rational direct;
  Rational predicted;
};

struct UniversalPolynomial {
  std::string shape_id;
  int k = 0;
  int rank_v = 0;
  int rank_lambda = 0;
  int max_degree = 0;
  /// Exponent vectors over kSymbolNames.
  std::vector<std::array<int, kNumSymbols>> basis;
  std::vector<Rational> coefficients;
  std::vector<UniversalConfig> training;
  std::vector<Rational> training_values;
  std::vector<HeldOutCheck> held_out;

  Rational evaluate(const IntersectionNumbers& x) const;
  std::vector<std::string> basis_strings() const;
  /// Nonzero terms, e.g. "c2(V)".
  std::string to_string() const;
};

nlohmann::json to_json(const UniversalPolynomial& poly);

struct UniversalOptions {
  ComputeOptions compute;
  /// Degree bound in the symbols; defaults to k.
  std::optional<int> max_degree;
  int held_out = 5;
  int pool_size = 400;
};

/// Fits the polynomial by exact interpolation over sampled configurations on
/// P2, P1xP1 and Hirzebruch(1), then checks it on held-out configurations
/// (at least one Hirzebruch). Throws DomainError naming the undetermined
/// directions when the samples do not pin the coefficients down, and
/// InconsistencyError on a held-out mismatch.
UniversalPolynomial universal_poly(const UniversalShape& shape, int k, int rank_v, int rank_lambda,
                                   const UniversalOptions& options = {});

}  // namespace hq
