#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hq/chern_expr.hpp"
#include "hq/integrals.hpp"
#include "hq/series.hpp"

namespace hq {

/// Bundle id of the integral transform IT(Lambda) in virtual integrands.
inline constexpr const char* kITId = "IT";

/// Truncated polynomial sum c_ab h^a u^b with a <= h_max and b <= u_max: a
/// class on P x X^[k] restricted to one fixed point of X^[k], with the
/// equivariant weights scaled by the grading parameter u.
class AmbientClass {
 public:
  AmbientClass(int h_max, int u_max);
  static AmbientClass constant(int h_max, int u_max, const Rational& value);
  static AmbientClass hyperplane(int h_max, int u_max);

  int h_max() const { return h_max_; }
  int u_max() const { return u_max_; }
  const Rational& at(int a, int b) const { return c_[index(a, b)]; }
  Rational& at(int a, int b) { return c_[index(a, b)]; }

  /// this *= (1 + h + u x)
  void multiply_linear(const Rational& x);
  /// this /= (1 + h + u x)
  void divide_linear(const Rational& x);
  /// Terms with a + b = degree.
  AmbientClass graded_part(int degree) const;
  /// Coefficient of h^a as a series in u.
  USeries h_coefficient(int a) const;

  AmbientClass& operator+=(const AmbientClass& o);
  friend AmbientClass operator+(AmbientClass x, const AmbientClass& y) { return x += y; }
  friend AmbientClass operator*(const AmbientClass& x, const AmbientClass& y);
  friend AmbientClass operator*(AmbientClass x, const Rational& s);

 private:
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a) * (u_max_ + 1) + b; }
  void check_shape(const AmbientClass& o) const;

  int h_max_;
  int u_max_;
  std::vector<Rational> c_;
};

/// How the ambient projective space P = P(Hom(V, O)) is justified.
enum class AmbientMode {
  /// V* must be an honest sum of nef lines, so dim P = chi(V*) - 1.
  honest,
  /// V* may be any split stand-in with chi(V*) >= 1; dim P is taken to be
  /// chi(V*) - 1 from its Chern data.
  virtual_stand_in,
};

/// K-class of IT(Lambda) on P x X^[k]:
/// O^chi(Lambda (x) V) - O(1)^chi(Lambda) + O(1) (x) Lambda^[k].
struct ITClass {
  std::int64_t trivial_rank = 0;
  std::int64_t hyperplane_multiplicity = 0;  // -chi(Lambda)
  SplitBundle taut_part;                     // Lambda, twisted by O(1) and tautologized
  int k = 0;

  std::int64_t virtual_rank() const {
    return trivial_rank + hyperplane_multiplicity + static_cast<std::int64_t>(taut_part.rank()) * k;
  }
};

/// Dimension chi(V*) - 1 of P after checking the mode's requirements.
std::int64_t ambient_dimension(const ToricSurfaceModel& surface, const SplitBundle& v, AmbientMode mode);

ITClass it_class(const ToricSurfaceModel& surface, const SplitBundle& v, const SplitBundle& lambda, int k,
                 AmbientMode mode = AmbientMode::honest, std::uint64_t seed = kDefaultSeed);

struct VirtualOptions {
  ComputeOptions compute;
  AmbientMode mode = AmbientMode::honest;
  /// Highest power of h kept; defaults to dim P and may only be raised.
  std::optional<int> truncation;
};

struct VirtualIntegralResult {
  Rational value;
  std::int64_t ambient_dim = 0;
  std::int64_t virtual_dim = 0;
  std::vector<std::string> notes;
};

/// Integral of P over the virtual class of S_{V,k}, computed on P x X^[k]
/// against the Euler class of O(1) (x) V*^[k]. P is a ChernExpr in c_j(IT)
/// and h; mixed degrees are allowed and only the part of the virtual
/// dimension contributes.
VirtualIntegralResult virtual_integral(const ToricSurfaceModel& surface, const SplitBundle& v,
                                       const SplitBundle& lambda, int k, const ChernExpr& p,
                                       const VirtualOptions& options = {});
/// Summed localization series at one specialization point.
ULaurent virtual_integral_laurent(const ToricSurfaceModel& surface, const SplitBundle& v, const ITClass& it,
                                  const ChernExpr& p, std::int64_t ambient_dim, int h_max, const SpecPoint& z,
                                  int threads = 0);

}  // namespace hq
