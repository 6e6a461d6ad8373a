#include "hq/tautological.hpp"

#include <map>

#include "hq/error.hpp"
#include "hq/hilb.hpp"
#include "hq/localization.hpp"
#include "hq/serialize.hpp"

namespace hq {

AmbientClass::AmbientClass(int h_max, int u_max)
    : h_max_(h_max), u_max_(u_max), c_(static_cast<std::size_t>(h_max + 1) * (u_max + 1), Rational(0)) {
  if (h_max < 0 || u_max < 0) throw DomainError("negative truncation");
}

AmbientClass AmbientClass::constant(int h_max, int u_max, const Rational& value) {
  AmbientClass out(h_max, u_max);
  out.at(0, 0) = value;
  return out;
}

AmbientClass AmbientClass::hyperplane(int h_max, int u_max) {
  AmbientClass out(h_max, u_max);
  if (h_max >= 1) out.at(1, 0) = 1;
  return out;
}

void AmbientClass::check_shape(const AmbientClass& o) const {
  if (h_max_ != o.h_max_ || u_max_ != o.u_max_) throw DomainError("ambient classes with different truncations");
}

void AmbientClass::multiply_linear(const Rational& x) {
  // Descending indices so each source term is read before it is updated.
  for (int a = h_max_; a >= 0; --a) {
    for (int b = u_max_; b >= 0; --b) {
      Rational& t = at(a, b);
      if (a > 0) t += at(a - 1, b);
      if (b > 0 && x != 0) t += x * at(a, b - 1);
    }
  }
}

void AmbientClass::divide_linear(const Rational& x) {
  for (int a = 0; a <= h_max_; ++a) {
    for (int b = 0; b <= u_max_; ++b) {
      Rational& t = at(a, b);
      if (a > 0) t -= at(a - 1, b);
      if (b > 0 && x != 0) t -= x * at(a, b - 1);
    }
  }
}

AmbientClass AmbientClass::graded_part(int degree) const {
  AmbientClass out(h_max_, u_max_);
  for (int a = 0; a <= h_max_ && a <= degree; ++a) {
    const int b = degree - a;
    if (b <= u_max_) out.at(a, b) = at(a, b);
  }
  return out;
}

USeries AmbientClass::h_coefficient(int a) const {
  USeries out(u_max_);
  if (a < 0 || a > h_max_) return out;
  for (int b = 0; b <= u_max_; ++b) out[b] = at(a, b);
  return out;
}

AmbientClass& AmbientClass::operator+=(const AmbientClass& o) {
  check_shape(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

AmbientClass operator*(const AmbientClass& x, const AmbientClass& y) {
  x.check_shape(y);
  AmbientClass out(x.h_max_, x.u_max_);
  for (int a1 = 0; a1 <= x.h_max_; ++a1) {
    for (int b1 = 0; b1 <= x.u_max_; ++b1) {
      const Rational& s = x.at(a1, b1);
      if (s == 0) continue;
      for (int a2 = 0; a1 + a2 <= x.h_max_; ++a2) {
        for (int b2 = 0; b1 + b2 <= x.u_max_; ++b2) {
          const Rational& t = y.at(a2, b2);
          if (t != 0) out.at(a1 + a2, b1 + b2) += s * t;
        }
      }
    }
  }
  return out;
}

AmbientClass operator*(AmbientClass x, const Rational& s) {
  for (auto& c : x.c_) c *= s;
  return x;
}

std::int64_t ambient_dimension(const ToricSurfaceModel& surface, const SplitBundle& v, AmbientMode mode) {
  if (!(v.surface == surface.id)) throw DomainError("V lives on another surface");
  const SplitBundle vstar = v.dual();
  if (mode == AmbientMode::honest) {
    if (!vstar.honest()) throw DomainError("ambient space needs an honest V*; it has minus-lines");
    if (!vstar.has_degrees()) throw DomainError("ambient space needs V* given by line degrees");
    for (const auto& l : vstar.plus) {
      if (!surface.is_nef(*l.degrees)) throw DomainError("ambient space needs nef summands of V*");
    }
  }
  const std::int64_t chi = chi_from_chern(surface, chern_data(surface, vstar));
  if (chi < 1) throw DomainError("chi(V*) = " + std::to_string(chi) + " leaves no ambient projective space");
  return chi - 1;
}

ITClass it_class(const ToricSurfaceModel& surface, const SplitBundle& v, const SplitBundle& lambda, int k,
                 AmbientMode mode, std::uint64_t seed) {
  ambient_dimension(surface, v, mode);
  if (!(lambda.surface == surface.id)) throw DomainError("Lambda lives on another surface");
  ITClass it;
  it.k = k;
  it.taut_part = lambda;
  it.trivial_rank = chi_surface(surface, tensor(lambda, v), seed).get_si();
  it.hyperplane_multiplicity = -chi_surface(surface, lambda, seed).get_si();
  return it;
}

ULaurent virtual_integral_laurent(const ToricSurfaceModel& surface, const SplitBundle& v, const ITClass& it,
                                  const ChernExpr& p, std::int64_t ambient_dim, int h_max, const SpecPoint& z,
                                  int threads) {
  const int k = it.k;
  const int u_max = 2 * k;
  const SplitBundle vstar = v.dual();
  const int euler_degree = vstar.rank() * k;
  const int max_it = p.max_index(kITId);
  const Integer twist_mult = it.hyperplane_multiplicity;

  auto contribution = [&](const HilbFixedPoint& fp) -> ULaurent {
    const auto tangent = tangent_weights(surface, fp);
    const Integer euler_t = tangent_euler(tangent, z);

    // Euler class of O(1) (x) V*^[k], read off its total Chern class.
    AmbientClass cv = AmbientClass::constant(h_max, u_max, 1);
    for (const auto& sw : taut_weights(surface, fp, vstar)) {
      const Rational x = -z.eval(sw.w);
      if (sw.sign > 0) {
        cv.multiply_linear(x);
      } else {
        cv.divide_linear(x);
      }
    }
    AmbientClass integrand = cv.graded_part(euler_degree);

    if (!p.is_zero()) {
      std::map<int, AmbientClass> it_classes;
      if (max_it > 0) {
        AmbientClass c = AmbientClass::constant(h_max, u_max, 1);
        for (const auto& sw : taut_weights(surface, fp, it.taut_part)) {
          const Rational x = -z.eval(sw.w);
          if (sw.sign > 0) {
            c.multiply_linear(x);
          } else {
            c.divide_linear(x);
          }
        }
        // (1 + h)^m for the O(1) summands.
        AmbientClass twist(h_max, u_max);
        for (int a = 0; a <= h_max; ++a) twist.at(a, 0) = Rational(binomial(twist_mult, a));
        c = c * twist;
        for (int j = 1; j <= max_it; ++j) it_classes.emplace(j, c.graded_part(j));
      }
      const AmbientClass one = AmbientClass::constant(h_max, u_max, 1);
      const AmbientClass h = AmbientClass::hyperplane(h_max, u_max);
      const AmbientClass pv = p.evaluate<AmbientClass>(
          [&](const std::string&, int j) -> const AmbientClass& { return it_classes.at(j); }, h, one);
      integrand = pv * integrand;
    } else {
      integrand = AmbientClass(h_max, u_max);
    }
    USeries top = integrand.h_coefficient(static_cast<int>(ambient_dim));
    top *= Rational(1) / Rational(euler_t);
    return ULaurent::shifted(top, -2 * k);
  };
  ULaurent total = sum_over_fixed_points<ULaurent>(surface, k, contribution, ULaurent(), threads);
  total.normalize();
  return total;
}

VirtualIntegralResult virtual_integral(const ToricSurfaceModel& surface, const SplitBundle& v,
                                       const SplitBundle& lambda, int k, const ChernExpr& p,
                                       const VirtualOptions& options) {
  if (k < 0) throw DomainError("k must be non-negative");
  p.validate({kITId}, true);
  VirtualIntegralResult result;
  result.ambient_dim = ambient_dimension(surface, v, options.mode);
  result.virtual_dim = result.ambient_dim + 2 * static_cast<std::int64_t>(k) -
                       static_cast<std::int64_t>(v.rank()) * k;
  const int h_max = options.truncation.value_or(static_cast<int>(result.ambient_dim));
  if (h_max < result.ambient_dim)
    throw DomainError("truncation " + std::to_string(h_max) + " is below dim P = " +
                      std::to_string(result.ambient_dim));
  const ITClass it = it_class(surface, v, lambda, k, options.mode, options.compute.seed);

  if (auto deg = p.homogeneous_degree(); deg && *deg != result.virtual_dim && !p.is_zero())
    result.notes.push_back("integrand degree " + std::to_string(*deg) + " differs from the virtual dimension " +
                           std::to_string(result.virtual_dim) + "; the integral vanishes");
  for (const auto& t : p.terms()) {
    if (t.h_power > result.ambient_dim) {
      result.notes.push_back("terms with h^n for n > dim P = " + std::to_string(result.ambient_dim) + " vanish");
      break;
    }
  }

  const nlohmann::json key = {{"op", "virtual_integral"}, {"surface", surface.name()}, {"k", k},
                              {"v", to_json(v)},           {"lambda", to_json(lambda)}, {"expr", p.to_string()}};
  auto compute = [&] {
    return with_two_specializations(options.compute.seed, "virtual_integral", [&](const SpecPoint& z) {
      const ULaurent sum =
          virtual_integral_laurent(surface, v, it, p, result.ambient_dim, h_max, z, options.compute.threads);
      if (!sum.pole_free()) throw InconsistencyError("virtual_integral: poles failed to cancel");
      return sum.coefficient(0);
    });
  };
  if (options.compute.cache) {
    if (auto hit = options.compute.cache->lookup(key)) {
      result.value = *hit;
      return result;
    }
  }
  result.value = compute();
  if (options.compute.cache) options.compute.cache->store(key, result.value);
  return result;
}

}  // namespace hq
