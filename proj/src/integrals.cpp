#include "hq/integrals.hpp"

#include "hq/error.hpp"
#include "hq/hilb.hpp"
#include "hq/localization.hpp"
#include "hq/serialize.hpp"

namespace hq {

namespace {

void check_surface(const ToricSurfaceModel& surface, const SplitBundle& b, const char* what) {
  if (!(b.surface == surface.id))
    throw DomainError(std::string(what) + " lives on " + b.surface.name() + ", not " + surface.name());
}

nlohmann::json integral_key(const IntegralRequest& req) {
  nlohmann::json bundles = nlohmann::json::object();
  for (const auto& [id, b] : req.bundles) bundles[id] = to_json(b);
  return {{"op", "integrate"},
          {"surface", req.surface.name()},
          {"k", req.k},
          {"bundles", bundles},
          {"expr", req.expr.to_string()}};
}

template <class Compute>
Rational cached(const ComputeOptions& options, const nlohmann::json& key, Compute&& compute) {
  if (options.cache) {
    if (auto hit = options.cache->lookup(key)) return *hit;
  }
  Rational value = compute();
  if (options.cache) options.cache->store(key, value);
  return value;
}

std::int64_t pos_binomial2(std::int64_t n) { return n * (n - 1) / 2; }

}  // namespace

Rational integrate_at(const IntegralRequest& req, const SpecPoint& z, int threads) {
  const ToricSurfaceModel surface = make_surface(req.surface);
  std::map<std::string, int> needed;
  for (const auto& id : req.expr.bundles()) needed[id] = req.expr.max_index(id);

  auto contribution = [&](const HilbFixedPoint& fp) -> Rational {
    const auto tangent = tangent_weights(surface, fp);
    const Integer euler = tangent_euler(tangent, z);
    std::map<std::string, std::vector<Integer>> classes;
    for (const auto& [id, top] : needed) {
      std::vector<Integer> plus, minus;
      if (id == kTangentId) {
        for (Weight w : tangent) plus.emplace_back(z.eval(w));
      } else {
        for (const auto& sw : taut_weights(surface, fp, req.bundles.at(id))) {
          (sw.sign > 0 ? plus : minus).emplace_back(-z.eval(sw.w));
        }
      }
      classes[id] = signed_chern_classes(plus, minus, top);
    }
    const Rational one = 1;
    Rational value = req.expr.evaluate<Rational>(
        [&](const std::string& id, int j) { return Rational(classes.at(id)[j]); }, Rational(0), one);
    return value / Rational(euler);
  };
  return sum_over_fixed_points<Rational>(surface, req.k, contribution, Rational(0), threads);
}

Rational integrate(const IntegralRequest& req, const ComputeOptions& options) {
  if (req.k < 0) throw DomainError("k must be non-negative");
  for (const auto& [id, b] : req.bundles) {
    if (id == kTangentId) throw DomainError("bundle id 'T' is reserved for the tangent bundle");
    if (!(b.surface == req.surface)) throw DomainError("bundle '" + id + "' lives on another surface");
  }
  std::set<std::string> declared{kTangentId};
  for (const auto& [id, b] : req.bundles) declared.insert(id);
  req.expr.validate(declared, false);
  const auto degree = req.expr.homogeneous_degree();
  if (!degree) throw DomainError("integrand is not homogeneous");
  if (*degree != 2 * req.k && !req.expr.is_zero())
    throw DomainError("integrand has degree " + std::to_string(*degree) + "; X^[" + std::to_string(req.k) +
                      "] has dimension " + std::to_string(2 * req.k));
  return cached(options, integral_key(req), [&] {
    return with_two_specializations(options.seed, "integral",
                                    [&](const SpecPoint& z) { return integrate_at(req, z, options.threads); });
  });
}

Rational quot_count(const ToricSurfaceModel& surface, const SplitBundle& v, int k, const ComputeOptions& options) {
  check_surface(surface, v, "V");
  if (v.rank() < 1) throw DomainError("quot_count needs rank(V) >= 1");
  IntegralRequest req{surface.id, k, {{"Vdual", v.dual()}}, ChernExpr::symbol("Vdual", 2 * k)};
  const Rational value = integrate(req, options);
  if (v.honest() && !is_integer(value))
    throw InconsistencyError("quot count of an honest bundle is not an integer: " + to_string(value));
  return value;
}

std::int64_t expected_dim_pairs(const ToricSurfaceModel& surface, const ChernData& v, int k) {
  return chi_from_chern(surface, dual(v)) - 1 - static_cast<std::int64_t>(v.rank - 2) * k;
}

std::int64_t expected_dim_pairs(const ToricSurfaceModel& surface, const SplitBundle& v, int k) {
  check_surface(surface, v, "V");
  return expected_dim_pairs(surface, chern_data(surface, v), k);
}

std::int64_t c2_for_expected_dim_zero(int r, int d, int k) {
  if (r < 2) throw DomainError("c2_for_expected_dim_zero needs r >= 2");
  if (k < 1) throw DomainError("c2_for_expected_dim_zero needs k >= 1");
  return pos_binomial2(static_cast<std::int64_t>(d) + 2) - static_cast<std::int64_t>(k - 1) * (r - 2);
}

std::int64_t c2_for_expected_dim_zero(const ToricSurfaceModel& surface, int r, const DivisorClass& d, int k) {
  if (r < 2) throw DomainError("c2_for_expected_dim_zero needs r >= 2");
  if (k < 1) throw DomainError("c2_for_expected_dim_zero needs k >= 1");
  return surface.chi_line(d) - static_cast<std::int64_t>(k - 1) * (r - 2);
}

ConstructionReport validate_construction(int r, int d, std::int64_t w) {
  ConstructionReport rep;
  rep.epsilon = (d == 1 || d == 2) ? 1 : 0;
  rep.lower = pos_binomial2(static_cast<std::int64_t>(d) + 1);
  rep.upper = pos_binomial2(static_cast<std::int64_t>(d) + 2) - 3 + rep.epsilon;
  if (r < 2) rep.violations.push_back("r = " + std::to_string(r) + " violates r >= 2");
  if (d < 1) rep.violations.push_back("d = " + std::to_string(d) + " violates d >= 1");
  if (w < rep.lower)
    rep.violations.push_back("w = " + std::to_string(w) + " violates the lower bound " + std::to_string(rep.lower) +
                             " = C(d+1,2)");
  if (w > rep.upper)
    rep.violations.push_back("w = " + std::to_string(w) + " violates the upper bound " + std::to_string(rep.upper) +
                             " = C(d+2,2) - 3 + eps");
  rep.ok = rep.violations.empty();
  return rep;
}

ULaurent chi_theta_laurent(const ToricSurfaceModel& surface, const SplitBundle& e, int k, const SpecPoint& z,
                           int threads) {
  const int order = 2 * k + 2;
  const std::vector<Rational> log_todd = log_todd_coefficients(order);
  auto contribution = [&](const HilbFixedPoint& fp) -> ULaurent {
    const auto tangent = tangent_weights(surface, fp);
    const Integer euler = tangent_euler(tangent, z);
    // prod todd(t u) = exp(sum_n l_n p_n u^n) with power sums p_n.
    std::vector<Integer> power_sums(order + 1, Integer(0));
    for (Weight w : tangent) {
      const Integer t = z.eval(w);
      Integer power = 1;
      for (int n = 1; n <= order; ++n) {
        power *= t;
        power_sums[n] += power;
      }
    }
    USeries g(order);
    for (int n = 1; n <= order; ++n) g[n] = log_todd[n] * Rational(power_sums[n]);
    // Chern root of Theta_e is minus its character.
    if (order >= 1) g[1] -= Rational(z.eval(theta_weight(surface, fp, e)));
    USeries f = series_exp(g);
    f *= Rational(1) / Rational(euler);
    return ULaurent::shifted(f, -2 * k);
  };
  ULaurent total = sum_over_fixed_points<ULaurent>(surface, k, contribution, ULaurent(), threads);
  total.normalize();
  return total;
}

ChiThetaResult chi_theta(const ToricSurfaceModel& surface, const SplitBundle& e, int k,
                         const ComputeOptions& options) {
  check_surface(surface, e, "e");
  if (k < 0) throw DomainError("k must be non-negative");
  ChiThetaResult result;
  result.chi_pair = chi_pair(surface, chern_data(surface, e), k);
  if (result.chi_pair != 0)
    result.warnings.push_back("chi(e.f) = " + std::to_string(result.chi_pair) +
                              " is not zero; Theta_e is not canonical for this class");
  const nlohmann::json key = {{"op", "chi_theta"}, {"surface", surface.name()}, {"k", k}, {"e", to_json(e)}};
  const Rational value = cached(options, key, [&] {
    return with_two_specializations(options.seed, "chi_theta", [&](const SpecPoint& z) {
      const ULaurent sum = chi_theta_laurent(surface, e, k, z, options.threads);
      if (!sum.pole_free()) throw InconsistencyError("chi_theta: poles failed to cancel");
      return sum.coefficient(0);
    });
  });
  if (!is_integer(value)) throw InconsistencyError("chi_theta gave non-integer " + to_string(value));
  result.value = value.get_num();
  return result;
}

bool ConjectureReport::all_equal() const {
  for (const auto& row : rows)
    if (!row.skipped && !row.equal) return false;
  return true;
}

ConjectureRow verify_conjecture_at(const ToricSurfaceModel& surface, int r, const DivisorClass& d, int k,
                                   const ConjectureOptions& options) {
  surface.check_class(d);
  ConjectureRow row;
  row.k = k;
  if (k < 1) {
    row.skipped = true;
    row.note = "skipped: the c2 formula requires k >= 1";
    return row;
  }
  row.vstar = {r, d, c2_for_expected_dim_zero(surface, r, d, k)};
  row.e = e_from_V(surface, dual(row.vstar), k);
  row.chi_pair = chi_pair(surface, row.e, k);
  if (row.chi_pair != 0) {
    row.note = "chi(e.f) = " + std::to_string(row.chi_pair) + " is not zero";
    return row;
  }
  try {
    row.vstar_model = realize_split_model(surface, row.vstar, options.realize);
    row.e_model = realize_split_model(surface, row.e, options.realize);
  } catch (const DomainError& err) {
    row.note = std::string("split realization failed: ") + err.what();
    return row;
  }
  const Rational n = quot_count(surface, row.vstar_model->dual(), k, options.compute);
  if (!is_integer(n)) throw InconsistencyError("quot count is not an integer: " + to_string(n));
  row.quot = n.get_num();
  row.chi = chi_theta(surface, *row.e_model, k, options.compute).value;
  row.equal = *row.quot == *row.chi;
  return row;
}

ConjectureReport verify_conjecture(const ToricSurfaceModel& surface, int r, const DivisorClass& d, int k_max,
                                   const ConjectureOptions& options) {
  if (r < 3) throw DomainError("verify_conjecture needs r >= 3");
  surface.check_class(d);
  if (surface.pic_rank() == 1 && d[0] < 1) throw DomainError("verify_conjecture needs d >= 1");
  ConjectureReport report;
  report.surface = surface.id;
  report.r = r;
  report.d = d;
  report.hypotheses = {
      "Quot(V,k) finite and reduced is assumed, not checked",
      "chi = h0 needs vanishing of higher cohomology of Theta_e for d >> 0; no threshold is applied",
      "V and e enter through split stand-ins with the same Chern data"};
  for (int k = 1; k <= k_max; ++k) report.rows.push_back(verify_conjecture_at(surface, r, d, k, options));
  return report;
}

}  // namespace hq
