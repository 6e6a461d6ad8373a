#include "hq/toric.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "hq/error.hpp"
#include "hq/series.hpp"

namespace hq {

std::string SurfaceId::name() const {
  switch (kind) {
    case SurfaceKind::P2:
      return "P2";
    case SurfaceKind::P1xP1:
      return "P1xP1";
    case SurfaceKind::Hirzebruch:
      return "Hirzebruch(" + std::to_string(a) + ")";
  }
  return "?";
}

SurfaceId SurfaceId::parse(std::string_view text) {
  auto parse_int = [&](std::string_view digits) {
    int value = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 0)
      throw DomainError("unsupported surface '" + std::string(text) + "'");
    return value;
  };
  if (text == "P2") return {SurfaceKind::P2, 0};
  if (text == "P1xP1") return {SurfaceKind::P1xP1, 0};
  if (text.starts_with("Hirzebruch(") && text.ends_with(")")) {
    return {SurfaceKind::Hirzebruch, parse_int(text.substr(11, text.size() - 12))};
  }
  if (text.size() > 1 && text[0] == 'F') return {SurfaceKind::Hirzebruch, parse_int(text.substr(1))};
  throw DomainError("unsupported surface '" + std::string(text) + "'");
}

std::int64_t ToricSurfaceModel::intersect(const DivisorClass& x, const DivisorClass& y) const {
  check_class(x);
  check_class(y);
  std::int64_t total = 0;
  for (int i = 0; i < pic_rank(); ++i)
    for (int j = 0; j < pic_rank(); ++j) total += x[i] * intersection_form[i][j] * y[j];
  return total;
}

std::int64_t ToricSurfaceModel::chi_line(const DivisorClass& d) const {
  DivisorClass d_minus_k(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) d_minus_k[i] = d[i] - canonical_class[i];
  return 1 + intersect(d, d_minus_k) / 2;
}

DivisorClass ToricSurfaceModel::ray_class(int ray) const {
  // Linear equivalences D_0 ~ D_2 = F and D_1 ~ H - aF on the Hirzebruch
  // fan; every ray divisor on P2 is a line.
  if (id.kind == SurfaceKind::P2) return {1};
  const std::int64_t a = id.kind == SurfaceKind::Hirzebruch ? id.a : 0;
  switch (ray) {
    case 0:
    case 2:
      return {1, 0};
    case 1:
      return {-a, 1};
    default:
      return {0, 1};
  }
}

bool ToricSurfaceModel::is_nef(const DivisorClass& d) const {
  for (int r = 0; r < static_cast<int>(rays.size()); ++r) {
    if (intersect(d, ray_class(r)) < 0) return false;
  }
  return true;
}

void ToricSurfaceModel::check_class(const DivisorClass& d) const {
  if (static_cast<int>(d.size()) != pic_rank())
    throw DomainError("divisor class of length " + std::to_string(d.size()) + " on " + name() +
                      " (Picard rank " + std::to_string(pic_rank()) + ")");
}

namespace {

void fill_fan_data(ToricSurfaceModel& s, const std::vector<std::array<int, 2>>& cones) {
  for (auto [i, j] : cones) {
    const auto& ui = s.rays[i];
    const auto& uj = s.rays[j];
    const std::int64_t det = ui[0] * uj[1] - ui[1] * uj[0];
    if (det != 1 && det != -1) throw InconsistencyError("singular cone in " + s.name());
    SurfaceFixedPoint fp;
    fp.ray_first = i;
    fp.ray_second = j;
    fp.v1 = {uj[1] / det, -uj[0] / det};
    fp.v2 = {-ui[1] / det, ui[0] / det};
    s.fixed_points.push_back(fp);
  }
  for (int ray = 0; ray < static_cast<int>(s.rays.size()); ++ray) {
    std::vector<int> owners;
    for (int p = 0; p < s.num_fixed_points(); ++p) {
      const auto& fp = s.fixed_points[p];
      if (fp.ray_first == ray || fp.ray_second == ray) owners.push_back(p);
    }
    if (owners.size() != 2) throw InconsistencyError("ray not shared by two cones in " + s.name());
    const auto& fp = s.fixed_points[owners[0]];
    // The curve D_ray is cut out by the coordinate dual to `ray`; its tangent
    // direction is the other coordinate.
    const Weight w = fp.ray_first == ray ? fp.v2 : fp.v1;
    s.edges.push_back({owners[0], owners[1], w, ray});
  }
  s.chi_top = s.num_fixed_points();
  s.k_squared = s.intersect(s.canonical_class, s.canonical_class);
}

}  // namespace

ToricSurfaceModel make_surface(const SurfaceId& id) {
  ToricSurfaceModel s;
  s.id = id;
  switch (id.kind) {
    case SurfaceKind::P2:
      s.rays = {{1, 0}, {0, 1}, {-1, -1}};
      s.pic_basis = {{0, 0, 1}};
      s.intersection_form = {{1}};
      s.canonical_class = {-3};
      fill_fan_data(s, {{0, 1}, {2, 1}, {0, 2}});
      break;
    case SurfaceKind::P1xP1:
    case SurfaceKind::Hirzebruch: {
      const std::int64_t a = id.kind == SurfaceKind::Hirzebruch ? id.a : 0;
      if (a < 0) throw DomainError("Hirzebruch parameter must be non-negative");
      s.rays = {{1, 0}, {0, 1}, {-1, a}, {0, -1}};
      // F = D_2 (fibre), H = D_3 with H^2 = a.
      s.pic_basis = {{0, 0, 1, 0}, {0, 0, 0, 1}};
      s.intersection_form = {{0, 1}, {1, a}};
      s.canonical_class = {a - 2, -2};
      fill_fan_data(s, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
      break;
    }
  }
  return s;
}

ToricSurfaceModel make_surface(std::string_view name) { return make_surface(SurfaceId::parse(name)); }

EquivariantLineBundle EquivariantLineBundle::shifted(Weight w) const {
  EquivariantLineBundle out = *this;
  for (auto& x : out.weights) x = x + w;
  return out;
}

EquivariantLineBundle EquivariantLineBundle::dual() const {
  EquivariantLineBundle out = *this;
  for (auto& x : out.weights) x = -x;
  if (out.degrees) {
    for (auto& d : *out.degrees) d = -d;
  }
  return out;
}

EquivariantLineBundle tensor(const EquivariantLineBundle& x, const EquivariantLineBundle& y) {
  if (!(x.surface == y.surface) || x.weights.size() != y.weights.size())
    throw DomainError("tensor product of line bundles on different surfaces");
  EquivariantLineBundle out = x;
  for (std::size_t i = 0; i < out.weights.size(); ++i) out.weights[i] = x.weights[i] + y.weights[i];
  if (x.degrees && y.degrees) {
    for (std::size_t i = 0; i < out.degrees->size(); ++i) (*out.degrees)[i] += (*y.degrees)[i];
  } else {
    out.degrees.reset();
  }
  return out;
}

EquivariantLineBundle line_bundle(const ToricSurfaceModel& surface, const DivisorClass& degrees) {
  surface.check_class(degrees);
  std::vector<std::int64_t> ray_coeff(surface.rays.size(), 0);
  for (int i = 0; i < surface.pic_rank(); ++i)
    for (std::size_t r = 0; r < ray_coeff.size(); ++r) ray_coeff[r] += degrees[i] * surface.pic_basis[i][r];
  EquivariantLineBundle out;
  out.surface = surface.id;
  out.degrees = degrees;
  for (const auto& fp : surface.fixed_points) {
    // <m, u_first> = -a_first and <m, u_second> = -a_second.
    out.weights.push_back((-ray_coeff[fp.ray_first]) * fp.v1 + (-ray_coeff[fp.ray_second]) * fp.v2);
  }
  return out;
}

std::optional<CompatibilityViolation> validate_compatibility(const ToricSurfaceModel& surface,
                                                             const EquivariantLineBundle& bundle) {
  if (static_cast<int>(bundle.weights.size()) != surface.num_fixed_points())
    throw DomainError("bundle has " + std::to_string(bundle.weights.size()) + " weights; " +
                      surface.name() + " has " + std::to_string(surface.num_fixed_points()) +
                      " fixed points");
  for (int e = 0; e < static_cast<int>(surface.edges.size()); ++e) {
    const auto& edge = surface.edges[e];
    const Weight diff = bundle.weights[edge.p] - bundle.weights[edge.q];
    // Edge weights are primitive, so a vanishing cross product means an
    // integral multiple.
    if (diff.a * edge.w.b - diff.b * edge.w.a != 0) {
      CompatibilityViolation v{e, edge.p, edge.q, diff, edge.w, {}};
      v.message = "edge " + std::to_string(e) + " joining points " + std::to_string(edge.p + 1) +
                  " and " + std::to_string(edge.q + 1) + ": difference " + to_string(diff) +
                  " is not a multiple of " + to_string(edge.w);
      return v;
    }
  }
  return std::nullopt;
}

bool SplitBundle::has_degrees() const {
  auto has = [](const EquivariantLineBundle& l) { return l.degrees.has_value(); };
  return std::all_of(plus.begin(), plus.end(), has) && std::all_of(minus.begin(), minus.end(), has);
}

SplitBundle SplitBundle::dual() const {
  SplitBundle out = *this;
  for (auto& l : out.plus) l = l.dual();
  for (auto& l : out.minus) l = l.dual();
  return out;
}

SplitBundle SplitBundle::shifted(Weight w) const {
  SplitBundle out = *this;
  for (auto& l : out.plus) l = l.shifted(w);
  for (auto& l : out.minus) l = l.shifted(w);
  return out;
}

SplitBundle empty_bundle(const ToricSurfaceModel& surface) {
  SplitBundle b;
  b.surface = surface.id;
  return b;
}

SplitBundle split_bundle(const ToricSurfaceModel& surface, const std::vector<DivisorClass>& plus,
                         const std::vector<DivisorClass>& minus) {
  SplitBundle b = empty_bundle(surface);
  for (const auto& d : plus) b.plus.push_back(line_bundle(surface, d));
  for (const auto& d : minus) b.minus.push_back(line_bundle(surface, d));
  return b;
}

SplitBundle direct_sum(const SplitBundle& x, const SplitBundle& y) {
  if (!(x.surface == y.surface)) throw DomainError("direct sum of bundles on different surfaces");
  SplitBundle out = x;
  out.plus.insert(out.plus.end(), y.plus.begin(), y.plus.end());
  out.minus.insert(out.minus.end(), y.minus.begin(), y.minus.end());
  return out;
}

SplitBundle tensor(const SplitBundle& x, const SplitBundle& y) {
  if (!(x.surface == y.surface)) throw DomainError("tensor product of bundles on different surfaces");
  SplitBundle out;
  out.surface = x.surface;
  for (const auto& a : x.plus) {
    for (const auto& b : y.plus) out.plus.push_back(tensor(a, b));
    for (const auto& b : y.minus) out.minus.push_back(tensor(a, b));
  }
  for (const auto& a : x.minus) {
    for (const auto& b : y.plus) out.minus.push_back(tensor(a, b));
    for (const auto& b : y.minus) out.plus.push_back(tensor(a, b));
  }
  return out;
}

namespace {

DivisorClass add(DivisorClass x, const DivisorClass& y, std::int64_t sign = 1) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += sign * y[i];
  return x;
}

struct WhitneyTotals {
  DivisorClass c1;
  std::int64_t c2 = 0;
};

WhitneyTotals whitney(const ToricSurfaceModel& s, const std::vector<DivisorClass>& plus,
                      const std::vector<DivisorClass>& minus) {
  // c(V) = prod(1 + D_i) / prod(1 + M_j):
  // c2 = e2(D) - e1(D) e1(M) + h2(M).
  DivisorClass zero(s.pic_rank(), 0);
  DivisorClass e1d = zero, e1m = zero;
  std::int64_t e2d = 0, h2m = 0;
  for (std::size_t i = 0; i < plus.size(); ++i) {
    e1d = add(e1d, plus[i]);
    for (std::size_t j = i + 1; j < plus.size(); ++j) e2d += s.intersect(plus[i], plus[j]);
  }
  for (std::size_t i = 0; i < minus.size(); ++i) {
    e1m = add(e1m, minus[i]);
    for (std::size_t j = i; j < minus.size(); ++j) h2m += s.intersect(minus[i], minus[j]);
  }
  return {add(e1d, e1m, -1), e2d - s.intersect(e1d, e1m) + h2m};
}

std::vector<DivisorClass> degrees_of(const std::vector<EquivariantLineBundle>& lines) {
  std::vector<DivisorClass> out;
  for (const auto& l : lines) {
    if (!l.degrees) throw DomainError("Chern data needs line bundles with known degrees");
    out.push_back(*l.degrees);
  }
  return out;
}

}  // namespace

ChernData chern_data(const ToricSurfaceModel& surface, const SplitBundle& b) {
  auto totals = whitney(surface, degrees_of(b.plus), degrees_of(b.minus));
  return {b.rank(), totals.c1, totals.c2};
}

ChernData dual(const ChernData& c) {
  ChernData out = c;
  for (auto& x : out.c1) x = -x;
  return out;
}

Integer chi_surface(const ToricSurfaceModel& surface, const SplitBundle& b, std::uint64_t seed) {
  if (!(b.surface == surface.id)) throw DomainError("bundle lives on a different surface");
  constexpr int kOrder = 2 + 2;
  Specializer specializer(seed);
  for (int attempt = 0; attempt <= kMaxSpecializationRetries; ++attempt) {
    const SpecPoint z = specializer.next();
    ULaurent total;
    bool pole = false;
    for (int p = 0; p < surface.num_fixed_points() && !pole; ++p) {
      const auto& fp = surface.fixed_points[p];
      const Rational v1 = z.eval(fp.v1), v2 = z.eval(fp.v2);
      if (v1 == 0 || v2 == 0) {
        pole = true;
        break;
      }
      USeries ch(kOrder);
      for (const auto& l : b.plus) ch += exp_series(-Rational(z.eval(l.weights[p])), kOrder);
      for (const auto& l : b.minus) ch -= exp_series(-Rational(z.eval(l.weights[p])), kOrder);
      USeries term = ch * todd_series(v1, kOrder) * todd_series(v2, kOrder);
      term *= Rational(1) / (v1 * v2);
      total += ULaurent::shifted(term, -2);
    }
    if (pole) continue;
    if (!total.pole_free()) throw InconsistencyError("surface HRR: poles failed to cancel");
    const Rational value = total.coefficient(0);
    if (!is_integer(value)) throw InconsistencyError("surface HRR gave non-integer " + to_string(value));
    return value.get_num();
  }
  throw SpecializationError("surface HRR: every specialization hit a pole");
}

std::int64_t chi_from_chern(const ToricSurfaceModel& surface, const ChernData& e) {
  surface.check_class(e.c1);
  // chi = rank chi(O_X) + (c1^2 - 2 c2)/2 - c1.K/2 with chi(O_X) = 1.
  const std::int64_t twice =
      2 * e.rank + surface.intersect(e.c1, e.c1) - 2 * e.c2 - surface.intersect(e.c1, surface.canonical_class);
  return twice / 2;
}

std::int64_t chi_pair(const ToricSurfaceModel& surface, const ChernData& e, int k) {
  return chi_from_chern(surface, e) - static_cast<std::int64_t>(e.rank) * k;
}

SplitBundle realize_split_model(const ToricSurfaceModel& surface, const ChernData& target,
                                const RealizeOptions& options) {
  surface.check_class(target.c1);
  const int box = options.box > 0 ? options.box : (surface.pic_rank() == 1 ? 12 : 4);
  const int dim = surface.pic_rank();

  // All degree vectors in the box, in lexicographic order.
  std::vector<DivisorClass> values;
  {
    DivisorClass d(dim, -box);
    while (true) {
      values.push_back(d);
      int i = dim - 1;
      while (i >= 0 && d[i] == box) d[i--] = -box;
      if (i < 0) break;
      ++d[i];
    }
  }
  auto index_of = [&](const DivisorClass& d) -> int {
    for (std::int64_t x : d)
      if (x < -box || x > box) return -1;
    int idx = 0;
    for (std::int64_t x : d) idx = idx * (2 * box + 1) + static_cast<int>(x + box);
    return idx;
  };

  for (int m = 0; m <= options.max_minus; ++m) {
    const int n_plus = target.rank + m;
    if (n_plus < 1) continue;
    std::vector<int> plus_idx(n_plus, 0), minus_idx(m, 0);
    std::optional<SplitBundle> found;

    // Minus tuples are tried for each plus prefix; the last plus line is
    // fixed by c1.
    std::function<bool(int, int)> choose_minus;
    std::function<bool(int, int)> choose_plus;
    auto try_candidate = [&]() -> bool {
      DivisorClass last = target.c1;
      for (int i = 0; i + 1 < n_plus; ++i) last = add(last, values[plus_idx[i]], -1);
      for (int j = 0; j < m; ++j) last = add(last, values[minus_idx[j]]);
      const int li = index_of(last);
      if (li < 0 || (n_plus > 1 && li < plus_idx[n_plus - 2])) return false;
      plus_idx[n_plus - 1] = li;
      for (int i : plus_idx)
        for (int j : minus_idx)
          if (i == j) return false;
      std::vector<DivisorClass> p, q;
      for (int i : plus_idx) p.push_back(values[i]);
      for (int j : minus_idx) q.push_back(values[j]);
      if (whitney(surface, p, q).c2 != target.c2) return false;
      found = split_bundle(surface, p, q);
      return true;
    };
    choose_minus = [&](int j, int start) -> bool {
      if (j == m) return try_candidate();
      for (int v = start; v < static_cast<int>(values.size()); ++v) {
        minus_idx[j] = v;
        if (choose_minus(j + 1, v)) return true;
      }
      return false;
    };
    choose_plus = [&](int i, int start) -> bool {
      if (i == n_plus - 1) return choose_minus(0, 0);
      for (int v = start; v < static_cast<int>(values.size()); ++v) {
        plus_idx[i] = v;
        if (choose_plus(i + 1, v)) return true;
      }
      return false;
    };
    if (choose_plus(0, 0)) return *found;
  }
  throw DomainError("no split model with rank " + std::to_string(target.rank) + ", c2 " +
                    std::to_string(target.c2) + " within degree box " + std::to_string(box));
}

ChernData e_from_V(const ToricSurfaceModel& surface, const ChernData& v, int k) {
  if (v.rank < 2) throw DomainError("e_from_V needs rank(V) >= 2");
  surface.check_class(v.c1);
  const std::int64_t c1sq = surface.intersect(v.c1, v.c1);
  // Work with 2 ch2 to stay integral: 2 ch2(E) = 2 ch2(V) + 2k.
  const std::int64_t twice_ch2_v = c1sq - 2 * v.c2;
  const std::int64_t twice_ch2_e = twice_ch2_v + 2 * static_cast<std::int64_t>(k);
  ChernData e;
  e.rank = v.rank - 1;
  e.c1 = dual(v).c1;
  e.c2 = (c1sq - twice_ch2_e) / 2;
  return e;
}

Rational localized_k_squared(const ToricSurfaceModel& surface, const SpecPoint& z) {
  Rational total = 0;
  for (const auto& fp : surface.fixed_points) {
    const Rational v1 = z.eval(fp.v1), v2 = z.eval(fp.v2);
    if (v1 == 0 || v2 == 0) throw ZeroWeightError("tangent weight specializes to zero");
    total += (v1 + v2) * (v1 + v2) / (v1 * v2);
  }
  return total;
}

Rational localized_c2(const ToricSurfaceModel& surface, const SplitBundle& b, const SpecPoint& z) {
  Rational total = 0;
  for (int p = 0; p < surface.num_fixed_points(); ++p) {
    const auto& fp = surface.fixed_points[p];
    const Integer v1 = z.eval(fp.v1), v2 = z.eval(fp.v2);
    if (v1 == 0 || v2 == 0) throw ZeroWeightError("tangent weight specializes to zero");
    std::vector<Integer> plus, minus;
    for (const auto& l : b.plus) plus.emplace_back(-z.eval(l.weights[p]));
    for (const auto& l : b.minus) minus.emplace_back(-z.eval(l.weights[p]));
    auto c = signed_chern_classes(plus, minus, 2);
    total += Rational(c[2]) / Rational(v1 * v2);
  }
  return total;
}

}  // namespace hq
