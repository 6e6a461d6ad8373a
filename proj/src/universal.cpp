#include "hq/universal.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <set>
#include <thread>

#include "hq/error.hpp"
#include "hq/integrals.hpp"
#include "hq/localization.hpp"
#include "hq/serialize.hpp"

namespace hq {

const std::array<const char*, kNumSymbols> kSymbolNames = {
    "c1(X)^2", "c1(X).c1(V)", "c1(V)^2", "c2(V)", "c1(X).c1(L)", "c1(L)^2", "c2(L)", "c1(V).c1(L)"};

UniversalShape UniversalShape::quot_count() { return {"quot-count", ChernExpr::constant(1)}; }

UniversalShape UniversalShape::expression(const ChernExpr& q) {
  q.validate({kITId}, true);
  if (!q.homogeneous_degree()) throw DomainError("shape expression must be homogeneous");
  return {"expr:" + q.to_string(), q};
}

SplitBundle UniversalConfig::v(const ToricSurfaceModel& s) const { return split_bundle(s, vstar).dual(); }

SplitBundle UniversalConfig::lambda(const ToricSurfaceModel& s) const {
  return split_bundle(s, lambda_plus, lambda_minus);
}

nlohmann::json to_json(const UniversalConfig& config) {
  auto list = [](const std::vector<DivisorClass>& ds) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : ds) out.push_back(to_json(d));
    return out;
  };
  return {{"surface", config.surface.name()},
          {"vstar", list(config.vstar)},
          {"lambda_plus", list(config.lambda_plus)},
          {"lambda_minus", list(config.lambda_minus)}};
}

IntersectionNumbers intersection_numbers(const UniversalConfig& config) {
  const ToricSurfaceModel s = make_surface(config.surface);
  const ChernData v = chern_data(s, config.v(s));
  const ChernData l = chern_data(s, config.lambda(s));
  DivisorClass c1x = s.canonical_class;
  for (auto& x : c1x) x = -x;
  return {s.intersect(c1x, c1x), s.intersect(c1x, v.c1), s.intersect(v.c1, v.c1), v.c2,
          s.intersect(c1x, l.c1), s.intersect(l.c1, l.c1), l.c2,         s.intersect(v.c1, l.c1)};
}

Rational universal_direct_value(const UniversalShape& shape, const UniversalConfig& config, int k,
                                const ComputeOptions& options) {
  const ToricSurfaceModel s = make_surface(config.surface);
  const SplitBundle v = config.v(s);
  const std::int64_t vd = expected_dim_pairs(s, v, k);
  const int deg = *shape.q.homogeneous_degree();
  if (vd < deg) return 0;
  const ChernExpr p = shape.q * ChernExpr::hyperplane_power(static_cast<int>(vd - deg));
  VirtualOptions vo;
  vo.compute = options;
  return virtual_integral(s, v, config.lambda(s), k, p, vo).value;
}

namespace {

using Exponents = std::array<int, kNumSymbols>;

std::vector<Exponents> monomial_basis(int max_degree) {
  std::vector<Exponents> out;
  for (int deg = 0; deg <= max_degree; ++deg) {
    Exponents e{};
    // Exponent vectors of total degree deg, first symbol varying slowest.
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == kNumSymbols - 1) {
        e[i] = left;
        if (e[0] <= 1) out.push_back(e);
        return;
      }
      for (int x = left; x >= 0; --x) {
        e[i] = x;
        self(self, i + 1, left - x);
      }
    };
    rec(rec, 0, deg);
  }
  return out;
}

std::string monomial_string(const Exponents& e) {
  std::string out;
  for (int i = 0; i < kNumSymbols; ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    const std::string name = kSymbolNames[i];
    if (e[i] == 1) {
      out += name;
    } else if (name.find_first_of("^.") != std::string::npos) {
      out += "(" + name + ")^" + std::to_string(e[i]);
    } else {
      out += name + "^" + std::to_string(e[i]);
    }
  }
  return out.empty() ? "1" : out;
}

std::vector<Rational> features(const std::vector<Exponents>& basis, const IntersectionNumbers& x) {
  std::vector<Rational> row;
  row.reserve(basis.size());
  for (const auto& e : basis) {
    Integer v = 1;
    for (int i = 0; i < kNumSymbols; ++i)
      for (int j = 0; j < e[i]; ++j) v *= x[i];
    row.emplace_back(v);
  }
  return row;
}

std::string combination_string(const std::vector<Rational>& coeffs, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Rational& c = coeffs[i];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (names[i] == "1") {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += names[i];
    }
  }
  return out.empty() ? "0" : out;
}

/// Incremental row echelon form used to pick rank-increasing samples.
class Echelon {
 public:
  /// Adds row when it is independent of the rows so far.
  bool add(std::vector<Rational> row) {
    reduce(row);
    auto it = std::find_if(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
    if (it == row.end()) return false;
    rows_.push_back({static_cast<std::size_t>(it - row.begin()), std::move(row)});
    return true;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(std::vector<Rational>& row) const {
    for (const auto& [pivot, r] : rows_) {
      if (row[pivot] == 0) continue;
      const Rational f = row[pivot] / r[pivot];
      for (std::size_t j = pivot; j < row.size(); ++j) row[j] -= f * r[j];
    }
  }
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

/// Basis of {c : A c = 0} by reduced row echelon form.
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> a, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rational inv = Rational(1) / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Rational> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) throw InconsistencyError("universal_poly: training system is singular");
    std::swap(a[p], a[col]);
    std::swap(b[p], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::vector<UniversalConfig> sample_pool(const UniversalShape& shape, int k, int rank_v, int rank_lambda,
                                         int pool_size, std::uint64_t seed) {
  const std::array<SurfaceId, 3> surfaces = {SurfaceId{SurfaceKind::P2, 0}, SurfaceId{SurfaceKind::P1xP1, 0},
                                             SurfaceId{SurfaceKind::Hirzebruch, 1}};
  std::array<ToricSurfaceModel, 3> models = {make_surface(surfaces[0]), make_surface(surfaces[1]),
                                             make_surface(surfaces[2])};
  const int q_degree = *shape.q.homogeneous_degree();
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

  std::vector<UniversalConfig> pool;
  std::set<std::string> seen;
  const int max_attempts = pool_size * 50;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(pool.size()) < pool_size; ++attempt) {
    const std::size_t which = static_cast<std::size_t>(attempt % 3);
    const ToricSurfaceModel& s = models[which];
    const int dim = s.pic_rank();
    auto degree = [&](int lo, int hi) {
      DivisorClass d(dim);
      for (auto& x : d) x = draw(lo, hi);
      return d;
    };
    UniversalConfig c;
    c.surface = surfaces[which];
    bool nef = true;
    for (int i = 0; i < rank_v; ++i) {
      c.vstar.push_back(degree(0, dim == 1 ? 3 : 2));
      nef = nef && s.is_nef(c.vstar.back());
    }
    if (!nef) continue;
    const int minus = std::max(0, -rank_lambda) + draw(0, 1);
    for (int i = 0; i < rank_lambda + minus; ++i) c.lambda_plus.push_back(degree(-2, 2));
    for (int i = 0; i < minus; ++i) c.lambda_minus.push_back(degree(-2, 2));
    std::sort(c.vstar.begin(), c.vstar.end());
    std::sort(c.lambda_plus.begin(), c.lambda_plus.end());
    std::sort(c.lambda_minus.begin(), c.lambda_minus.end());

    const SplitBundle v = c.v(s);
    const std::int64_t dim_p = chi_from_chern(s, chern_data(s, v.dual())) - 1;
    if (dim_p < 0 || dim_p > 30) continue;
    if (expected_dim_pairs(s, v, k) < q_degree) continue;
    if (!seen.insert(to_json(c).dump()).second) continue;
    pool.push_back(std::move(c));
  }
  return pool;
}

std::vector<Rational> direct_values(const UniversalShape& shape, const std::vector<UniversalConfig>& configs, int k,
                                    const ComputeOptions& options) {
  ComputeOptions inner = options;
  inner.threads = 1;
  std::vector<Rational> out(configs.size());
  const int threads = options.threads > 0 ? options.threads : default_thread_count();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), configs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) out[i] = universal_direct_value(shape, configs[i], k, inner);
    return out;
  }
  std::vector<std::exception_ptr> failure(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < configs.size(); i += workers)
          out[i] = universal_direct_value(shape, configs[i], k, inner);
      } catch (...) {
        failure[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failure)
    if (f) std::rethrow_exception(f);
  return out;
}

}  // namespace

Rational UniversalPolynomial::evaluate(const IntersectionNumbers& x) const {
  const auto row = features(basis, x);
  Rational total = 0;
  for (std::size_t i = 0; i < row.size(); ++i) total += coefficients[i] * row[i];
  return total;
}

std::vector<std::string> UniversalPolynomial::basis_strings() const {
  std::vector<std::string> out;
  for (const auto& e : basis) out.push_back(monomial_string(e));
  return out;
}

std::string UniversalPolynomial::to_string() const { return combination_string(coefficients, basis_strings()); }

nlohmann::json to_json(const UniversalPolynomial& poly) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : poly.coefficients) coeffs.push_back(to_string(c));
  nlohmann::json held = nlohmann::json::array();
  for (const auto& h : poly.held_out) {
    held.push_back({{"config", to_json(h.config)}, {"direct", to_string(h.direct)}, {"polynomial", to_string(h.predicted)}});
  }
  return {{"shape_id", poly.shape_id},
          {"k", poly.k},
          {"ranks", {{"V", poly.rank_v}, {"Lambda", poly.rank_lambda}}},
          {"max_degree", poly.max_degree},
          {"basis", poly.basis_strings()},
          {"coefficients", coeffs},
          {"polynomial", poly.to_string()},
          {"training_points", poly.training.size()},
          {"held_out", held}};
}

UniversalPolynomial universal_poly(const UniversalShape& shape, int k, int rank_v, int rank_lambda,
                                   const UniversalOptions& options) {
  if (k < 0) throw DomainError("k must be non-negative");
  if (rank_v < 1) throw DomainError("rank V must be positive");
  UniversalPolynomial poly;
  poly.shape_id = shape.id;
  poly.k = k;
  poly.rank_v = rank_v;
  poly.rank_lambda = rank_lambda;
  poly.max_degree = options.max_degree.value_or(k);
  poly.basis = monomial_basis(poly.max_degree);
  const std::vector<std::string> names = poly.basis_strings();

  const auto pool = sample_pool(shape, k, rank_v, rank_lambda, options.pool_size, options.compute.seed);
  std::vector<std::vector<Rational>> rows;
  for (const auto& c : pool) rows.push_back(features(poly.basis, intersection_numbers(c)));

  Echelon echelon;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < pool.size() && echelon.rank() < poly.basis.size(); ++i) {
    if (echelon.add(rows[i])) chosen.push_back(i);
  }
  if (echelon.rank() < poly.basis.size()) {
    std::string msg = "universal_poly: sampled configurations leave " +
                      std::to_string(poly.basis.size() - echelon.rank()) + " undetermined direction(s):";
    for (const auto& v : null_space(rows, poly.basis.size())) msg += " [" + combination_string(v, names) + "]";
    throw DomainError(msg);
  }

  std::vector<std::vector<Rational>> a;
  for (std::size_t i : chosen) {
    poly.training.push_back(pool[i]);
    a.push_back(rows[i]);
  }
  poly.training_values = direct_values(shape, poly.training, k, options.compute);
  poly.coefficients = solve_square(a, poly.training_values);
  for (std::size_t i = 0; i < poly.training.size(); ++i) {
    if (poly.evaluate(intersection_numbers(poly.training[i])) != poly.training_values[i])
      throw InconsistencyError("universal_poly: nonzero residual on a training point");
  }

  // Held-out configurations: the first unused ones, with a Hirzebruch
  // surface guaranteed.
  std::vector<UniversalConfig> held;
  std::set<std::size_t> used(chosen.begin(), chosen.end());
  for (std::size_t i = 0; i < pool.size() && static_cast<int>(held.size()) < options.held_out; ++i) {
    if (!used.contains(i)) {
      held.push_back(pool[i]);
      used.insert(i);
    }
  }
  auto is_hirzebruch = [](const UniversalConfig& c) { return c.surface.kind == SurfaceKind::Hirzebruch; };
  if (std::none_of(held.begin(), held.end(), is_hirzebruch)) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!used.contains(i) && is_hirzebruch(pool[i])) {
        held.push_back(pool[i]);
        break;
      }
    }
  }
  if (static_cast<int>(held.size()) < options.held_out || std::none_of(held.begin(), held.end(), is_hirzebruch))
    throw DomainError("universal_poly: not enough held-out configurations; raise the pool size");
  const auto direct = direct_values(shape, held, k, options.compute);
  for (std::size_t i = 0; i < held.size(); ++i) {
    HeldOutCheck check{held[i], direct[i], poly.evaluate(intersection_numbers(held[i]))};
    if (check.direct != check.predicted)
      throw InconsistencyError("universal_poly: held-out mismatch on " + to_json(held[i]).dump() + ": direct " +
                               to_string(check.direct) + ", polynomial " + to_string(check.predicted));
    poly.held_out.push_back(std::move(check));
  }
  return poly;
}

}  // namespace hq
